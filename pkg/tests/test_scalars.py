from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from shukla.scalars import QQ, FieldMismatch, FieldSpec, Fp, Scalar, ScalarParseError, parse_scalar, scalar_arith

PRIMES = [2, 3, 5, 7, 101, 65537]
fields = st.one_of(st.just(QQ), st.sampled_from(PRIMES).map(Fp))
ints = st.integers(min_value=-10**6, max_value=10**6)


@st.composite
def field_and_values(draw, n=3):
    f = draw(fields)
    if f.is_prime_field:
        vals = [draw(ints) for _ in range(n)]
    else:
        vals = [Fraction(draw(ints), draw(st.integers(1, 1000))) for _ in range(n)]
    return f, [Scalar(v, f) for v in vals]


@given(field_and_values())
def test_ring_axioms(fv):
    f, (x, y, z) = fv
    assert (x + y) + z == x + (y + z)
    assert x * (y + z) == x * y + x * z
    assert x * y == y * x
    assert x - x == Scalar(0, f)
    assert x + (-x) == 0


@given(field_and_values(1))
def test_inverse(fv):
    f, (x,) = fv
    if x:
        assert x * x.inv() == 1
        assert (x / x) == 1
    else:
        with pytest.raises(ZeroDivisionError):
            x.inv()


@given(field_and_values(1))
def test_render_parse_roundtrip(fv):
    f, (x,) = fv
    assert parse_scalar(str(x), f) == x


@given(st.sampled_from(PRIMES), ints)
def test_prime_field_canonical(p, n):
    f = Fp(p)
    assert 0 <= f.reduce(n) < p
    assert Scalar(n, f) == Scalar(n + p, f)


def test_fractions_in_fp():
    f = Fp(5)
    assert parse_scalar("1/2", f) == Scalar(3, f)
    with pytest.raises(ZeroDivisionError):
        parse_scalar("1/5", f)
    assert parse_scalar("-3/6", QQ).value == Fraction(-1, 2)


@pytest.mark.parametrize("text", ["", "x", "1/", "1.5", "2e3"])
def test_bad_scalars(text):
    with pytest.raises(ScalarParseError):
        parse_scalar(text, QQ)


def test_field_parse():
    assert FieldSpec.parse("Q") == QQ
    assert FieldSpec.parse("Fp:7") == Fp(7)
    assert str(Fp(7)) == "Fp:7"
    with pytest.raises(ValueError):
        FieldSpec.parse("Fp:8")
    with pytest.raises(ScalarParseError):
        FieldSpec.parse("R")


def test_mixed_fields_rejected():
    with pytest.raises(FieldMismatch):
        scalar_arith("add", Scalar(1, Fp(3)), Scalar(1, Fp(5)))
    with pytest.raises(FieldMismatch):
        Scalar(1, QQ) + Scalar(1, Fp(5))


def test_rationals_normalise_to_ints():
    assert QQ.reduce(Fraction(4, 2)) == 2 and isinstance(QQ.reduce(Fraction(4, 2)), int)
