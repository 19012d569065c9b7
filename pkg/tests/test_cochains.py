import pytest
from hypothesis import given
from hypothesis import strategies as st

from shukla.cochains import (
    BiDegree,
    Cochain,
    IndexOutOfRange,
    decode_index,
    encode_index,
    exterior_basis,
    sort_sign,
    space_dim,
)
from shukla.linalg import SizeCapExceeded
from shukla.scalars import QQ, Fp

dims = st.tuples(st.integers(1, 3), st.integers(1, 3), st.integers(1, 3))
degrees = st.tuples(st.integers(0, 3), st.integers(0, 3))


@given(dims, degrees, st.data())
def test_encode_decode_bijective(d, deg, data):
    n = space_dim(deg, d)
    flat = data.draw(st.integers(0, n - 1))
    a, r, m = decode_index(flat, deg, d)
    assert encode_index(a, r, m, deg, d) == flat


def test_row_major_layout():
    # degree (1, 2): a-grid is 1 x 2, then r1 r2, then m
    d = (2, 3, 2)
    assert encode_index((1, 0), (2, 1), 1, (1, 2), d) == ((((1 * 2 + 0) * 3 + 2) * 3 + 1) * 2 + 1)


def test_space_dim_formula():
    assert space_dim((2, 3), (2, 3, 5)) == 2 ** 6 * 3 ** 3 * 5
    assert space_dim((4, 0), (2, 3, 5)) == 5
    with pytest.raises(SizeCapExceeded):
        space_dim((3, 3), (3, 3, 3), cap=1000)


def test_out_of_range():
    with pytest.raises(IndexOutOfRange):
        encode_index((5,), (0,), 0, (1, 1), (2, 2, 2))
    with pytest.raises(IndexOutOfRange):
        Cochain((1, 1), (2, 2, 2), QQ, {8: 1})
    with pytest.raises(ValueError):
        BiDegree(-1, 0)


@given(st.lists(st.integers(0, 5), max_size=5))
def test_sort_sign(t):
    sign, s = sort_sign(t)
    if len(set(t)) < len(t):
        assert sign == 0
    else:
        inversions = sum(1 for i in range(len(t)) for j in range(i + 1, len(t)) if t[i] > t[j])
        assert s == tuple(sorted(t)) and sign == (-1) ** inversions


def test_exterior_basis():
    assert exterior_basis(4, 2) == ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))


@given(st.sampled_from([QQ, Fp(3)]), st.dictionaries(st.integers(0, 15), st.integers(-9, 9)))
def test_cochain_json_and_arithmetic(f, coeffs):
    c = Cochain((1, 1), (2, 2, 4), f, coeffs)
    assert Cochain.from_json(c.to_json()) == c
    assert (c - c).is_zero()
    assert (c + (-c)).is_zero()
