import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from shukla.library import (
    BUILTINS,
    builtin,
    dual_numbers,
    k_times_k,
    random_invertible,
    random_lie_triple,
    random_triple,
    regular_algebra,
)
from shukla.presentations import (
    AssocAlgebraPres,
    BimodulePres,
    CommutativeAlgebraPres,
    ShapeError,
    ValidationFailure,
    from_json,
    mat_inv,
    require_valid,
    to_json,
    transform_commutative,
    validate_assoc,
    validate_commutative,
    validate_lie_triple,
    validate_triple,
)
from shukla.scalars import QQ, Fp

fields = st.sampled_from([QQ, Fp(2), Fp(3), Fp(5)])


@pytest.mark.parametrize("name", sorted(BUILTINS))
@pytest.mark.parametrize("field", [QQ, Fp(5)], ids=str)
def test_builtins_validate(name, field):
    b = builtin(name, field)
    rep = validate_lie_triple(b.A, b.L, b.M) if b.is_lie else validate_triple(b.A, b.R, b.M)
    assert rep.ok, str(rep)


@given(fields, st.integers(0, 10**6))
def test_random_triples_are_valid(field, seed):
    rng = random.Random(seed)
    assert validate_triple(*random_triple(rng, field, 3)).ok


@given(fields, st.integers(0, 10**6))
def test_random_lie_triples_are_valid(field, seed):
    rng = random.Random(seed)
    assert validate_lie_triple(*random_lie_triple(rng, field, 3)).ok


def test_non_associative_table_is_named():
    f = QQ
    # e1 * e0 = 0 while e0 * e1 = e1
    mult = [[[1, 0], [0, 1]], [[0, 0], [1, 0]]]
    A = CommutativeAlgebraPres(f, 2, mult, [1, 0])
    rep = validate_commutative(A)
    assert not rep.ok
    assert {v.identity for v in rep.violations} & {"commutativity", "right unit"}


def test_noncentral_action_detected():
    f = QQ
    A = dual_numbers(f)
    R = regular_algebra(A)
    bad = AssocAlgebraPres(f, 2, R.mult, R.unit, [[[1, 0], [0, 1]], [[0, 0], [1, 0]]])
    rep = validate_assoc(bad, A)
    assert any("a(bx)=(ab)x" in v.identity or "centrally" in v.identity for v in rep.violations)
    with pytest.raises(ValidationFailure):
        require_valid(rep)


def test_asymmetric_bimodule_rejected():
    f = QQ
    A = k_times_k(f)
    R = regular_algebra(A)
    # left action through the first point, right through the second
    left = [[[1]], [[0]]]
    right = [[[0], [1]]]
    M = BimodulePres(f, 1, left, right)
    rep = validate_triple(A, R, M)
    assert any("symmetrically" in v.identity for v in rep.violations)


def test_shape_errors():
    with pytest.raises(ShapeError):
        CommutativeAlgebraPres(QQ, 2, [[[1, 0]]], [1, 0])


@pytest.mark.parametrize("name", sorted(BUILTINS))
def test_json_roundtrip(name):
    b = builtin(name, Fp(7))
    for pres in (b.A, b.L if b.is_lie else b.R, b.M):
        again = from_json(to_json(pres))
        assert to_json(again) == to_json(pres)


@given(fields, st.integers(0, 10**6))
def test_change_of_basis_preserves_validity(field, seed):
    rng = random.Random(seed)
    A = dual_numbers(field)
    T = random_invertible(rng, field, 2)
    assert validate_commutative(transform_commutative(A, T)).ok
    Ti = mat_inv(field, T)
    prod = [[field.reduce(sum(T[i][k] * Ti[k][j] for k in range(2))) for j in range(2)] for i in range(2)]
    assert prod == [[1, 0], [0, 1]]
