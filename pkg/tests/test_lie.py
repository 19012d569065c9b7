import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import ce_dims
from shukla.bicomplex import check_identities, totalize
from shukla.library import (
    abelian_lie_k,
    aff2_k,
    base_field,
    builtin,
    dual_numbers,
    heisenberg_k,
    lie_extend,
    lie_over_character,
    random_lie_triple,
    trivial_lie_module,
)
from shukla.lie import LieData, assemble_lie, collapsed_bracket_failure, lie_cohomology, lie_compare
from shukla.scalars import QQ, Fp

fields = st.sampled_from([QQ, Fp(2), Fp(3), Fp(5)])


@given(fields, st.integers(0, 10**6))
@settings(max_examples=20)
def test_identities_on_random_lie_triples(field, seed):
    A, L, M = random_lie_triple(random.Random(seed), field, 3)
    bc = assemble_lie(A, L, M, N=4, check=False)
    res = check_identities(bc, raise_on_failure=False)
    assert res["dd"] and res["vv"] and res["commute"], res["failures"]
    tc = totalize(bc)
    for n in range(tc.N - 1):
        assert (tc.D[n + 1] @ tc.D[n]).is_zero()


@pytest.mark.parametrize("field", [QQ, Fp(3)], ids=str)
@pytest.mark.parametrize("make", [heisenberg_k, aff2_k, lambda f: abelian_lie_k(f, 2)])
def test_base_field_is_chevalley_eilenberg(field, make):
    K = base_field(field)
    br, labels = make(field)
    L = lie_over_character(K, br, labels)
    M = trivial_lie_module(K, L)
    assert lie_cohomology(K, L, M, N=4)[0].dims() == ce_dims(L.bracket, M.action, L.dim, M.dim, 4, field)


def test_collapsed_bracket_breaks_commutation():
    f = QQ
    A = dual_numbers(f)
    br, labels = aff2_k(f)
    L = lie_extend(A, br, labels)
    M = trivial_lie_module(A, L)
    assert (0, 1) in collapsed_bracket_failure(A, L, M)
    check_identities(assemble_lie(LieData(A, L, M), N=3))


def test_golden_builtins():
    expect = {"sl2": [1, 0, 0, 1], "projective_lie": [1, 1, 0, 0], "dual_lie": [1, 1, 1, 2]}
    for name, dims in expect.items():
        b = builtin(name, QQ)
        assert lie_cohomology(b.A, b.L, b.M, N=4)[0].dims() == dims


def test_dual_lie_comparison_is_not_iso():
    b = builtin("dual_lie", QQ)
    verdicts = [e.verdict() for e in lie_compare(b.A, b.L, b.M, N=4).entries]
    assert verdicts[:2] == ["iso", "iso"]
    assert "iso" not in verdicts[2:]
