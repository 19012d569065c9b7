import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import dense_rank
from shukla.linalg import (
    RowReducer,
    SizeCapExceeded,
    SparseMatrix,
    Subspace,
    check_cap,
    image_basis,
    rank,
    rank_kernel,
    solve,
)
from shukla.scalars import QQ, Fp

fields = st.sampled_from([QQ, Fp(2), Fp(5), Fp(97)])


@st.composite
def matrices(draw, max_dim=8):
    f = draw(fields)
    r, c = draw(st.integers(1, max_dim)), draw(st.integers(1, max_dim))
    lo, hi = (0, f.p - 1) if f.is_prime_field else (-6, 6)
    dense = [[draw(st.integers(lo, hi)) for _ in range(c)] for _ in range(r)]
    return f, dense, c


@given(matrices())
def test_rank_matches_dense_oracle(m):
    f, dense, c = m
    assert rank(SparseMatrix.from_dense(dense, f, c)) == dense_rank(dense, f, c)


@given(matrices())
def test_kernel_vectors_are_killed_and_complete(m):
    f, dense, c = m
    A = SparseMatrix.from_dense(dense, f, c)
    r, ker = rank_kernel(A)
    assert r + len(ker) == c
    for v in ker:
        assert A.apply(v) == {}
    assert Subspace(f, ker).dim == len(ker)


@given(matrices(), st.randoms(use_true_random=False))
def test_solve_finds_preimages(m, rnd):
    f, dense, c = m
    A = SparseMatrix.from_dense(dense, f, c)
    x = {j: rnd.randint(-3, 3) for j in range(c)}
    b = A.apply(x)
    y = solve(A, b)
    assert y is not None and A.apply(y) == b


def test_solve_reports_inconsistency():
    A = SparseMatrix.from_dense([[1, 0], [0, 0]], QQ, 2)
    assert solve(A, {1: 1}) is None


@given(matrices(6), matrices(6))
@settings(max_examples=25)
def test_matmul_associates_with_apply(m1, m2):
    f, d1, c1 = m1
    A = SparseMatrix.from_dense(d1, f, c1)
    B = SparseMatrix.from_dense([[(i * 7 + j * 3) % 5 - 2 for j in range(3)] for i in range(c1)], f, 3)
    v = {0: 1, 2: -1}
    assert (A @ B).apply(v) == A.apply(B.apply(v))


def test_image_basis_spans_columns():
    f = QQ
    A = SparseMatrix.from_dense([[1, 2, 3], [2, 4, 6], [0, 1, 1]], f, 3)
    img = Subspace(f, image_basis(A))
    assert img.dim == 2
    assert img.contains_all(A.column_vectors())


def test_fraction_free_q_keeps_integers():
    rr = RowReducer(QQ)
    rr.insert({0: 6, 1: 4})
    rr.insert({0: 3, 1: 5})
    assert rr.rank == 2
    for row in rr.basis():
        assert all(isinstance(v, int) for v in row.values())


def test_size_cap():
    assert check_cap(10, 100) == 10
    with pytest.raises(SizeCapExceeded):
        check_cap(101, 100)


def test_json_roundtrip():
    rng = random.Random(4)
    f = Fp(7)
    A = SparseMatrix.from_dense([[rng.randint(0, 6) for _ in range(5)] for _ in range(4)], f, 5)
    assert SparseMatrix.from_json(A.to_json()) == A
