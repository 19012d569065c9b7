"""Dense reference implementations used only by the tests.

Everything here is rebuilt from the raw structure constants with plain
loops and sympy's DomainMatrix, without touching the package's sparse
elimination or its bicomplex code.
"""
from __future__ import annotations

import itertools
from fractions import Fraction

from sympy import QQ as SQQ, GF
from sympy.polys.matrices import DomainMatrix


def _domain(field):
    return GF(field.p) if field.is_prime_field else SQQ


def _elem(dom, x):
    if isinstance(x, Fraction):
        return dom(x.numerator) / dom(x.denominator)
    return dom(int(x))


def dense_rank(rows, field, ncols=None) -> int:
    if not rows:
        return 0
    ncols = len(rows[0]) if ncols is None else ncols
    if ncols == 0:
        return 0
    dom = _domain(field)
    dm = DomainMatrix([[_elem(dom, x) for x in r] for r in rows], (len(rows), ncols), dom)
    return dm.rank()


def _dims_from_ranks(space, ranks, N):
    out = []
    for n in range(N):
        prev = ranks[n - 1] if n > 0 else 0
        out.append(space[n] - ranks[n] - prev)
    return out


def hochschild_dims(R, M, N, field):
    """dim HH^n(R, M) over the ground field for n < N."""
    dr, dm = R.dim, M.dim
    space = {n: dr ** n * dm for n in range(N + 1)}

    def col(t, m):
        k = 0
        for i in t:
            k = k * dr + i
        return k * dm + m

    ranks = {}
    for n in range(N):
        rows = []
        for s in itertools.product(range(dr), repeat=n + 1):
            for mo in range(dm):
                row = [0] * space[n]
                for mi in range(dm):
                    row[col(s[1:], mi)] += M.left[s[0]][mi][mo]
                for i in range(1, n + 1):
                    for k, c in enumerate(R.mult[s[i - 1]][s[i]]):
                        if c:
                            row[col(s[:i - 1] + (k,) + s[i + 1:], mo)] += (-1) ** i * c
                for mi in range(dm):
                    row[col(s[:-1], mi)] += (-1) ** (n + 1) * M.right[mi][s[-1]][mo]
                rows.append(row)
        ranks[n] = dense_rank(rows, field, space[n])
    return _dims_from_ranks(space, ranks, N)


def _sort(t):
    """(sign, sorted tuple) or (0, None) on a repeat."""
    if len(set(t)) < len(t):
        return 0, None
    t = list(t)
    sign = 1
    for i in range(len(t)):
        for j in range(len(t) - 1 - i):
            if t[j] > t[j + 1]:
                t[j], t[j + 1] = t[j + 1], t[j]
                sign = -sign
    return sign, tuple(t)


def ce_dims(bracket, action, dl, dm, N, field):
    """dim H^n_CE(L, M) for n < N from bracket[i][j] and action[i][m] vectors."""
    basis = {n: list(itertools.combinations(range(dl), n)) for n in range(N + 1)}
    index = {n: {t: k for k, t in enumerate(basis[n])} for n in basis}
    space = {n: len(basis[n]) * dm for n in basis}
    ranks = {}
    for n in range(N):
        rows = []
        for s in basis[n + 1]:
            for mo in range(dm):
                row = [0] * space[n]
                for i in range(n + 1):
                    rest = s[:i] + s[i + 1:]
                    for mi in range(dm):
                        row[index[n][rest] * dm + mi] += (-1) ** i * action[s[i]][mi][mo]
                for i, j in itertools.combinations(range(n + 1), 2):
                    rest = s[:i] + s[i + 1:j] + s[j + 1:]
                    for k, c in enumerate(bracket[s[i]][s[j]]):
                        if not c:
                            continue
                        sg, t = _sort((k,) + rest)
                        if sg:
                            row[index[n][t] * dm + mo] += (-1) ** (i + j) * sg * c
                rows.append(row)
        ranks[n] = dense_rank(rows, field, space[n])
    return _dims_from_ranks(space, ranks, N)
