"""Builtin presentations and random generators of valid triples."""
from __future__ import annotations

import random
from dataclasses import dataclass

from .presentations import (
    AssocAlgebraPres,
    BimodulePres,
    CommutativeAlgebraPres,
    LieAlgebraPres,
    LieModulePres,
    mat_inv,
    transform_assoc,
    transform_bimodule,
    transform_commutative,
    transform_lie,
    transform_lie_module,
)
from .scalars import FieldSpec


class UnknownBuiltin(KeyError):
    pass


class BadParams(ValueError):
    pass


def _zeros(a, b, c):
    return [[[0] * c for _ in range(b)] for _ in range(a)]


def _e(n, i):
    v = [0] * n
    v[i] = 1
    return v


# ---------------------------------------------------------------------------
# commutative algebras


def base_field(f: FieldSpec) -> CommutativeAlgebraPres:
    return CommutativeAlgebraPres(f, 1, [[[1]]], [1], ["1"], [[1]])


def trunc_poly(f: FieldSpec, n: int = 2, var: str = "t") -> CommutativeAlgebraPres:
    """K[t]/(t^n), basis 1, t, ..., t^(n-1)."""
    if n < 1:
        raise BadParams("trunc_poly needs n >= 1")
    mult = _zeros(n, n, n)
    for i in range(n):
        for j in range(n):
            if i + j < n:
                mult[i][j][i + j] = 1
    labels = ["1"] + [var if k == 1 else f"{var}^{k}" for k in range(1, n)]
    return CommutativeAlgebraPres(f, n, mult, _e(n, 0), labels, [_e(n, 0)])


def dual_numbers(f: FieldSpec) -> CommutativeAlgebraPres:
    A = trunc_poly(f, 2, "eps")
    A.labels = ["1", "eps"]
    return A


def product(*algs):
    """Direct product of commutative algebras."""
    f = algs[0].field
    n = sum(a.dim for a in algs)
    mult = _zeros(n, n, n)
    unit = []
    chars = []
    off = 0
    for a in algs:
        for i in range(a.dim):
            for j in range(a.dim):
                for k in range(a.dim):
                    mult[off + i][off + j][off + k] = a.mult[i][j][k]
        unit += list(a.unit)
        for chi in a.characters:
            chars.append([0] * off + list(chi) + [0] * (n - off - a.dim))
        off += a.dim
    return CommutativeAlgebraPres(f, n, mult, unit, [f"e{i}" for i in range(n)], chars)


def k_times_k(f: FieldSpec, n: int = 2) -> CommutativeAlgebraPres:
    A = product(*[base_field(f) for _ in range(n)])
    A.labels = [f"e{i + 1}" for i in range(n)]
    return A


def square_zero_plane(f: FieldSpec) -> CommutativeAlgebraPres:
    """K[x,y]/(x,y)^2."""
    mult = _zeros(3, 3, 3)
    mult[0][0][0] = mult[0][1][1] = mult[1][0][1] = mult[0][2][2] = mult[2][0][2] = 1
    return CommutativeAlgebraPres(f, 3, mult, [1, 0, 0], ["1", "x", "y"], [[1, 0, 0]])


# ---------------------------------------------------------------------------
# associative algebras over A


def upper_triangular(f: FieldSpec, A: CommutativeAlgebraPres | None = None, chi=None) -> AssocAlgebraPres:
    """2x2 upper triangular matrices, basis e11, e12, e22."""
    mult = _zeros(3, 3, 3)
    mult[0][0][0] = 1
    mult[0][1][1] = 1
    mult[1][2][1] = 1
    mult[2][2][2] = 1
    B = AssocAlgebraPres(f, 3, mult, [1, 0, 1], [[[1 if j == k else 0 for k in range(3)] for j in range(3)]],
                         ["e11", "e12", "e22"], [[1, 0, 0], [0, 0, 1]])
    return B if A is None else over_character(A, B, chi)


def as_assoc(B: CommutativeAlgebraPres) -> AssocAlgebraPres:
    """A commutative algebra as an associative K-algebra."""
    n = B.dim
    ident = [[[1 if j == k else 0 for k in range(n)] for j in range(n)]]
    return AssocAlgebraPres(B.field, n, B.mult, list(B.unit), ident, list(B.labels), list(B.characters))


def over_character(A: CommutativeAlgebraPres, B, chi=None) -> AssocAlgebraPres:
    """B (a K-algebra) made into an A-algebra through a character chi: A -> K."""
    if isinstance(B, CommutativeAlgebraPres):
        B = as_assoc(B)
    if chi is None:
        if not A.characters:
            raise BadParams("A has no known character")
        chi = A.characters[0]
    n = B.dim
    act = [[[chi[a] if j == k else 0 for k in range(n)] for j in range(n)] for a in range(A.dim)]
    return AssocAlgebraPres(B.field, n, B.mult, list(B.unit), act, list(B.labels), list(B.characters))


def regular_algebra(A: CommutativeAlgebraPres) -> AssocAlgebraPres:
    """R = A, acting on itself by multiplication."""
    return AssocAlgebraPres(A.field, A.dim, A.mult, list(A.unit), A.mult, list(A.labels), list(A.characters))


def quotient_k(A: CommutativeAlgebraPres, chi=None) -> AssocAlgebraPres:
    R = over_character(A, base_field(A.field), chi)
    R.labels = ["1"]
    return R


# ---------------------------------------------------------------------------
# bimodules


def regular_bimodule(R: AssocAlgebraPres) -> BimodulePres:
    n = R.dim
    right = [[list(R.mult[j][i]) for i in range(n)] for j in range(n)]
    return BimodulePres(R.field, n, [[list(v) for v in row] for row in R.mult], right, list(R.labels))


def dual_bimodule(R: AssocAlgebraPres) -> BimodulePres:
    """R* with (r.phi.s)(x) = phi(s x r)."""
    n = R.dim
    left = [[[R.mult[k][i][j] for k in range(n)] for j in range(n)] for i in range(n)]
    right = [[[R.mult[i][k][j] for k in range(n)] for i in range(n)] for j in range(n)]
    return BimodulePres(R.field, n, left, right, [f"{lab}*" for lab in R.labels])


def character_bimodule(R: AssocAlgebraPres, chi_left=None, chi_right=None) -> BimodulePres:
    """M = K with r.m = chi_left(r) m and m.r = chi_right(r) m."""
    if chi_left is None:
        if not R.characters:
            raise BadParams("R has no known character")
        chi_left = R.characters[0]
    chi_right = chi_left if chi_right is None else chi_right
    left = [[[chi_left[i]]] for i in range(R.dim)]
    right = [[[chi_right[i]] for i in range(R.dim)]]
    return BimodulePres(R.field, 1, left, right, ["m"])


def direct_sum(*mods) -> BimodulePres:
    f = mods[0].field
    nr = mods[0].dim_r
    n = sum(m.dim for m in mods)
    left = _zeros(nr, n, n)
    right = _zeros(n, nr, n)
    off = 0
    for m in mods:
        for i in range(nr):
            for j in range(m.dim):
                for k in range(m.dim):
                    left[i][off + j][off + k] = m.left[i][j][k]
                    right[off + j][i][off + k] = m.right[j][i][k]
        off += m.dim
    return BimodulePres(f, n, left, right)


def free_bimodule(R: AssocAlgebraPres, n: int = 2) -> BimodulePres:
    return direct_sum(*[regular_bimodule(R) for _ in range(n)])


# ---------------------------------------------------------------------------
# Lie algebras and modules


def abelian_lie_k(f: FieldSpec, n: int = 1):
    return _zeros(n, n, n), [f"x{i}" for i in range(n)]


def sl2_k(f: FieldSpec):
    """Basis e, f, h with [h,e]=2e, [h,f]=-2f, [e,f]=h."""
    br = _zeros(3, 3, 3)
    E, F, H = 0, 1, 2
    br[E][F][H], br[F][E][H] = 1, -1
    br[H][E][E], br[E][H][E] = 2, -2
    br[H][F][F], br[F][H][F] = -2, 2
    return [[[f.reduce(c) for c in v] for v in row] for row in br], ["e", "f", "h"]


def heisenberg_k(f: FieldSpec):
    br = _zeros(3, 3, 3)
    br[0][1][2], br[1][0][2] = 1, -1
    return [[[f.reduce(c) for c in v] for v in row] for row in br], ["x", "y", "z"]


def aff2_k(f: FieldSpec):
    br = _zeros(2, 2, 2)
    br[0][1][1], br[1][0][1] = 1, -1
    return [[[f.reduce(c) for c in v] for v in row] for row in br], ["x", "y"]


def lie_over_character(A: CommutativeAlgebraPres, bracket, labels=None, chi=None) -> LieAlgebraPres:
    """A K-Lie algebra g viewed over A through a character chi."""
    chi = A.characters[0] if chi is None else chi
    n = len(bracket)
    act = [[[chi[a] if j == k else 0 for k in range(n)] for j in range(n)] for a in range(A.dim)]
    return LieAlgebraPres(A.field, n, bracket, act, labels)


def lie_extend(A: CommutativeAlgebraPres, bracket, labels=None) -> LieAlgebraPres:
    """A (x) g, a free A-module with [a x, b y] = ab [x, y]."""
    f = A.field
    na, ng = A.dim, len(bracket)
    n = na * ng
    br = _zeros(n, n, n)
    act = _zeros(na, n, n)
    for i in range(na):
        for j in range(na):
            for k, c in enumerate(A.mult[i][j]):
                if not c:
                    continue
                for x in range(ng):
                    act[i][j * ng + x][k * ng + x] += c
                    for y in range(ng):
                        for z, d in enumerate(bracket[x][y]):
                            if d:
                                br[i * ng + x][j * ng + y][k * ng + z] += c * d
    labels = labels or [f"x{i}" for i in range(ng)]
    red = lambda t: [[[f.reduce(c) for c in v] for v in row] for row in t]  # noqa: E731
    return LieAlgebraPres(f, n, red(br), red(act), [f"{A.labels[i]}*{labels[x]}" for i in range(na) for x in range(ng)])


def trivial_lie_module(A: CommutativeAlgebraPres, L: LieAlgebraPres, chi=None) -> LieModulePres:
    chi = A.characters[0] if chi is None else chi
    action = [[[0]] for _ in range(L.dim)]
    return LieModulePres(A.field, 1, action, [[[chi[a]]] for a in range(A.dim)], ["m"])


def adjoint_module(L: LieAlgebraPres) -> LieModulePres:
    return LieModulePres(L.field, L.dim, [[list(v) for v in row] for row in L.bracket],
                         [[list(v) for v in row] for row in L.a_action], list(L.labels))


# ---------------------------------------------------------------------------
# builtin catalogue


@dataclass
class Bundle:
    name: str
    A: CommutativeAlgebraPres
    R: AssocAlgebraPres | None = None
    M: object = None
    L: LieAlgebraPres | None = None
    note: str = ""

    @property
    def is_lie(self):
        return self.L is not None


def _bundle_base_field(f, params):
    A = base_field(f)
    R = quotient_k(A)
    return Bundle("base_field", A, R, regular_bimodule(R), note="A = R = M = K")


def _bundle_dual(f, params):
    A = dual_numbers(f)
    R = quotient_k(A)
    return Bundle("dual_numbers", A, R, regular_bimodule(R), note="A = K[eps]/(eps^2), R = M = K with eps acting as 0")


def _bundle_kxk(f, params):
    A = k_times_k(f)
    R = regular_algebra(A)
    return Bundle("k_times_k", A, R, regular_bimodule(R), note="A = R = M = K x K")


def _bundle_trunc(f, params):
    n = params[0] if params else 2
    A = base_field(f)
    R = over_character(A, trunc_poly(f, n, "x"))
    return Bundle("trunc_poly", A, R, regular_bimodule(R), note=f"A = K, R = M = K[x]/(x^{n})")


def _bundle_r_equals_a(f, params):
    n = params[0] if params else 2
    A = trunc_poly(f, n)
    R = regular_algebra(A)
    return Bundle("r_equals_a", A, R, character_bimodule(R), note=f"A = R = K[t]/(t^{n}), M = K")


def _bundle_r_equals_a_split(f, params):
    A = k_times_k(f)
    R = regular_algebra(A)
    return Bundle("r_equals_a_split", A, R, character_bimodule(R), note="A = R = K x K, M = K at the first point")


def _bundle_quotient_point(f, params):
    A = k_times_k(f)
    R = quotient_k(A)
    return Bundle("quotient_point", A, R, regular_bimodule(R), note="A = K x K, R = M = K x 0 (projective over A)")


def _bundle_sl2(f, params):
    A = base_field(f)
    br, labels = sl2_k(f)
    L = lie_over_character(A, br, labels)
    adjoint = params[0] if params else 0
    M = adjoint_module(L) if adjoint else trivial_lie_module(A, L)
    return Bundle("sl2", A, L=L, M=M, note="A = K, L = sl2, M = " + ("adjoint" if adjoint else "K trivial"))


def _bundle_abelian_lie(f, params):
    n = params[0] if params else 1
    A = base_field(f)
    br, labels = abelian_lie_k(f, n)
    L = lie_over_character(A, br, labels)
    return Bundle("abelian_lie", A, L=L, M=trivial_lie_module(A, L), note=f"A = K, L = K^{n} abelian, M = K trivial")


def _bundle_projective_lie(f, params):
    A = k_times_k(f)
    br, labels = abelian_lie_k(f, 1)
    L = lie_over_character(A, br, labels)
    return Bundle("projective_lie", A, L=L, M=trivial_lie_module(A, L),
                  note="A = K x K, L = (K x 0)x abelian (projective), M = K at the first point")


def _bundle_dual_lie(f, params):
    A = dual_numbers(f)
    br, labels = abelian_lie_k(f, 1)
    L = lie_over_character(A, br, labels)
    return Bundle("dual_lie", A, L=L, M=trivial_lie_module(A, L),
                  note="A = K[eps]/(eps^2), L = K with eps acting as 0, M = K trivial")


BUILTINS = {
    "base_field": _bundle_base_field,
    "dual_numbers": _bundle_dual,
    "k_times_k": _bundle_kxk,
    "trunc_poly": _bundle_trunc,
    "r_equals_a": _bundle_r_equals_a,
    "r_equals_a_split": _bundle_r_equals_a_split,
    "quotient_point": _bundle_quotient_point,
    "sl2": _bundle_sl2,
    "abelian_lie": _bundle_abelian_lie,
    "projective_lie": _bundle_projective_lie,
    "dual_lie": _bundle_dual_lie,
}

BUILTIN_PARAMS = {"trunc_poly": "[n=2]", "r_equals_a": "[n=2]", "sl2": "[adjoint=0]", "abelian_lie": "[n=1]"}


def builtin(name: str, field: FieldSpec, params=()) -> Bundle:
    try:
        make = BUILTINS[name]
    except KeyError:
        raise UnknownBuiltin(name) from None
    params = list(params)
    if any((not isinstance(x, int)) or x < 0 for x in params):
        raise BadParams(f"{name}: parameters must be nonnegative integers")
    if name in ("trunc_poly", "r_equals_a") and params and params[0] < 1:
        raise BadParams(f"{name}: n must be >= 1")
    if name == "abelian_lie" and params and params[0] < 1:
        raise BadParams("abelian_lie: n must be >= 1")
    if len(params) > (1 if name in BUILTIN_PARAMS else 0):
        raise BadParams(f"{name}: too many parameters")
    return make(field, params)


def builtin_notes(field: FieldSpec):
    return [(name, BUILTIN_PARAMS.get(name, ""), BUILTINS[name](field, []).note) for name in BUILTINS]


# ---------------------------------------------------------------------------
# random valid triples


def random_invertible(rng: random.Random, field: FieldSpec, n: int, spread: int = 2):
    while True:
        if field.is_prime_field:
            T = [[rng.randrange(field.p) for _ in range(n)] for _ in range(n)]
        else:
            T = [[rng.randint(-spread, spread) for _ in range(n)] for _ in range(n)]
        try:
            mat_inv(field, T)
        except ZeroDivisionError:
            continue
        return T


def small_commutative(field: FieldSpec, max_dim: int = 3):
    cands = [
        base_field(field),
        dual_numbers(field),
        k_times_k(field),
        trunc_poly(field, 3),
        k_times_k(field, 3),
        product(base_field(field), dual_numbers(field)),
        square_zero_plane(field),
    ]
    return [a for a in cands if a.dim <= max_dim]


def _small_k_algebras(field: FieldSpec, max_dim: int):
    cands = [as_assoc(a) for a in small_commutative(field, max_dim)] + [upper_triangular(field)]
    return [b for b in cands if b.dim <= max_dim]


def random_triple(rng: random.Random, field: FieldSpec, max_dim: int = 3, basis_change: bool = True):
    """A random valid (A, R, M) with every dimension <= max_dim."""
    A = rng.choice(small_commutative(field, max_dim))
    if rng.random() < 0.35:
        R = regular_algebra(A)
    else:
        R = over_character(A, rng.choice(_small_k_algebras(field, max_dim)), rng.choice(A.characters))
    options = ["regular", "dual", "char"]
    kind = rng.choice(options)
    if kind == "regular":
        M = regular_bimodule(R)
    elif kind == "dual":
        M = dual_bimodule(R)
    else:
        M = _random_char_bimodule(rng, A, R)
        if M.dim + 1 <= max_dim and rng.random() < 0.5:
            M = direct_sum(M, _random_char_bimodule(rng, A, R))
    if basis_change:
        TA = random_invertible(rng, field, A.dim)
        TR = random_invertible(rng, field, R.dim)
        TM = random_invertible(rng, field, M.dim)
        A = transform_commutative(A, TA)
        R = transform_assoc(R, TR, TA)
        M = transform_bimodule(M, TM, TR)
    return A, R, M


def _random_char_bimodule(rng, A, R):
    chars = R.characters
    for _ in range(20):
        cl, cr = rng.choice(chars), rng.choice(chars)
        ok = True
        for a in range(A.dim):
            u = R.image_of(A.basis(a))
            if R.field.reduce(sum(x * y for x, y in zip(cl, u)) - sum(x * y for x, y in zip(cr, u))):
                ok = False
        if ok:
            return character_bimodule(R, cl, cr)
    return character_bimodule(R, chars[0], chars[0])


def random_lie_triple(rng: random.Random, field: FieldSpec, max_dim: int = 3, basis_change: bool = True):
    """A random valid (A, L, M) with small dimensions."""
    A = rng.choice([a for a in small_commutative(field, 2)])
    gs = [abelian_lie_k(field, 1), abelian_lie_k(field, 2), aff2_k(field), heisenberg_k(field), sl2_k(field)]
    gs = [g for g in gs if len(g[0]) <= max_dim]
    br, labels = rng.choice(gs)
    if rng.random() < 0.5 and A.dim * len(br) <= max_dim + 1:
        L = lie_extend(A, br, labels)
    else:
        L = lie_over_character(A, br, labels, rng.choice(A.characters))
    if rng.random() < 0.5 and L.dim <= max_dim:
        M = adjoint_module(L)
    else:
        # a trivial module must use a character under which L's A-action is compatible
        M = None
        for chi in A.characters:
            cand = trivial_lie_module(A, L, chi)
            from .presentations import validate_lie_module

            if validate_lie_module(cand, L, A).ok:
                M = cand
                break
        if M is None:
            M = adjoint_module(L)
    if basis_change:
        TA = random_invertible(rng, field, A.dim)
        TL = random_invertible(rng, field, L.dim)
        TM = random_invertible(rng, field, M.dim)
        A = transform_commutative(A, TA)
        L = transform_lie(L, TL, TA)
        M = transform_lie_module(M, TM, TL, TA)
    return A, L, M
