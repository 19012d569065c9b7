"""Degree-2 and degree-3 cocycle calculus: abelian extensions, crossed extensions.

Every identity is written out by hand as a linear form in the cochain
coordinates; collecting the forms for one total degree gives an explicit
differential that is compared against the assembled total differential.
The normative tests are ker/im of the reduced total complex.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from functools import cached_property

from .bicomplex import AssocData, assemble, totalize
from .cochains import Cochain, decode_index, encode_index, space_dim
from .linalg import RowReducer, SparseMatrix, Subspace, image_basis, rank_kernel, solve
from .presentations import (
    AssocAlgebraPres,
    BimodulePres,
    ShapeError,
    ValidationReport,
    mat_inv,
    require_valid,
    to_json as pres_to_json,
    transform_assoc,
    transform_bimodule,
    validate_assoc,
    validate_bimodule,
)


class NotACocycle(ValueError):
    pass


class InconsistentWithMatrixKernel(AssertionError):
    pass


class NotExact(ValueError):
    pass


class SectionFailure(ValueError):
    pass


class SearchSpaceTooLarge(ValueError):
    pass


# ---------------------------------------------------------------------------
# context and M-valued linear forms


def _clean(d, f):
    return {k: v for k, v in ((k, f.reduce(v)) for k, v in d.items()) if v}


class ExtContext:
    """A validated triple plus the reduced total complex up to degree 4."""

    def __init__(self, A, R, M, cap=None):
        self.A, self.R, self.M = A, R, M
        self.ctx = AssocData(A, R, M, cap)
        self.field = self.ctx.field
        self.dims = self.ctx.dims
        self.cap = cap
        self._explicit: dict = {}

    @cached_property
    def tc(self):
        return totalize(assemble(self.ctx, N=4, reduced=True))

    def block_dim(self, p, q):
        if q == 0:
            return self.dims[2] if p == 0 else 0
        return space_dim((p, q), self.dims, self.cap)

    def offset(self, p, q):
        return sum(self.block_dim(i, p + q - i) for i in range(p))

    def total_dim(self, n):
        return sum(self.block_dim(p, n - p) for p in range(n + 1))

    # sparse algebra helpers -------------------------------------------------

    def amul(self, u, v):
        out: dict = {}
        for i, c in u.items():
            for j, d in v.items():
                for k, e in self.ctx.amul[i][j]:
                    out[k] = out.get(k, 0) + c * d * e
        return _clean(out, self.field)

    def rmul(self, u, v):
        out: dict = {}
        for i, c in u.items():
            for j, d in v.items():
                for k, e in self.ctx.rmul[i][j]:
                    out[k] = out.get(k, 0) + c * d * e
        return _clean(out, self.field)

    def act(self, a, r):
        return self.ctx.act_on_r(a, r)

    # M-valued linear forms: list over M coordinates of {variable: coeff} ----

    def val(self, degree, a_args, r_args, base=None):
        """c(a_args; r_args) as a linear form in the coordinates of the total degree."""
        p, q = degree
        base = self.offset(p, q) if base is None else base
        dm = self.dims[2]
        out = [dict() for _ in range(dm)]
        for combo in itertools.product(*[sorted(x.items()) for x in a_args], *[sorted(x.items()) for x in r_args]):
            c = 1
            for _, w in combo:
                c *= w
            ai = tuple(k for k, _ in combo[: len(a_args)])
            ri = tuple(k for k, _ in combo[len(a_args):])
            flat = encode_index(ai, ri, 0, degree, self.dims)
            for m in range(dm):
                out[m][base + flat + m] = out[m].get(base + flat + m, 0) + c
        return out

    def _op(self, op, F):
        dm = self.dims[2]
        out = [dict() for _ in range(dm)]
        for mo in range(dm):
            tgt = out[mo]
            for mi, c in op[mo]:
                for k, v in F[mi].items():
                    tgt[k] = tgt.get(k, 0) + c * v
        return out

    def lact(self, r, F):
        return self._op(self.ctx.left_op(r), F)

    def ract(self, F, r):
        return self._op(self.ctx.right_op(r), F)

    def aact(self, a, F):
        return self.lact(self.ctx.a_on_unit(a), F)

    def combine(self, *terms):
        """terms: (sign, form) pairs."""
        dm = self.dims[2]
        out = [dict() for _ in range(dm)]
        for s, F in terms:
            for m in range(dm):
                tgt = out[m]
                for k, v in F[m].items():
                    tgt[k] = tgt.get(k, 0) + s * v
        return [_clean(x, self.field) for x in out]


def _e(i):
    return {i: 1}


# ---------------------------------------------------------------------------
# hand-written differentials on total degrees 1, 2, 3


def _identities_deg1(ec: ExtContext):
    """h in Hom(R, M) -> (f, g) = (delta h, d h)."""
    da, dr, _ = ec.dims
    H = lambda r: ec.val((0, 1), [], [r])
    for r, s in itertools.product(range(dr), repeat=2):
        R_, S_ = _e(r), _e(s)
        form = ec.combine((1, ec.lact(R_, H(S_))), (-1, H(ec.rmul(R_, S_))), (1, ec.ract(H(R_), S_)))
        yield "f = r h(s) - h(rs) + h(r) s", (0, 2), ((), (r, s)), form
    for a, r in itertools.product(range(da), range(dr)):
        A_, R_ = _e(a), _e(r)
        form = ec.combine((1, ec.aact(A_, H(R_))), (-1, H(ec.act(A_, R_))))
        yield "g = a h(r) - h(ar)", (1, 1), ((a,), (r,)), form


def _identities_deg2(ec: ExtContext):
    """Components of D(f, g) for f: R(x)R -> M, g: A(x)R -> M."""
    da, dr, _ = ec.dims
    F = lambda r, s: ec.val((0, 2), [], [r, s])
    G = lambda a, r: ec.val((1, 1), [a], [r])
    for r, s, t in itertools.product(range(dr), repeat=3):
        R_, S_, T_ = _e(r), _e(s), _e(t)
        form = ec.combine(
            (1, ec.lact(R_, F(S_, T_))),
            (-1, F(ec.rmul(R_, S_), T_)),
            (1, F(R_, ec.rmul(S_, T_))),
            (-1, ec.ract(F(R_, S_), T_)),
        )
        yield "r f(s,t) - f(rs,t) + f(r,st) - f(r,s) t = 0", (0, 3), ((), (r, s, t)), form
    for a, b, r, s in itertools.product(range(da), range(da), range(dr), range(dr)):
        A_, B_, R_, S_ = _e(a), _e(b), _e(r), _e(s)
        ab, ar, bs = ec.amul(A_, B_), ec.act(A_, R_), ec.act(B_, S_)
        form = ec.combine(
            (1, ec.aact(ab, F(R_, S_))),
            (-1, F(ar, bs)),
            (-1, ec.lact(ar, G(B_, S_))),
            (1, G(ab, ec.rmul(R_, S_))),
            (-1, ec.ract(G(A_, R_), bs)),
        )
        yield "ab f(r,s) - f(ar,bs) = ar g(b,s) - g(ab,rs) + g(a,r) bs", (1, 2), ((a, b), (r, s)), form
    for a, b, r in itertools.product(range(da), range(da), range(dr)):
        A_, B_, R_ = _e(a), _e(b), _e(r)
        form = ec.combine(
            (1, ec.aact(A_, G(B_, R_))),
            (-1, G(ec.amul(A_, B_), R_)),
            (1, G(A_, ec.act(B_, R_))),
        )
        yield "a g(b,r) - g(ab,r) + g(a,br) = 0", (2, 1), ((a, b), (r,)), form


def _identities_deg3(ec: ExtContext):
    """Components of D(f, g, h) for f: R^3 -> M, g: A^2 R^2 -> M, h: A^2 R -> M."""
    da, dr, _ = ec.dims
    F = lambda r, s, t: ec.val((0, 3), [], [r, s, t])
    G = lambda a, b, r, s: ec.val((1, 2), [a, b], [r, s])
    H = lambda a, b, r: ec.val((2, 1), [a, b], [r])
    for idx in itertools.product(range(dr), repeat=4):
        r1, r2, r3, r4 = map(_e, idx)
        form = ec.combine(
            (1, ec.lact(r1, F(r2, r3, r4))),
            (-1, F(ec.rmul(r1, r2), r3, r4)),
            (1, F(r1, ec.rmul(r2, r3), r4)),
            (-1, F(r1, r2, ec.rmul(r3, r4))),
            (1, ec.ract(F(r1, r2, r3), r4)),
        )
        yield "r1 f(r2,r3,r4) - f(r1r2,r3,r4) + f(r1,r2r3,r4) - f(r1,r2,r3r4) + f(r1,r2,r3) r4 = 0", (0, 4), ((), idx), form
    for idx in itertools.product(range(da), range(da), range(da), range(dr), range(dr), range(dr)):
        a, b, c, r, s, t = map(_e, idx)
        ar, bs, ct = ec.act(a, r), ec.act(b, s), ec.act(c, t)
        form = ec.combine(
            (1, ec.aact(ec.amul(ec.amul(a, b), c), F(r, s, t))),
            (-1, F(ar, bs, ct)),
            (-1, ec.lact(ar, G(b, c, s, t))),
            (1, G(ec.amul(a, b), c, ec.rmul(r, s), t)),
            (-1, G(a, ec.amul(b, c), r, ec.rmul(s, t))),
            (1, ec.ract(G(a, b, r, s), ct)),
        )
        yield (
            "abc f(r,s,t) - f(ar,bs,ct) = ar g(b,c,s,t) - g(ab,c,rs,t) + g(a,bc,r,st) - g(a,b,r,s) ct",
            (1, 3),
            (idx[:3], idx[3:]),
            form,
        )
    for idx in itertools.product(range(da), range(da), range(da), range(da), range(dr), range(dr)):
        a, b, c, d, x, y = map(_e, idx)
        ac, bd = ec.amul(a, c), ec.amul(b, d)
        form = ec.combine(
            (1, ec.aact(ec.amul(a, b), G(c, d, x, y))),
            (-1, G(ac, bd, x, y)),
            (1, G(a, b, ec.act(c, x), ec.act(d, y))),
            (1, ec.lact(ec.act(ac, x), H(b, d, y))),
            (-1, H(ec.amul(a, b), ec.amul(c, d), ec.rmul(x, y))),
            (1, ec.ract(H(a, c, x), ec.act(bd, y))),
        )
        yield (
            "ab g(c,d,x,y) - g(ac,bd,x,y) + g(a,b,cx,dy) + (acx) h(b,d,y) - h(ab,cd,xy) + h(a,c,x) (bdy) = 0",
            (2, 2),
            (idx[:4], idx[4:]),
            form,
        )
    for idx in itertools.product(range(da), range(da), range(da), range(dr)):
        a, b, c, x = map(_e, idx)
        form = ec.combine(
            (1, ec.aact(a, H(b, c, x))),
            (-1, H(ec.amul(a, b), c, x)),
            (1, H(a, ec.amul(b, c), x)),
            (-1, H(a, b, ec.act(c, x))),
        )
        yield "a h(b,c,x) - h(ab,c,x) + h(a,bc,x) - h(a,b,cx) = 0", (3, 1), (idx[:3], idx[3:]), form


_IDENTITIES = {1: _identities_deg1, 2: _identities_deg2, 3: _identities_deg3}


@dataclass
class ExplicitDifferential:
    matrix: SparseMatrix
    names: dict  # target block -> identity name


def explicit_differential(ec: ExtContext, n: int) -> ExplicitDifferential:
    """Total-degree n -> n+1 map assembled from the hand-written identities."""
    if n in ec._explicit:
        return ec._explicit[n]
    entries = []
    names = {}
    for name, block, (ai, ri), form in _IDENTITIES[n](ec):
        names[block] = name
        base = ec.offset(*block) + encode_index(ai, ri, 0, block, ec.dims)
        for m, row in enumerate(form):
            for k, v in row.items():
                entries.append((base + m, k, v))
    mat = SparseMatrix.from_entries(ec.total_dim(n + 1), ec.total_dim(n), ec.field, entries)
    ec._explicit[n] = out = ExplicitDifferential(mat, names)
    return out


def _locate(ec: ExtContext, n: int, k: int):
    """Total degree-n coordinate -> (block, argument indices)."""
    for p in range(n + 1):
        size = ec.block_dim(p, n - p)
        off = ec.offset(p, n - p)
        if off <= k < off + size:
            return (p, n - p), decode_index(k - off, (p, n - p), ec.dims)
    raise IndexError(k)


# ---------------------------------------------------------------------------
# data


@dataclass
class TwoCocycleDatum:
    f: Cochain  # R (x) R -> M, bidegree (0, 2)
    g: Cochain  # A (x) R -> M, bidegree (1, 1)

    degree = 2
    blocks = ((0, 2), (1, 1))

    def parts(self):
        return (self.f, self.g)

    def vector(self, ec: ExtContext) -> dict:
        return _join(ec, self.parts())

    @classmethod
    def from_vector(cls, ec: ExtContext, vec: dict):
        return cls(*_split(ec, 2, cls.blocks, vec))

    @classmethod
    def zero(cls, ec: ExtContext):
        return cls.from_vector(ec, {})

    def to_json(self):
        return {"f": self.f.to_json(), "g": self.g.to_json()}

    @classmethod
    def from_json(cls, obj, field=None):
        return cls(Cochain.from_json(obj["f"], field), Cochain.from_json(obj["g"], field))


@dataclass
class ThreeCocycleDatum:
    f: Cochain  # R^3 -> M, (0, 3)
    g: Cochain  # A^2 (x) R^2 -> M, (1, 2)
    h: Cochain  # A^2 (x) R -> M, (2, 1)

    degree = 3
    blocks = ((0, 3), (1, 2), (2, 1))

    def parts(self):
        return (self.f, self.g, self.h)

    def vector(self, ec: ExtContext) -> dict:
        return _join(ec, self.parts())

    @classmethod
    def from_vector(cls, ec: ExtContext, vec: dict):
        return cls(*_split(ec, 3, cls.blocks, vec))

    @classmethod
    def zero(cls, ec: ExtContext):
        return cls.from_vector(ec, {})

    def to_json(self):
        return {"f": self.f.to_json(), "g": self.g.to_json(), "h": self.h.to_json()}

    @classmethod
    def from_json(cls, obj, field=None):
        return cls(*(Cochain.from_json(obj[k], field) for k in "fgh"))


def _join(ec, parts):
    out = {}
    for c in parts:
        if tuple(c.dims) != tuple(ec.dims):
            raise ValueError(f"cochain dims {c.dims} do not match context {ec.dims}")
        off = ec.offset(c.degree.p, c.degree.q)
        for k, v in c.coeffs.items():
            out[off + k] = v
    return out


def _split(ec, n, blocks, vec):
    out = []
    for p, q in blocks:
        off, size = ec.offset(p, q), ec.block_dim(p, q)
        out.append(Cochain((p, q), ec.dims, ec.field, {k - off: v for k, v in vec.items() if off <= k < off + size}))
    return out


@dataclass
class Verdict:
    ok: bool
    violations: list = dc_field(default_factory=list)  # (identity, block, argument indices, M coordinate)

    def __bool__(self):
        return self.ok


# ---------------------------------------------------------------------------
# Z / B membership


def _check(ec: ExtContext, n: int, vec: dict) -> Verdict:
    ex = explicit_differential(ec, n)
    w = ex.matrix.apply(vec)
    in_kernel = not ec.tc.D[n].apply(vec)
    if in_kernel != (not w):
        raise InconsistentWithMatrixKernel(
            f"explicit identities say {'cocycle' if not w else 'not a cocycle'}, ker D^{n} disagrees"
        )
    viol = []
    for k in sorted(w):
        block, (ai, ri, m) = _locate(ec, n + 1, k)
        viol.append((ex.names[block], block, ai + ri, m))
    return Verdict(not viol, viol)


def check_z2(datum: TwoCocycleDatum, ec: ExtContext) -> Verdict:
    return _check(ec, 2, datum.vector(ec))


def check_z3(datum: ThreeCocycleDatum, ec: ExtContext) -> Verdict:
    return _check(ec, 3, datum.vector(ec))


def _witness(ec: ExtContext, n: int, vec: dict):
    if not _check(ec, n, vec).ok:
        raise NotACocycle(f"datum is not in Z^{n}")
    ex = explicit_differential(ec, n - 1).matrix
    sol = solve(ex, vec)
    if sol is None:
        if ec.tc.D[n - 1].rows and solve(ec.tc.D[n - 1], vec) is not None:
            raise InconsistentWithMatrixKernel(f"im D^{n - 1} contains the datum but the explicit system does not")
        return None
    if ex.apply(sol) != {k: v for k, v in vec.items() if v}:
        raise AssertionError("witness does not reproduce the datum")
    return sol


def is_coboundary2(datum: TwoCocycleDatum, ec: ExtContext):
    """A witness h: R -> M (bidegree (0,1) cochain) with datum = D h, or None."""
    sol = _witness(ec, 2, datum.vector(ec))
    if sol is None:
        return None
    return Cochain((0, 1), ec.dims, ec.field, sol)


def is_coboundary3(datum: ThreeCocycleDatum, ec: ExtContext):
    """A witness (m, n) with datum = D(m, n), or None."""
    sol = _witness(ec, 3, datum.vector(ec))
    if sol is None:
        return None
    w = TwoCocycleDatum.from_vector(ec, sol)
    return w.f, w.g


@dataclass
class SubspaceComparison:
    n: int
    explicit_dim: int
    matrix_dim: int
    explicit_in_matrix: bool
    matrix_in_explicit: bool

    @property
    def agree(self):
        return self.explicit_dim == self.matrix_dim and self.explicit_in_matrix and self.matrix_in_explicit


def _compare(f, U, V, n):
    su, sv = Subspace(f, U), Subspace(f, V)
    return SubspaceComparison(n, su.dim, sv.dim, sv.contains_all(U), su.contains_all(V))


def cocycles(ec: ExtContext, n: int, explicit=True):
    mat = explicit_differential(ec, n).matrix if explicit else ec.tc.D[n]
    return rank_kernel(mat)[1]


def coboundaries(ec: ExtContext, n: int, explicit=True):
    mat = explicit_differential(ec, n - 1).matrix if explicit else ec.tc.D[n - 1]
    return image_basis(mat)


def compare_z(ec: ExtContext, n: int) -> SubspaceComparison:
    return _compare(ec.field, cocycles(ec, n), cocycles(ec, n, False), n)


def compare_b(ec: ExtContext, n: int) -> SubspaceComparison:
    return _compare(ec.field, coboundaries(ec, n), coboundaries(ec, n, False), n)


def h_dim(ec: ExtContext, n: int) -> int:
    """dim Z^n - dim B^n from the explicit identities."""
    return len(cocycles(ec, n)) - Subspace(ec.field, coboundaries(ec, n)).dim


def random_element(ec: ExtContext, basis, rng):
    f = ec.field
    out: dict = {}
    for b in basis:
        c = rng.randrange(f.p) if f.is_prime_field else rng.randint(-3, 3)
        for k, v in b.items():
            out[k] = out.get(k, 0) + c * v
    return _clean(out, f)


def random_cocycle2(ec, rng) -> TwoCocycleDatum:
    return TwoCocycleDatum.from_vector(ec, random_element(ec, cocycles(ec, 2), rng))


def random_cocycle3(ec, rng) -> ThreeCocycleDatum:
    return ThreeCocycleDatum.from_vector(ec, random_element(ec, cocycles(ec, 3), rng))


def coboundary2(ec: ExtContext, h: Cochain) -> TwoCocycleDatum:
    return TwoCocycleDatum.from_vector(ec, explicit_differential(ec, 1).matrix.apply(dict(h.coeffs)))


def coboundary3(ec: ExtContext, m: Cochain, n: Cochain) -> ThreeCocycleDatum:
    vec = _join(ec, (m, n))
    return ThreeCocycleDatum.from_vector(ec, explicit_differential(ec, 2).matrix.apply(vec))


# ---------------------------------------------------------------------------
# dense helpers


def _zeros(*shape):
    if len(shape) == 1:
        return [0] * shape[0]
    return [_zeros(*shape[1:]) for _ in range(shape[0])]


def _mm(f, X, Y):
    return [[f.reduce(sum(X[i][k] * Y[k][j] for k in range(len(Y)) if X[i][k])) for j in range(len(Y[0]))] for i in range(len(X))]


def _mv(f, X, v):
    return [f.reduce(sum(X[i][k] * v[k] for k in range(len(v)) if v[k])) for i in range(len(X))]


def _cols(X):
    return [list(c) for c in zip(*X)] if X else []


def _sparse(v):
    return {i: x for i, x in enumerate(v) if x}


def _dense(v: dict, n):
    out = [0] * n
    for k, x in v.items():
        out[k] = x
    return out


def _rank(f, vectors):
    return Subspace(f, [_sparse(v) for v in vectors]).dim


def _solve_dense(f, X, rhs):
    """x with X x = rhs, or None."""
    n = len(X[0]) if X else 0
    mat = SparseMatrix.from_dense(X, f, cols=n)
    sol = solve(mat, _sparse(rhs))
    return None if sol is None else _dense(sol, n)


def _greedy_section(f, P, order=None):
    """Right inverse of a surjection P (dense, target x source) picking preimages among
    source basis vectors in ``order``: the first ones whose images are independent."""
    tgt, src = len(P), len(P[0]) if P else 0
    order = list(range(src)) if order is None else list(order)
    cols = _cols(P)
    rr = RowReducer(f)
    chosen = []
    for j in order:
        if rr.insert(_sparse(cols[j])) is not None:
            chosen.append(j)
        if len(chosen) == tgt:
            break
    if len(chosen) < tgt:
        raise SectionFailure("map is not surjective")
    Pc = [[P[i][j] for j in chosen] for i in range(tgt)]
    inv = mat_inv(f, Pc)
    sec = _zeros(src, tgt)
    for a, j in enumerate(chosen):
        sec[j] = list(inv[a])
    return sec


# ---------------------------------------------------------------------------
# abelian extensions


@dataclass(eq=False)
class AbelianExtension:
    """0 -> M -> S -> R -> 0 with S an A-algebra and M square-zero."""

    S: AssocAlgebraPres
    projection: list  # dim R x dim S
    inclusion: list  # dim S x dim M
    A: object
    R: AssocAlgebraPres
    M: BimodulePres

    def validate(self) -> ValidationReport:
        f = self.S.field
        rep = ValidationReport("abelian extension")
        rep.extend(validate_assoc(self.S, self.A))
        ds, dr, dm = self.S.dim, self.R.dim, self.M.dim
        P, I = self.projection, self.inclusion
        if len(P) != dr or len(P[0]) != ds or len(I) != ds or (dm and len(I[0]) != dm):
            rep.add("shapes", (dr, ds, dm))
            return rep
        if _rank(f, _cols(I)) != dm:
            rep.add("inclusion injective", ())
        if _rank(f, _cols(P)) != dr:
            rep.add("projection surjective", ())
        if any(f.reduce(x) for row in _mm(f, P, I) for x in row) if dm else False:
            rep.add("projection o inclusion = 0", ())
        if dm + dr != ds:
            rep.add("exact in the middle (dimension count)", (dm, dr, ds))
        E = [self.S.basis(i) for i in range(ds)]
        ims = [[I[k][j] for k in range(ds)] for j in range(dm)]
        for i, j in itertools.product(range(dm), repeat=2):
            if any(self.S.mul(ims[i], ims[j])):
                rep.add("M.M = 0", (i, j))
        for i, j in itertools.product(range(ds), repeat=2):
            if _mv(f, P, self.S.mult[i][j]) != self.R.mul(_mv(f, P, E[i]), _mv(f, P, E[j])):
                rep.add("projection multiplicative", (i, j))
        if _mv(f, P, self.S.unit) != [f.reduce(x) for x in self.R.unit]:
            rep.add("projection unital", ())
        for a in range(self.A.dim):
            ea = self.A.basis(a)
            for i in range(ds):
                if _mv(f, P, self.S.act(ea, E[i])) != self.R.act(ea, _mv(f, P, E[i])):
                    rep.add("projection A-linear", (a, i))
        # induced bimodule structure on M
        for m in range(dm):
            for i in range(ds):
                r = _mv(f, P, E[i])
                lhs = self.S.mul(E[i], ims[m])
                if lhs != _mv(f, I, self.M.lmul(r, _basis(dm, m))):
                    rep.add("induced left action equals M", (i, m))
                lhs = self.S.mul(ims[m], E[i])
                if lhs != _mv(f, I, self.M.rmul(_basis(dm, m), r)):
                    rep.add("induced right action equals M", (m, i))
        return rep

    def transformed(self, T):
        """Same extension in a new basis of S (columns of T)."""
        f = self.S.field
        Ti = mat_inv(f, T)
        return AbelianExtension(
            transform_assoc(self.S, T), _mm(f, self.projection, T), _mm(f, Ti, self.inclusion), self.A, self.R, self.M
        )

    def to_json(self):
        f = self.S.field
        return {
            "kind": "abelian_extension",
            "S": pres_to_json(self.S),
            "projection": [[f.render(x) for x in row] for row in self.projection],
            "inclusion": [[f.render(x) for x in row] for row in self.inclusion],
        }


def _basis(n, i):
    v = [0] * n
    v[i] = 1
    return v


def build_extension(datum: TwoCocycleDatum, ec: ExtContext, check=True) -> AbelianExtension:
    """S = M + R with (m,r)(n,s) = (ms + rn + f(r,s), rs) and a(m,r) = (am + g(a,r), ar)."""
    if check and not check_z2(datum, ec).ok:
        raise NotACocycle("datum is not in Z^2")
    S = _raw_extension_algebra(ec, datum.f.dense(), datum.g.dense())
    ext = AbelianExtension(S, *_standard_maps(ec), ec.A, ec.R, ec.M)
    if check:
        rep = ext.validate()
        if not rep.ok:
            raise AssertionError(f"extension built from a cocycle fails validation: {rep}")
    return ext


def _standard_maps(ec):
    da, dr, dm = ec.dims
    ds = dm + dr
    P = [[1 if j == dm + i else 0 for j in range(ds)] for i in range(dr)]
    I = [[1 if i == j else 0 for j in range(dm)] for i in range(ds)]
    return P, I


def _raw_extension_algebra(ec, fvals, gvals) -> AssocAlgebraPres:
    """fvals/gvals: dense values in the flat (0,2)/(1,1) layouts."""
    fld = ec.field
    da, dr, dm = ec.dims
    R, M = ec.R, ec.M
    ds = dm + dr
    mult = _zeros(ds, ds, ds)
    for i in range(dm):
        for j in range(dr):
            for k, c in enumerate(M.right[i][j]):
                mult[i][dm + j][k] = c
            for k, c in enumerate(M.left[j][i]):
                mult[dm + j][i][k] = c
    for i in range(dr):
        for j in range(dr):
            base = (i * dr + j) * dm
            for k in range(dm):
                mult[dm + i][dm + j][k] = fvals[base + k]
            for k, c in enumerate(R.mult[i][j]):
                mult[dm + i][dm + j][dm + k] = c
    act = _zeros(da, ds, ds)
    for a in range(da):
        u = R.image_of(ec.A.basis(a))
        for m in range(dm):
            act[a][m][:dm] = M.lmul(u, _basis(dm, m))
        for j in range(dr):
            base = (a * dr + j) * dm
            for k in range(dm):
                act[a][dm + j][k] = gvals[base + k]
            for k, c in enumerate(R.a_action[a][j]):
                act[a][dm + j][dm + k] = c
    # unit (-f(1,1), 1_R)
    one = R.unit
    f11 = [0] * dm
    for i in range(dr):
        for j in range(dr):
            if one[i] and one[j]:
                base = (i * dr + j) * dm
                for k in range(dm):
                    f11[k] += one[i] * one[j] * fvals[base + k]
    unit = [fld.reduce(-x) for x in f11] + list(one)
    labels = list(M.labels) + list(R.labels)
    return AssocAlgebraPres(fld, ds, mult, unit, act, labels)


def section(ext: AbelianExtension, rule="first"):
    """Deterministic linear section R -> S of the projection (dense dim S x dim R)."""
    f = ext.S.field
    ds = ext.S.dim
    order = range(ds) if rule == "first" else range(ds - 1, -1, -1)
    return _greedy_section(f, ext.projection, order)


def _pull_back(f, I, vec, what="element"):
    x = _solve_dense(f, I, vec)
    if x is None:
        raise NotExact(f"{what} does not lie in the image of the inclusion")
    return x


def extract_cocycle2(ext: AbelianExtension, ec: ExtContext, sec=None, rule="first") -> TwoCocycleDatum:
    """f(r,s) = h(r)h(s) - h(rs), g(a,r) = a h(r) - h(ar) for a linear section h."""
    f = ext.S.field
    da, dr, dm = ec.dims
    rep = ext.validate()
    if not rep.ok:
        raise NotExact(str(rep))
    h = sec if sec is not None else section(ext, rule)
    hc = _cols(h)  # hc[i] = h(r_i) in S
    S, I = ext.S, ext.inclusion
    fv = {}
    for i, j in itertools.product(range(dr), repeat=2):
        v = S.mul(hc[i], hc[j])
        w = _mv(f, h, ec.R.mult[i][j])
        m = _pull_back(f, I, [x - y for x, y in zip(v, w)], "h(r)h(s) - h(rs)")
        for k, x in enumerate(m):
            if x:
                fv[(i * dr + j) * dm + k] = x
    gv = {}
    for a, j in itertools.product(range(da), range(dr)):
        v = S.act(ec.A.basis(a), hc[j])
        w = _mv(f, h, ec.R.a_action[a][j])
        m = _pull_back(f, I, [x - y for x, y in zip(v, w)], "a h(r) - h(ar)")
        for k, x in enumerate(m):
            if x:
                gv[(a * dr + j) * dm + k] = x
    return TwoCocycleDatum(Cochain((0, 2), ec.dims, f, fv), Cochain((1, 1), ec.dims, f, gv))


def extension_equivalence(e1: AbelianExtension, e2: AbelianExtension):
    """An A-algebra map phi: S1 -> S2 with phi i1 = i2 and p2 phi = p1, or None.

    The linear conditions leave phi = phi0 + i2 k p1 with k: R -> M; since M is
    square-zero, multiplicativity and A-linearity are affine in k, so the search
    is one exact linear solve.
    """
    f = e1.S.field
    S1, S2 = e1.S, e2.S
    n1, n2 = S1.dim, S2.dim
    I1, I2, P1, P2 = e1.inclusion, e2.inclusion, e1.projection, e2.projection
    dm, dr = len(I1[0]) if I1 and I1[0] else 0, len(P1)
    if n1 != n2:
        return None
    # phi0: unknown phi[i][j] at index i*n1 + j
    rows, rhs = [], []
    for i in range(n2):
        for m in range(dm):
            rows.append({i * n1 + j: I1[j][m] for j in range(n1) if I1[j][m]})
            rhs.append(I2[i][m])
    for r in range(dr):
        for j in range(n1):
            rows.append({i * n1 + j: P2[r][i] for i in range(n2) if P2[r][i]})
            rhs.append(P1[r][j])
    phi0 = _solve_rows(f, rows, rhs, n1 * n2)
    if phi0 is None:
        return None
    phi0 = [[phi0[i * n1 + j] for j in range(n1)] for i in range(n2)]

    def apply_k(x):
        # i2 k p1 (x) as a combination of the unknowns k[m][r] (index m*dr + r)
        pr = _mv(f, P1, x)
        out = []
        for m in range(dm):
            for r in range(dr):
                if pr[r]:
                    out.append((m * dr + r, [pr[r] * I2[i][m] for i in range(n2)]))
        return out

    E = [S1.basis(i) for i in range(n1)]
    phiE = [_mv(f, phi0, e) for e in E]
    nk = dm * dr
    rows, rhs = [], []

    def add_eq(const, lin):
        # const + sum_k lin_k = 0, one equation per S2 coordinate
        for c in range(n2):
            row = {}
            for idx, vec in lin:
                if vec[c]:
                    row[idx] = row.get(idx, 0) + vec[c]
            rows.append(row)
            rhs.append(-const[c])

    for i, j in itertools.product(range(n1), repeat=2):
        xy = S1.mult[i][j]
        const = [a - b for a, b in zip(_mv(f, phi0, xy), S2.mul(phiE[i], phiE[j]))]
        lin = apply_k(xy)
        lin += [(idx, [-x for x in S2.mul(phiE[i], v)]) for idx, v in apply_k(E[j])]
        lin += [(idx, [-x for x in S2.mul(v, phiE[j])]) for idx, v in apply_k(E[i])]
        add_eq(const, lin)
    for a in range(e1.A.dim):
        ea = e1.A.basis(a)
        for j in range(n1):
            ax = S1.act(ea, E[j])
            const = [x - y for x, y in zip(_mv(f, phi0, ax), S2.act(ea, phiE[j]))]
            lin = apply_k(ax)
            lin += [(idx, [-x for x in S2.act(ea, v)]) for idx, v in apply_k(E[j])]
            add_eq(const, lin)
    k = _solve_rows(f, rows, rhs, nk)
    if k is None:
        return None
    phi = [row[:] for row in phi0]
    for m in range(dm):
        for r in range(dr):
            if k[m * dr + r]:
                for i in range(n2):
                    for j in range(n1):
                        phi[i][j] = f.reduce(phi[i][j] + k[m * dr + r] * I2[i][m] * P1[r][j])
    if not _is_equivalence(e1, e2, phi):
        raise AssertionError("solved equivalence fails substitution check")
    return phi


def _solve_rows(f, rows, rhs, n):
    mat = SparseMatrix.from_rows(len(rows), n, f, {i: {k: v for k, v in r.items() if f.reduce(v)} for i, r in enumerate(rows)})
    sol = solve(mat, {i: x for i, x in enumerate(rhs) if f.reduce(x)})
    return None if sol is None else _dense(sol, n)


def _is_equivalence(e1, e2, phi):
    f = e1.S.field
    S1, S2 = e1.S, e2.S
    E = [S1.basis(i) for i in range(S1.dim)]
    red = lambda X: [[f.reduce(x) for x in row] for row in X]
    if red(_mm(f, phi, e1.inclusion)) != red(e2.inclusion) if e1.inclusion and e1.inclusion[0] else False:
        return False
    if red(_mm(f, e2.projection, phi)) != red(e1.projection):
        return False
    for i, j in itertools.product(range(S1.dim), repeat=2):
        if _mv(f, phi, S1.mult[i][j]) != S2.mul(_mv(f, phi, E[i]), _mv(f, phi, E[j])):
            return False
    for a in range(e1.A.dim):
        ea = e1.A.basis(a)
        for j in range(S1.dim):
            if _mv(f, phi, S1.act(ea, E[j])) != S2.act(ea, _mv(f, phi, E[j])):
                return False
    return True


# ---------------------------------------------------------------------------
# crossed extensions


@dataclass(eq=False)
class CrossedExtension:
    """0 -> M -> C1 -> C0 -> R -> 0 with C1 a crossed C0-bimodule."""

    C1: BimodulePres  # over C0
    C0: AssocAlgebraPres
    boundary: list  # dim C0 x dim C1
    pi: list  # dim R x dim C0
    iota: list  # dim C1 x dim M
    A: object
    R: AssocAlgebraPres
    M: BimodulePres

    def validate(self) -> ValidationReport:
        f = self.C0.field
        rep = ValidationReport("crossed extension")
        rep.extend(validate_assoc(self.C0, self.A))
        rep.extend(validate_bimodule(self.C1, self.C0, self.A))
        n0, n1, dr, dm = self.C0.dim, self.C1.dim, self.R.dim, self.M.dim
        B, P, I = self.boundary, self.pi, self.iota
        E0 = [self.C0.basis(i) for i in range(n0)]
        E1 = [_basis(n1, i) for i in range(n1)]
        for x in range(n0):
            for c in range(n1):
                if _mv(f, B, self.C1.lmul(E0[x], E1[c])) != self.C0.mul(E0[x], _col(B, c)):
                    rep.add("boundary is left C0-linear", (x, c))
                if _mv(f, B, self.C1.rmul(E1[c], E0[x])) != self.C0.mul(_col(B, c), E0[x]):
                    rep.add("boundary is right C0-linear", (c, x))
        for c, d in itertools.product(range(n1), repeat=2):
            if self.C1.lmul(_col(B, c), E1[d]) != self.C1.rmul(E1[c], _col(B, d)):
                rep.add("Peiffer: d(c)c' = c d(c')", (c, d))
        # exactness
        ri = _rank(f, _cols(I)) if dm else 0
        if ri != dm:
            rep.add("iota injective", ())
        if dm and any(x for row in _mm(f, B, I) for x in row):
            rep.add("boundary o iota = 0", ())
        rb = _rank(f, _cols(B)) if n1 else 0
        if ri != n1 - rb:
            rep.add("exact at C1", (ri, n1 - rb))
        if n1 and any(x for row in _mm(f, P, B) for x in row):
            rep.add("pi o boundary = 0", ())
        rp = _rank(f, _cols(P))
        if rp != dr:
            rep.add("pi surjective", ())
        if rb != n0 - rp:
            rep.add("exact at C0", (rb, n0 - rp))
        # pi is a unital A-algebra map
        for i, j in itertools.product(range(n0), repeat=2):
            if _mv(f, P, self.C0.mult[i][j]) != self.R.mul(_mv(f, P, E0[i]), _mv(f, P, E0[j])):
                rep.add("pi multiplicative", (i, j))
        if _mv(f, P, self.C0.unit) != [f.reduce(x) for x in self.R.unit]:
            rep.add("pi unital", ())
        for a in range(self.A.dim):
            ea = self.A.basis(a)
            for i in range(n0):
                if _mv(f, P, self.C0.act(ea, E0[i])) != self.R.act(ea, _mv(f, P, E0[i])):
                    rep.add("pi A-linear", (a, i))
        # the C0-action on iota(M) is the R-bimodule structure of M
        for m in range(dm):
            em = _col(I, m)
            for x in range(n0):
                r = _mv(f, P, E0[x])
                if self.C1.lmul(E0[x], em) != _mv(f, I, self.M.lmul(r, _basis(dm, m))):
                    rep.add("C0 acts on M through R (left)", (x, m))
                if self.C1.rmul(em, E0[x]) != _mv(f, I, self.M.rmul(_basis(dm, m), r)):
                    rep.add("C0 acts on M through R (right)", (m, x))
        return rep

    def transformed(self, T0, T1):
        """New bases: columns of T0 for C0 and of T1 for C1."""
        f = self.C0.field
        T0i, T1i = mat_inv(f, T0), mat_inv(f, T1)
        C0 = transform_assoc(self.C0, T0)
        C1 = transform_bimodule(self.C1, T1, T0)
        B = _mm(f, _mm(f, T0i, self.boundary), T1)
        return CrossedExtension(C1, C0, B, _mm(f, self.pi, T0), _mm(f, T1i, self.iota), self.A, self.R, self.M)

    def to_json(self):
        f = self.C0.field
        rd = lambda X: [[f.render(x) for x in row] for row in X]
        return {
            "kind": "crossed_extension",
            "C0": pres_to_json(self.C0),
            "C1": pres_to_json(self.C1),
            "boundary": rd(self.boundary),
            "pi": rd(self.pi),
            "iota": rd(self.iota),
        }


def _col(X, j):
    return [row[j] for row in X]


def _identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def trivial_crossed_extension(ec: ExtContext) -> CrossedExtension:
    """0 -> M -> M -> R -> R -> 0 with zero boundary."""
    dr, dm = ec.dims[1], ec.dims[2]
    return CrossedExtension(ec.M, ec.R, _zeros(dr, dm) if dm else [[] for _ in range(dr)], _identity(dr), _identity(dm), ec.A, ec.R, ec.M)


def crossed_from_extension(ext: AbelianExtension, ec: ExtContext) -> CrossedExtension:
    """0 -> M -> M + M -> S -> R -> 0 with boundary (m, n) -> i(n).

    S acts on both summands through the projection to R.
    """
    f = ext.S.field
    S, P, I = ext.S, ext.projection, ext.inclusion
    M = ec.M
    dm, ds = M.dim, S.dim
    n1 = 2 * dm
    left = _zeros(ds, n1, n1)
    right = _zeros(n1, ds, n1)
    for x in range(ds):
        r = _col(P, x)
        for half in (0, dm):
            for m in range(dm):
                lm = M.lmul(r, _basis(dm, m))
                rm = M.rmul(_basis(dm, m), r)
                for k in range(dm):
                    left[x][half + m][half + k] = lm[k]
                    right[half + m][x][half + k] = rm[k]
    C1 = BimodulePres(f, n1, left, right)
    B = [[0] * dm + [I[i][m] for m in range(dm)] for i in range(ds)]
    iota = [[1 if i == j else 0 for j in range(dm)] for i in range(n1)]
    return CrossedExtension(C1, S, B, [row[:] for row in P], iota, ec.A, ec.R, M)


def crossed_to_cocycle(ce: CrossedExtension, ec: ExtContext, p_sec=None, q_sec=None, rule="first", check=True):
    """The class of a crossed extension as a triple (f, g, h) in Z^3.

    p: R -> C0 is a section of pi and q: im(boundary) -> C1 a section of the
    boundary (given on all of C0 as q o (projection onto im boundary) is not
    needed: q is only ever applied to elements of im(boundary)).  With
    m(r,s) = q(p(r)p(s) - p(rs)) and n(a,r) = q(a p(r) - p(ar)):

        f = p(r)m(s,t) - m(rs,t) + m(r,st) - m(r,s)p(t)
        g = ab m(r,s) - m(ar,bs) - p(ar) n(b,s) + n(ab,rs) - n(a,r) (b p(s))
        h = a n(b,r) - n(ab,r) + n(a,br)
    """
    fld = ec.field
    da, dr, dm = ec.dims
    if check:
        require_valid(ce.validate())
    C0, C1, B, I = ce.C0, ce.C1, ce.boundary, ce.iota
    n0, n1 = C0.dim, C1.dim
    order = (lambda n: range(n)) if rule == "first" else (lambda n: range(n - 1, -1, -1))
    p = p_sec if p_sec is not None else _greedy_section(fld, ce.pi, order(n0))

    if q_sec is None:
        # deterministic q: solve against the chosen independent columns of the boundary
        rr = RowReducer(fld)
        cols = _cols(B)
        chosen = [j for j in order(n1) if rr.insert(_sparse(cols[j])) is not None]
        sub = [[B[i][j] for j in chosen] for i in range(n0)]

        def q(v, sub=sub, chosen=chosen):
            x = _solve_dense(fld, sub, v) if chosen else ([] if not any(fld.reduce(t) for t in v) else None)
            if x is None:
                raise SectionFailure("element outside the image of the boundary")
            out = [0] * n1
            for a, j in enumerate(chosen):
                out[j] = x[a]
            return out
    else:
        def q(v):
            x = _mv(fld, q_sec, v)
            if _mv(fld, B, x) != [fld.reduce(t) for t in v]:
                raise SectionFailure("q_sec is not a section of the boundary on this element")
            return x

    def sub_(u, v):
        return [fld.reduce(x - y) for x, y in zip(u, v)]

    def add_(*vs):
        return [fld.reduce(sum(t)) for t in zip(*vs)]

    a_unit = [C0.image_of(ec.A.basis(a)) for a in range(da)]

    def a_of(avec):
        return [fld.reduce(sum(avec[i] * a_unit[i][k] for i in range(da))) for k in range(n0)]

    def pvec(r):
        return _mv(fld, p, r)

    def mm(r, s):
        return q(sub_(C0.mul(pvec(r), pvec(s)), pvec(ec.R.mul(r, s))))

    def nn(a, r):
        return q(sub_(C0.act(a, pvec(r)), pvec(ec.R.act(a, r))))

    Er = [ec.R.basis(i) for i in range(dr)]
    Ea = [ec.A.basis(i) for i in range(da)]
    mtab = {(i, j): mm(Er[i], Er[j]) for i in range(dr) for j in range(dr)}

    def m_lin(r, s):
        out = [0] * n1
        for i, x in enumerate(r):
            for j, y in enumerate(s):
                if x and y:
                    out = add_(out, [x * y * t for t in mtab[(i, j)]])
        return out

    ntab = {(a, j): nn(Ea[a], Er[j]) for a in range(da) for j in range(dr)}

    def n_lin(a, r):
        out = [0] * n1
        for i, x in enumerate(a):
            for j, y in enumerate(r):
                if x and y:
                    out = add_(out, [x * y * t for t in ntab[(i, j)]])
        return out

    lm = C1.lmul
    rm = C1.rmul

    def pull(v, what):
        if any(fld.reduce(x) for x in _mv(fld, B, v)):
            raise SectionFailure(f"{what} is not a cycle of the boundary")
        return _pull_back(fld, I, v, what) if dm else []

    fv, gv, hv = {}, {}, {}
    for i, j, k in itertools.product(range(dr), repeat=3):
        r, s, t = Er[i], Er[j], Er[k]
        v = add_(
            lm(pvec(r), m_lin(s, t)),
            [-x for x in m_lin(ec.R.mul(r, s), t)],
            m_lin(r, ec.R.mul(s, t)),
            [-x for x in rm(m_lin(r, s), pvec(t))],
        )
        for c, x in enumerate(pull(v, "f")):
            if x:
                fv[encode_index((), (i, j, k), c, (0, 3), ec.dims)] = x
    for a, b, i, j in itertools.product(range(da), range(da), range(dr), range(dr)):
        A_, B_, r, s = Ea[a], Ea[b], Er[i], Er[j]
        ab = ec.A.mul(A_, B_)
        ar, bs = ec.R.act(A_, r), ec.R.act(B_, s)
        v = add_(
            lm(a_of(ab), m_lin(r, s)),
            [-x for x in m_lin(ar, bs)],
            [-x for x in lm(pvec(ar), n_lin(B_, s))],
            n_lin(ab, ec.R.mul(r, s)),
            [-x for x in rm(n_lin(A_, r), C0.act(B_, pvec(s)))],
        )
        for c, x in enumerate(pull(v, "g")):
            if x:
                gv[encode_index((a, b), (i, j), c, (1, 2), ec.dims)] = x
    for a, b, i in itertools.product(range(da), range(da), range(dr)):
        A_, B_, r = Ea[a], Ea[b], Er[i]
        v = add_(
            lm(a_of(A_), n_lin(B_, r)),
            [-x for x in n_lin(ec.A.mul(A_, B_), r)],
            n_lin(A_, ec.R.act(B_, r)),
        )
        for c, x in enumerate(pull(v, "h")):
            if x:
                hv[encode_index((a, b), (i,), c, (2, 1), ec.dims)] = x
    datum = ThreeCocycleDatum(
        Cochain((0, 3), ec.dims, fld, fv), Cochain((1, 2), ec.dims, fld, gv), Cochain((2, 1), ec.dims, fld, hv)
    )
    if not check_z3(datum, ec).ok:
        raise AssertionError("crossed-extension triple is not a 3-cocycle")
    return datum


def _parse_matrix(f, X):
    return [[f.coerce(x) for x in row] for row in X]


def extension_from_json(obj: dict, ec: ExtContext) -> AbelianExtension:
    from .presentations import from_json

    f = ec.field
    S = from_json(obj["S"], "associative", f)
    return AbelianExtension(S, _parse_matrix(f, obj["projection"]), _parse_matrix(f, obj["inclusion"]), ec.A, ec.R, ec.M)


def crossed_from_json(obj: dict, ec: ExtContext) -> CrossedExtension:
    from .presentations import from_json

    f = ec.field
    return CrossedExtension(
        from_json(obj["C1"], "bimodule", f),
        from_json(obj["C0"], "associative", f),
        _parse_matrix(f, obj["boundary"]),
        _parse_matrix(f, obj["pi"]),
        _parse_matrix(f, obj["iota"]),
        ec.A,
        ec.R,
        ec.M,
    )


def dual_numbers_crossed(ec: ExtContext) -> CrossedExtension:
    """0 -> K -> C1 -> K[eps]/(eps^2) -> K -> 0 over A = K[eps]/(eps^2), R = M = K.

    C1 has basis u, m with boundary u -> eps, m -> 0, eps.u = u.eps = m and
    eps.m = m.eps = 0.  Its class generates H^3(A, K, K).
    """
    from .library import regular_algebra

    f = ec.field
    if ec.dims != (2, 1, 1):
        raise ShapeError("needs A = K[eps]/(eps^2), R = M = K")
    C0 = regular_algebra(ec.A)
    left = [[[1, 0], [0, 1]], [[0, 1], [0, 0]]]
    right = [[[1, 0], [0, 1]], [[0, 1], [0, 0]]]
    C1 = BimodulePres(f, 2, left, right, ["u", "m"])
    ce = CrossedExtension(C1, C0, [[0, 0], [1, 0]], [[1, 0]], [[0], [1]], ec.A, ec.R, ec.M)
    require_valid(ce.validate())
    return ce


# ---------------------------------------------------------------------------
# brute-force classification over F_2


@dataclass
class Classification:
    z2: int
    b2: int
    classes: int
    valid_structures: int
    searched: int

    @property
    def h2(self):
        return self.z2 // self.b2


def _all_vectors(n):
    for bits in range(1 << n):
        yield [(bits >> (n - 1 - i)) & 1 for i in range(n)]


def classify_bruteforce(ec: ExtContext, limit=1 << 24) -> Classification:
    """Exhaustive count of Z^2, B^2 and extension classes over F_2.

    Z^2 is counted as the set of (f, g) whose S = M + R passes the A-algebra
    validator; classes are orbits of the maps phi = 1 + i k p (k: R -> M), each
    orbit step recomputing the transported structure constants directly.
    """
    import numpy as np

    f = ec.field
    if not (f.is_prime_field and f.p == 2):
        raise ValueError("brute-force classification runs over F_2 only")
    da, dr, dm = ec.dims
    nf, ng = dr * dr * dm, da * dr * dm
    nvar = nf + ng
    nk = dr * dm
    if (1 << nvar) * max(1, 1 << nk) > limit:
        raise SearchSpaceTooLarge(f"2^{nvar} data x 2^{nk} maps exceeds {limit}")
    ds = dm + dr
    base_alg = _raw_extension_algebra(ec, [0] * nf, [0] * ng)
    base_mult = np.array(base_alg.mult, dtype=np.int64)
    base_act = np.array(base_alg.a_action, dtype=np.int64)
    unitR = np.array(ec.R.unit, dtype=np.int64) % 2
    Amult = np.array(ec.A.mult, dtype=np.int64)
    Aunit = np.array(ec.A.unit, dtype=np.int64)

    def structure(bits):
        mult = base_mult.copy()
        act = base_act.copy()
        fv = np.array(bits[:nf], dtype=np.int64).reshape(dr, dr, dm)
        gv = np.array(bits[nf:], dtype=np.int64).reshape(da, dr, dm)
        mult[dm:, dm:, :dm] = fv
        act[:, dm:, :dm] = gv
        f11 = np.einsum("i,j,ijk->k", unitR, unitR, fv) % 2
        unit = np.concatenate([f11, unitR]) % 2
        return mult, act, unit

    def is_algebra(mult, act, unit):
        lhs = np.einsum("ijk,klm->ijlm", mult, mult) % 2  # (e_i e_j) e_l
        rhs = np.einsum("jlk,ikm->ijlm", mult, mult) % 2  # e_i (e_j e_l)
        if (lhs != rhs).any():
            return False
        if ((np.einsum("i,ijk->jk", unit, mult) % 2) != np.eye(ds, dtype=np.int64)).any():
            return False
        if ((np.einsum("j,ijk->ik", unit, mult) % 2) != np.eye(ds, dtype=np.int64)).any():
            return False
        # A-module: (ab).x = a.(b.x), 1.x = x
        l1 = np.einsum("abc,cxk->abxk", Amult, act) % 2
        l2 = np.einsum("bxy,ayk->abxk", act, act) % 2
        if (l1 != l2).any():
            return False
        if ((np.einsum("a,axk->xk", Aunit, act) % 2) != np.eye(ds, dtype=np.int64)).any():
            return False
        # centrality: a(xy) = (ax)y = x(ay)
        c0 = np.einsum("xyk,akl->axyl", mult, act) % 2
        c1 = np.einsum("axk,kyl->axyl", act, mult) % 2
        c2 = np.einsum("ayk,xkl->axyl", act, mult) % 2
        return bool((c0 == c1).all() and (c0 == c2).all())

    valid = {}
    for bits in _all_vectors(nvar):
        mult, act, unit = structure(bits)
        if is_algebra(mult, act, unit):
            valid[tuple(bits)] = (mult, act)
    # coboundaries: structure constants of 1 + i k p applied to the trivial extension
    ks = list(_all_vectors(nk))

    def phi_of(k):
        phi = np.eye(ds, dtype=np.int64)
        K = np.array(k, dtype=np.int64).reshape(dr, dm)  # k(r_j) = sum_m K[j, m] m
        phi[:dm, dm:] = K.T
        return phi

    def transport(mult, act, phi):
        # structure on S' with phi: S -> S' an isomorphism; phi^{-1} = 1 - i k p = phi over F_2
        inv = phi
        m2 = np.einsum("ai,bj,ijk,ck->abc", inv.T, inv.T, mult, phi) % 2
        a2 = np.einsum("bj,ajk,ck->abc", inv.T, act, phi) % 2
        return m2, a2

    def read(m2, a2):
        fv = m2[dm:, dm:, :dm].reshape(-1)
        gv = a2[:, dm:, :dm].reshape(-1)
        return tuple(int(x) for x in np.concatenate([fv, gv]))

    zero = tuple([0] * nvar)
    b2 = set()
    if zero in valid:
        m0, a0 = valid[zero]
        for k in ks:
            b2.add(read(*transport(m0, a0, phi_of(k))))
    seen = set()
    classes = 0
    for key, (mult, act) in valid.items():
        if key in seen:
            continue
        classes += 1
        for k in ks:
            img = read(*transport(mult, act, phi_of(k)))
            if img not in valid:
                raise AssertionError("transport left the set of valid structures")
            seen.add(img)
    return Classification(len(valid), len(b2), classes, len(valid), 1 << nvar)
