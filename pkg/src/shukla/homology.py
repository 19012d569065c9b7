"""Cohomology of the total complex, classical Hochschild complexes over K and
over A, the comparison maps alpha^n and A-derivations."""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from itertools import product

from .bicomplex import AssocData, TotalComplex, assemble, horizontal_d, totalize, vertical_delta
from .linalg import RowReducer, SparseMatrix, Subspace, check_cap, image_basis, rank_kernel
from .presentations import require_valid, validate_triple


class TruncationTooSmall(ValueError):
    pass


@dataclass
class DegreeReport:
    n: int
    dim: int | None
    kernel_dim: int | None
    image_dim: int
    space_dim: int
    complete: bool = True
    representatives: list = dc_field(default_factory=list)


@dataclass
class CohomologyReport:
    title: str
    field: str
    N: int
    degrees: list = dc_field(default_factory=list)

    def to_json(self):
        return {
            "title": self.title,
            "field": self.field,
            "N": self.N,
            "degrees": [
                {
                    "n": d.n,
                    "dim": d.dim,
                    "kernel_dim": d.kernel_dim,
                    "image_dim": d.image_dim,
                    "space_dim": d.space_dim,
                    "complete": d.complete,
                    "representatives": [[[k, str(v)] for k, v in sorted(r.items())] for r in d.representatives],
                }
                for d in self.degrees
            ],
        }

    @classmethod
    def from_json(cls, obj):
        from .scalars import FieldSpec, parse_scalar

        field = FieldSpec.parse(obj["field"])
        rep = cls(obj["title"], obj["field"], obj["N"])
        for d in obj["degrees"]:
            reps = [{int(k): parse_scalar(v, field).value for k, v in r} for r in d["representatives"]]
            rep.degrees.append(
                DegreeReport(d["n"], d["dim"], d["kernel_dim"], d["image_dim"], d["space_dim"], d["complete"], reps)
            )
        return rep

    def __eq__(self, other):
        return isinstance(other, CohomologyReport) and self.to_json() == other.to_json()

    def dims(self, upto=None):
        """dim H^n for the complete degrees (n <= N-1)."""
        return [d.dim for d in self.degrees if d.complete and (upto is None or d.n <= upto)]

    def dim(self, n):
        for d in self.degrees:
            if d.n == n:
                if not d.complete:
                    raise TruncationTooSmall(f"degree {n} is boundary-incomplete at N={self.N}")
                return d.dim
        raise TruncationTooSmall(f"degree {n} not computed (N={self.N})")


def complex_cohomology(D: dict, dims: dict, N: int, field, title="", representatives=True) -> CohomologyReport:
    """Cohomology of a cochain complex given by D[n]: C^n -> C^{n+1}, n <= N-1."""
    rep = CohomologyReport(title, str(field), N)
    image_prev: list = []
    for n in range(N + 1):
        img = image_prev
        if n < N:
            rk, ker = rank_kernel(D[n])
            reps = []
            if representatives:
                img_space = Subspace(field, img)
                both = Subspace(field, img)
                for v in ker:
                    if both.add(v):
                        reps.append(_canonical(img_space.reduce(v), field))
            dimh = len(ker) - len(img)
            rep.degrees.append(DegreeReport(n, dimh, len(ker), len(img), dims[n], True, reps))
            image_prev = image_basis(D[n])
        else:
            rep.degrees.append(DegreeReport(n, None, None, len(img), dims[n], False, []))
    return rep


def _canonical(vec, field):
    return {k: field.reduce(v) for k, v in vec.items() if field.reduce(v)}


def cohomology(tc: TotalComplex, representatives=True, title="H^*(A,R,M)") -> CohomologyReport:
    return complex_cohomology(tc.D, tc.dims, tc.N, tc.field, title, representatives)


def shukla_cohomology(A, R, M, N=4, reduced=True, cap=None, representatives=True):
    """Assemble, totalise and compute H^n(A,R,M) for n <= N-1."""
    tc = totalize(assemble(A, R, M, N, reduced=reduced, cap=cap))
    return cohomology(tc, representatives), tc


# ---------------------------------------------------------------------------
# classical Hochschild complex over K (independent of the bicomplex code)


def hochschild_coboundary(R, M, n, cap=None) -> SparseMatrix:
    """delta: Hom(R^{(x)n}, M) -> Hom(R^{(x)n+1}, M), assembled column by column."""
    f = R.field
    dr, dm = R.dim, M.dim
    ncols = check_cap(dr ** n * dm, cap)
    nrows = check_cap(dr ** (n + 1) * dm, cap)
    pre = {k: [] for k in range(dr)}
    for x in range(dr):
        for y in range(dr):
            for k, c in enumerate(R.mult[x][y]):
                if f.reduce(c):
                    pre[k].append((x, y, c))

    def flat(tup, m):
        x = 0
        for t in tup:
            x = x * dr + t
        return x * dm + m

    entries = []
    for s in product(range(dr), repeat=n):
        for m in range(dm):
            col = flat(s, m)
            # r_0 . f(r_1, ..., r_n)
            for r0 in range(dr):
                for k, c in enumerate(M.left[r0][m]):
                    if c:
                        entries.append((flat((r0,) + s, k), col, c))
            # (-1)^(i+1) f(..., r_i r_{i+1}, ...)
            for i in range(n):
                sign = -1 if i % 2 == 0 else 1
                for x, y, c in pre[s[i]]:
                    entries.append((flat(s[:i] + (x, y) + s[i + 1:], m), col, sign * c))
            # (-1)^(n+1) f(r_0, ..., r_{n-1}) . r_n
            sign = -1 if n % 2 == 0 else 1
            for rn in range(dr):
                for k, c in enumerate(M.right[m][rn]):
                    if c:
                        entries.append((flat(s + (rn,), k), col, sign * c))
    return SparseMatrix.from_entries(nrows, ncols, f, entries)


def hochschild_over_K(R, M, N=4, cap=None, representatives=True) -> CohomologyReport:
    D = {n: hochschild_coboundary(R, M, n, cap) for n in range(N)}
    dims = {n: R.dim ** n * M.dim for n in range(N + 1)}
    return complex_cohomology(D, dims, N, R.field, "HH^*(R,M) over K", representatives)


# ---------------------------------------------------------------------------
# Hochschild cohomology over A


def tensor_over_A(A, R, k, cap=None):
    """R^{(x)_A k} as a quotient of R^{(x)k}: returns (dim, projection matrix)."""
    f = R.field
    dr = R.dim
    n = check_cap(dr ** k, cap)
    if k <= 1:
        return n, SparseMatrix.identity(n, f)
    ctx = AssocData(A, R, _unit_module(R), validate=False)
    rr = RowReducer(f)
    for a in range(A.dim):
        for s in product(range(dr), repeat=k):
            for i in range(k - 1):
                rel: dict = {}
                for sign, pos in ((1, i), (-1, i + 1)):
                    for x, c in ctx.aact[a][s[pos]]:
                        t = s[:pos] + (x,) + s[pos + 1:]
                        idx = _flat(t, dr)
                        rel[idx] = rel.get(idx, 0) + sign * c
                rel = {j: f.reduce(v) for j, v in rel.items() if f.reduce(v)}
                if rel:
                    rr.insert(rel)
    free = [j for j in range(n) if j not in rr.pivots]
    pos = {j: i for i, j in enumerate(free)}
    entries = [(pos[j], j, 1) for j in free]
    for pc, row in rr.pivots.items():
        P = row[pc]
        for j, v in row.items():
            if j != pc:
                entries.append((pos[j], pc, f.reduce(-v if f.is_prime_field else Fraction(-v, P))))
    return len(free), SparseMatrix.from_entries(len(free), n, f, entries)


def _flat(t, base):
    x = 0
    for d in t:
        x = x * base + d
    return x


def _unit_module(R):
    from .presentations import BimodulePres

    # any bimodule will do for AssocData's R-side tables; M is never used
    return BimodulePres(R.field, 1, [[[0]] for _ in range(R.dim)], [[[0] for _ in range(R.dim)]])


def hom_A_via_tensor(A, R, M, k, cap=None):
    """Basis of {phi o P : phi in Hom_A(R^{(x)_A k}, M)} inside Hom(R^{(x)k}, M)."""
    f = R.field
    dr, dm = R.dim, M.dim
    if k == 0:
        return [{m: 1} for m in range(dm)]
    q, P = tensor_over_A(A, R, k, cap)
    ctx = AssocData(A, R, M, validate=False)
    Pcols = P.column_vectors()
    n = dr ** k
    # unknown phi: Q -> M, variable index qi*dm + m
    eqs = []
    for a in range(A.dim):
        a_op = ctx.left_op(ctx.a_on_unit({a: 1}))
        for s in range(n):
            tup = _unflat(s, dr, k)
            # P(a . x) with a acting on the first factor
            ax: dict = {}
            for x, c in ctx.aact[a][tup[0]]:
                for qi, w in Pcols[_flat((x,) + tup[1:], dr)].items():
                    ax[qi] = ax.get(qi, 0) + c * w
            px = Pcols[s]
            for mo in range(dm):
                row: dict = {}
                for qi, w in ax.items():
                    row[qi * dm + mo] = row.get(qi * dm + mo, 0) + w
                for mi, c in a_op[mo]:
                    for qi, w in px.items():
                        row[qi * dm + mi] = row.get(qi * dm + mi, 0) - c * w
                row = {j: f.reduce(v) for j, v in row.items() if f.reduce(v)}
                if row:
                    eqs.append(row)
    rr = RowReducer(f)
    for e in eqs:
        rr.insert(e)
    out = []
    for phi in rr.kernel_basis(q * dm):
        psi: dict = {}
        for var, c in phi.items():
            qi, m = divmod(var, dm)
            for s, w in P.data.get(qi, {}).items():
                psi[s * dm + m] = psi.get(s * dm + m, 0) + c * w
        out.append({j: f.reduce(v) for j, v in psi.items() if f.reduce(v)})
    return out


def _unflat(x, base, k):
    t = []
    for _ in range(k):
        x, d = divmod(x, base)
        t.append(d)
    return tuple(reversed(t))


def hochschild_A_cochains(A, R, M, N, method="kernel", cap=None):
    """Bases of C^n_A(R,M) inside K^{0n} = Hom(R^{(x)n}, M) for n <= N."""
    if method == "kernel":
        ctx = AssocData(A, R, M, cap)
        return {n: rank_kernel(horizontal_d(0, n, ctx))[1] for n in range(N + 1)}
    if method == "tensor":
        require_valid(validate_triple(A, R, M))
        return {n: hom_A_via_tensor(A, R, M, n, cap) for n in range(N + 1)}
    raise ValueError(f"unknown method {method!r}")


def subcomplex_cohomology(bases: dict, delta: dict, N, field, title="", representatives=True):
    """Cohomology of a subcomplex spanned by ``bases[n]`` of a complex with differentials ``delta[n]``."""
    rep = CohomologyReport(title, str(field), N)
    boundaries_prev: list = []
    for n in range(N + 1):
        B = boundaries_prev
        if n < N:
            Bn = bases[n]
            images = [delta[n].apply(v) for v in Bn]
            mat = SparseMatrix.from_columns(delta[n].rows, field, images)
            _, ker = rank_kernel(mat)
            cocycles = [_combine(Bn, y, field) for y in ker]
            bspace = Subspace(field, B)
            both = Subspace(field, B)
            reps = []
            for z in cocycles:
                if both.add(z) and representatives:
                    reps.append(_canonical(bspace.reduce(z), field))
            rep.degrees.append(DegreeReport(n, len(cocycles) - bspace.dim, len(cocycles), bspace.dim, len(Bn), True, reps))
            boundaries_prev = Subspace(field, images).basis()
        else:
            rep.degrees.append(DegreeReport(n, None, None, Subspace(field, B).dim, len(bases[n]), False, []))
    return rep


def _combine(basis, coeffs, field):
    out: dict = {}
    for i, c in coeffs.items():
        for k, v in basis[i].items():
            out[k] = out.get(k, 0) + c * v
    return _canonical(out, field)


def hochschild_over_A(A, R, M, N=4, method="kernel", cap=None, representatives=True, cross_check=True) -> CohomologyReport:
    """H^n_A(R,M) for n <= N-1 as the cohomology of C^*_A(R,M) inside Hom(R^{(x)*}, M).

    method="kernel": C^n_A = Ker(d: K^{0n} -> K^{1n});
    method="tensor": C^n_A = Hom_A(R^{(x)_A n}, M) pulled back along R^{(x)n} -> R^{(x)_A n}.
    """
    bases = hochschild_A_cochains(A, R, M, N, method, cap)
    if cross_check:
        other = hochschild_A_cochains(A, R, M, N, "tensor" if method == "kernel" else "kernel", cap)
        for n in range(N + 1):
            if len(other[n]) != len(bases[n]) or not Subspace(R.field, other[n]).contains_all(bases[n]):
                raise AssertionError(f"C^{n}_A differs between kernel-column and tensor-quotient routes")
    delta = {n: hochschild_coboundary(R, M, n, cap) for n in range(N)}
    return subcomplex_cohomology(bases, delta, N, R.field, f"HH^*_A(R,M) [{method}]", representatives)


# ---------------------------------------------------------------------------
# comparison map alpha^n


@dataclass
class AlphaEntry:
    n: int
    dim_source: int  # dim H^n_A(R,M)
    dim_target: int  # dim H^n(A,R,M)
    rank: int

    @property
    def injective(self):
        return self.rank == self.dim_source

    @property
    def surjective(self):
        return self.rank == self.dim_target

    @property
    def iso(self):
        return self.injective and self.surjective

    def verdict(self):
        if self.iso:
            return "iso"
        if self.injective:
            return "mono"
        if self.surjective:
            return "epi"
        return "neither"


@dataclass
class ComparisonVerdict:
    title: str
    field: str
    N: int
    entries: list = dc_field(default_factory=list)

    def to_json(self):
        return {
            "title": self.title,
            "field": self.field,
            "N": self.N,
            "entries": [
                {"n": e.n, "dim_HA": e.dim_source, "dim_H": e.dim_target, "rank": e.rank,
                 "injective": e.injective, "surjective": e.surjective, "iso": e.iso}
                for e in self.entries
            ],
        }

    @classmethod
    def from_json(cls, obj):
        out = cls(obj["title"], obj["field"], obj["N"])
        for e in obj["entries"]:
            out.entries.append(AlphaEntry(e["n"], e["dim_HA"], e["dim_H"], e["rank"]))
        return out

    def __eq__(self, other):
        return isinstance(other, ComparisonVerdict) and self.to_json() == other.to_json()

    def entry(self, n) -> AlphaEntry:
        for e in self.entries:
            if e.n == n:
                return e
        raise TruncationTooSmall(f"alpha^{n} not computed at N={self.N}")


def _alpha_entry(n, tc: TotalComplex, bases, delta, field):
    """Rank of H^n_A -> H^n induced by the inclusion C^n_A c K^{0n} c Tot^n."""
    if n > tc.N - 1:
        raise TruncationTooSmall(f"alpha^{n} needs N >= {n + 1}, have N = {tc.N}")
    Bn = bases[n]
    images = [delta[n].apply(v) for v in Bn]
    _, ker = rank_kernel(SparseMatrix.from_columns(delta[n].rows, field, images))
    cocycles = [_combine(Bn, y, field) for y in ker]
    b_a = Subspace(field, [delta[n - 1].apply(v) for v in bases[n - 1]]) if n > 0 else Subspace(field)
    dim_source = len(cocycles) - b_a.dim
    # (0, n) is the first block of Tot^n, so K^{0n} coordinates are total coordinates
    for z in cocycles:
        if tc.D[n].apply(z):
            raise AssertionError(f"inclusion is not a chain map in degree {n}")
    img = image_basis(tc.D[n - 1]) if n > 0 else []
    space = Subspace(field, img)
    base = space.dim
    for z in cocycles:
        space.add(z)
    rank = space.dim - base
    _, ker_tot = rank_kernel(tc.D[n])
    dim_target = len(ker_tot) - base
    return AlphaEntry(n, dim_source, dim_target, rank)


def alpha(n, A, R, M, N=None, tc: TotalComplex | None = None, cap=None) -> AlphaEntry:
    N = n + 1 if N is None else N
    if N < n + 1:
        raise TruncationTooSmall(f"alpha^{n} needs N >= {n + 1}")
    ctx = AssocData(A, R, M, cap)
    tc = tc or totalize(assemble(ctx, N=N))
    bases = {k: rank_kernel(horizontal_d(0, k, ctx))[1] for k in range(n + 1)}
    delta = {k: vertical_delta(0, k, ctx) for k in range(n + 1)}
    return _alpha_entry(n, tc, bases, delta, ctx.field)


def compare(A, R, M, N=4, cap=None) -> ComparisonVerdict:
    """alpha^n verdicts for n <= N-1."""
    ctx = AssocData(A, R, M, cap)
    tc = totalize(assemble(ctx, N=N))
    bases = {k: rank_kernel(horizontal_d(0, k, ctx))[1] for k in range(N)}
    delta = {k: vertical_delta(0, k, ctx) for k in range(N)}
    out = ComparisonVerdict("alpha^n: H^n_A(R,M) -> H^n(A,R,M)", str(ctx.field), N)
    for n in range(N):
        out.entries.append(_alpha_entry(n, tc, bases, delta, ctx.field))
    return out


# ---------------------------------------------------------------------------
# derivations


def derivations(A, R, M):
    """Basis of Der_A(R, M) as vectors in Hom(R, M) (index r*dimM + m)."""
    ctx = AssocData(A, R, M)
    f = ctx.field
    dr, dm = R.dim, M.dim
    rr = RowReducer(f)

    def push(row):
        row = {j: f.reduce(v) for j, v in row.items() if f.reduce(v)}
        if row:
            rr.insert(row)

    for i in range(dr):
        for j in range(dr):
            # D(r_i r_j) - r_i D(r_j) - D(r_i) r_j
            for mo in range(dm):
                row: dict = {}
                for k, c in ctx.rmul[i][j]:
                    row[k * dm + mo] = row.get(k * dm + mo, 0) + c
                for mi, c in ctx.left[i][mo]:
                    row[j * dm + mi] = row.get(j * dm + mi, 0) - c
                for mi, c in ctx.right[j][mo]:
                    row[i * dm + mi] = row.get(i * dm + mi, 0) - c
                push(row)
    for a in range(A.dim):
        a_op = ctx.left_op(ctx.a_on_unit({a: 1}))
        for j in range(dr):
            # D(a r_j) - a D(r_j)
            for mo in range(dm):
                row = {}
                for k, c in ctx.aact[a][j]:
                    row[k * dm + mo] = row.get(k * dm + mo, 0) + c
                for mi, c in a_op[mo]:
                    row[j * dm + mi] = row.get(j * dm + mi, 0) - c
                push(row)
    return rr.kernel_basis(dr * dm)
