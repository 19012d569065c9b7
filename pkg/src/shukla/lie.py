"""Lie version of the bicomplex: Chevalley-Eilenberg columns of A^{(x)p} (x) L."""
from __future__ import annotations

from .bicomplex import BigradedComplex, TotalComplex, check_identities, totalize
from .cochains import exterior_basis, exterior_index, lie_space_dim, sort_sign
from .homology import ComparisonVerdict, TruncationTooSmall, _alpha_entry, cohomology
from .linalg import SparseMatrix, check_cap, rank_kernel
from .presentations import require_valid, validate_lie_triple


class ImageNotAlternating(AssertionError):
    pass


def _mat_rows(field, mat):
    return tuple(tuple((j, field.reduce(c)) for j, c in enumerate(row) if field.reduce(c)) for row in mat)


def _compose(field, X, Y, n):
    """Row form of X @ Y for row-form square operators."""
    out = []
    for mo in range(n):
        acc: dict = {}
        for k, c in X[mo]:
            for mi, d in Y[k]:
                acc[mi] = acc.get(mi, 0) + c * d
        out.append(tuple((mi, field.reduce(v)) for mi, v in sorted(acc.items()) if field.reduce(v)))
    return tuple(out)


class LieData:
    """Structure constants of g_p = A^{(x)p} (x) L and of its action on M."""

    def __init__(self, A, L, M, cap=None, validate=True, bracket_rule="tensor"):
        if bracket_rule not in ("tensor", "collapsed"):
            raise ValueError(f"unknown bracket rule {bracket_rule!r}")
        self.bracket_rule = bracket_rule
        if validate:
            require_valid(validate_lie_triple(A, L, M))
        self.A, self.L, self.M = A, L, M
        self.field = f = A.field
        self.dims = (A.dim, L.dim, M.dim)
        self.cap = cap
        self.amul = A.sp_mult
        self.lact = L.sp_act
        self.lbr = L.sp_bracket
        self.xop = [_mat_rows(f, M.action_mats[i]) for i in range(L.dim)]
        self.aop = [_mat_rows(f, M.a_mats[a]) for a in range(A.dim)]
        self.unit = tuple((k, c) for k, c in enumerate(A.unit) if f.reduce(c))
        self._cache: dict = {}

    def gdim(self, p):
        return self.dims[0] ** p * self.dims[1]

    def decode(self, p, idx):
        da = self.dims[0]
        idx, x = divmod(idx, self.dims[1])
        digits = []
        for _ in range(p):
            idx, d = divmod(idx, da)
            digits.append(d)
        return tuple(reversed(digits)), x

    def encode(self, digits, x):
        da = self.dims[0]
        i = 0
        for d in digits:
            i = i * da + d
        return i * self.dims[1] + x

    def a_product(self, digits):
        f = self.field
        cur = dict(self.unit)
        for d in digits:
            nxt: dict = {}
            for k, c in cur.items():
                for l, e in self.amul[k][d]:
                    nxt[l] = nxt.get(l, 0) + c * e
            cur = {k: f.reduce(v) for k, v in nxt.items() if f.reduce(v)}
        return cur

    def a_on_l(self, a: dict, x: int):
        out: dict = {}
        for i, c in a.items():
            for y, d in self.lact[i][x]:
                out[y] = out.get(y, 0) + c * d
        f = self.field
        return {y: f.reduce(v) for y, v in out.items() if f.reduce(v)}

    def a_op(self, a: dict):
        """Row form of m -> a.m."""
        f, dm = self.field, self.dims[2]
        acc = [dict() for _ in range(dm)]
        for i, c in a.items():
            for mo, row in enumerate(self.aop[i]):
                for mi, d in row:
                    acc[mo][mi] = acc[mo].get(mi, 0) + c * d
        return tuple(tuple((mi, f.reduce(v)) for mi, v in sorted(t.items()) if f.reduce(v)) for t in acc)

    def bracket(self, p):
        """Sparse bracket table of g_p.

        "tensor": [a (x) x, b (x) y] = (a_1 b_1 (x) ... (x) a_p b_p) (x) [x, y];
        "collapsed": 1^{(x)p} (x) (a_1...a_p b_1...b_p)[x, y], which breaks d.delta = delta.d.
        """
        key = ("br", p)
        if key in self._cache:
            return self._cache[key]
        f = self.field
        n = self.gdim(p)
        ones = _expand([self.unit] * p)
        table = {}
        for u in range(n):
            da_, x = self.decode(p, u)
            for v in range(u + 1, n):
                db_, y = self.decode(p, v)
                if not self.lbr[x][y]:
                    continue
                acc: dict = {}
                if self.bracket_rule == "tensor":
                    for t, e in _expand([self.amul[i][j] for i, j in zip(da_, db_)]):
                        for z, c in self.lbr[x][y]:
                            k = self.encode(t, z)
                            acc[k] = acc.get(k, 0) + c * e
                else:
                    ab = self.a_product(da_ + db_)
                    for z, c in self.lbr[x][y]:
                        for w, d in self.a_on_l(ab, z).items():
                            for t, e in ones:
                                k = self.encode(t, w)
                                acc[k] = acc.get(k, 0) + c * d * e
                row = tuple((k, f.reduce(c)) for k, c in sorted(acc.items()) if f.reduce(c))
                if row:
                    table[(u, v)] = row
                    table[(v, u)] = tuple((k, -c) for k, c in row)
        self._cache[key] = table
        return table

    def module_op(self, p, u):
        """Row form of m -> u.m = (prod a . x) m for u = a (x) x in g_p."""
        key = ("op", p, u)
        if key in self._cache:
            return self._cache[key]
        digits, x = self.decode(p, u)
        op = _compose(self.field, self.a_op(self.a_product(digits)), self.xop[x], self.dims[2])
        self._cache[key] = op
        return op


def _expand(lists):
    out = [((), 1)]
    for lst in lists:
        out = [(t + (k,), c * d) for t, c in out for k, d in lst]
    return out


def _data(A, L=None, M=None, cap=None):
    return A if isinstance(A, LieData) else LieData(A, L, M, cap)


def collapsed_bracket_failure(A, L, M, N=3):
    """Bidegrees where d.delta != delta.d (up to sign) under the literal collapsed bracket."""
    bc = assemble_lie(LieData(A, L, M, bracket_rule="collapsed"), N=N, check=False, closure_check=False)
    out = []
    for (p, q), d1 in bc.d_mats.items():
        if (p + 1, q) in bc.delta_mats and (p, q + 1) in bc.d_mats:
            x = bc.delta_mats[(p + 1, q)] @ d1
            y = bc.d_mats[(p, q + 1)] @ bc.delta_mats[(p, q)]
            if x != y and not (x + y).is_zero():
                out.append((p, q))
    return out


# ---------------------------------------------------------------------------
# vertical: Chevalley-Eilenberg


def ce_differential(ld: LieData, p: int, q: int) -> SparseMatrix:
    """d: Hom(L^q g_p, M) -> Hom(L^{q+1} g_p, M) on exterior bases (index tuple*dimM + m)."""
    f = ld.field
    dm = ld.dims[2]
    n = ld.gdim(p)
    ncols = check_cap(lie_space_dim(p, q, ld.dims, ld.cap), ld.cap)
    nrows = check_cap(lie_space_dim(p, q + 1, ld.dims, ld.cap), ld.cap)
    src = exterior_index(n, q)
    br = ld.bracket(p)
    data: dict = {}
    for ti, T in enumerate(exterior_basis(n, q + 1)):
        rows = [data.setdefault(ti * dm + m, {}) for m in range(dm)]
        # sum_i (-1)^i u_i . w(..., ^u_i, ...)
        for i, u in enumerate(T):
            sign = 1 if i % 2 == 0 else -1
            s = src[T[:i] + T[i + 1:]] * dm
            for mo, oprow in enumerate(ld.module_op(p, u)):
                for mi, c in oprow:
                    rows[mo][s + mi] = rows[mo].get(s + mi, 0) + sign * c
        # sum_{i<j} (-1)^{i+j} w([u_i, u_j], ...)
        for i in range(q + 1):
            for j in range(i + 1, q + 1):
                b = br.get((T[i], T[j]))
                if not b:
                    continue
                rest = T[:i] + T[i + 1:j] + T[j + 1:]
                sign = 1 if (i + j) % 2 == 0 else -1
                for k, c in b:
                    sg, st = sort_sign((k,) + rest)
                    if not sg:
                        continue
                    s = src[st] * dm
                    for m in range(dm):
                        rows[m][s + m] = rows[m].get(s + m, 0) + sign * sg * c
    return SparseMatrix.from_rows(nrows, ncols, f, data)


def lie_column(p, A, L=None, M=None, N=4, cap=None) -> dict:
    """CE differentials of column p: {q: matrix} for q <= N - p - 1."""
    ld = _data(A, L, M, cap)
    return {q: ce_differential(ld, p, q) for q in range(N - p)}


# ---------------------------------------------------------------------------
# horizontal


def _eval_d(ld: LieData, p: int, cols, src_index):
    """(d w)(u_1, ..., u_q) for basis elements u_j of g_{p+1}, as per-M-coordinate
    linear forms in the exterior coordinates of Hom(L^q g_p, M)."""
    f = ld.field
    dm = ld.dims[2]
    dec = [ld.decode(p + 1, u) for u in cols]
    out = [dict() for _ in range(dm)]

    def add(combos, sign, op):
        for t, c in _expand(combos):
            sg, st = sort_sign(t)
            if not sg:
                continue
            s = src_index[st] * dm
            coef = sign * sg * c
            if op is None:
                for m in range(dm):
                    out[m][s + m] = out[m].get(s + m, 0) + coef
            else:
                for mo, row in enumerate(op):
                    for mi, e in row:
                        out[mo][s + mi] = out[mo].get(s + mi, 0) + coef * e

    # (a_01 ... a_0q) . w(rows 1..p)
    a0 = ld.a_product(tuple(d[0] for d, _ in dec))
    add([((ld.encode(d[1:], x), 1),) for d, x in dec], 1, ld.a_op(a0))
    # merged rows i, i+1
    for i in range(p):
        combos = []
        for d, x in dec:
            lst = []
            for k, c in ld.amul[d[i]][d[i + 1]]:
                lst.append((ld.encode(d[:i] + (k,) + d[i + 2:], x), c))
            combos.append(tuple(lst))
        add(combos, -1 if i % 2 == 0 else 1, None)
    # w(rows 0..p-1, a_p1 x_1, ..., a_pq x_q)
    combos = []
    for d, x in dec:
        combos.append(tuple((ld.encode(d[:p], y), c) for y, c in ld.lact[d[p]][x]))
    add(combos, -1 if p % 2 == 0 else 1, None)
    return [{k: f.reduce(v) for k, v in row.items() if f.reduce(v)} for row in out]


def lie_horizontal_d(p, q, A, L=None, M=None, cap=None, closure_check=True) -> SparseMatrix:
    """d: K^{pq} -> K^{p+1,q} by restriction of the associative-style d to alternating cochains."""
    ld = _data(A, L, M, cap)
    f = ld.field
    dm = ld.dims[2]
    if q == 0:
        entries = [(m, m, 1) for m in range(dm)] if p % 2 else []
        return SparseMatrix.from_entries(dm, dm, f, entries)
    ncols = check_cap(lie_space_dim(p, q, ld.dims, ld.cap), ld.cap)
    nrows = check_cap(lie_space_dim(p + 1, q, ld.dims, ld.cap), ld.cap)
    src = exterior_index(ld.gdim(p), q)
    data: dict = {}
    for ti, T in enumerate(exterior_basis(ld.gdim(p + 1), q)):
        forms = _eval_d(ld, p, T, src)
        for m in range(dm):
            data[ti * dm + m] = forms[m]
        if closure_check and q >= 2:
            # the value on a permuted argument list must be the signed value
            for i in range(q - 1):
                sw = T[:i] + (T[i + 1], T[i]) + T[i + 2:]
                other = _eval_d(ld, p, sw, src)
                for m in range(dm):
                    neg = {k: f.reduce(-v) for k, v in other[m].items()}
                    if neg != forms[m]:
                        raise ImageNotAlternating(f"d at ({p},{q}) not alternating at {T}, swap {i}")
            rep = (T[0],) + T[:-1]
            for m, row in enumerate(_eval_d(ld, p, rep, src)):
                if row:
                    raise ImageNotAlternating(f"d at ({p},{q}) nonzero on repeated argument {rep}")
    return SparseMatrix.from_rows(nrows, ncols, f, data)


# ---------------------------------------------------------------------------
# assembly, cohomology, comparison


def assemble_lie(A, L=None, M=None, N=4, reduced=True, cap=None, check=True, closure_check=True) -> BigradedComplex:
    ld = _data(A, L, M, cap)
    f = ld.field
    spaces = {}
    for n in range(N + 1):
        for p in range(n + 1):
            q = n - p
            spaces[(p, q)] = 0 if (reduced and q == 0 and p > 0) else lie_space_dim(p, q, ld.dims, cap)
    d_mats, delta_mats = {}, {}
    for n in range(N):
        for p in range(n + 1):
            q = n - p
            src = spaces[(p, q)]
            if src == 0 or spaces[(p + 1, q)] == 0:
                d_mats[(p, q)] = SparseMatrix.zero(spaces[(p + 1, q)], src, f)
            else:
                d_mats[(p, q)] = lie_horizontal_d(p, q, ld, closure_check=closure_check)
            if src == 0 or spaces[(p, q + 1)] == 0:
                delta_mats[(p, q)] = SparseMatrix.zero(spaces[(p, q + 1)], src, f)
            else:
                delta_mats[(p, q)] = ce_differential(ld, p, q)
    bc = BigradedComplex(N, f, spaces, d_mats, delta_mats, reduced, kind="lie")
    if check:
        check_identities(bc)
    return bc


def lie_cohomology(A, L=None, M=None, N=4, cap=None, representatives=True):
    """H^n(A, L, M) for n <= N - 1; returns (report, total complex)."""
    tc = totalize(assemble_lie(A, L, M, N, cap=cap))
    return cohomology(tc, representatives, "H^*(A,L,M)"), tc


def _lie_parts(ld, N):
    # C^0_A = M: the reduced row has no (1, 0) block
    bases = {k: rank_kernel(lie_horizontal_d(0, k, ld))[1] if k else [{m: 1} for m in range(ld.dims[2])] for k in range(N)}
    delta = {k: ce_differential(ld, 0, k) for k in range(N)}
    return bases, delta


def lie_alpha(n, A, L=None, M=None, N=None, tc: TotalComplex | None = None, cap=None):
    N = n + 1 if N is None else N
    if N < n + 1:
        raise TruncationTooSmall(f"alpha^{n} needs N >= {n + 1}")
    ld = _data(A, L, M, cap)
    tc = tc or totalize(assemble_lie(ld, N=N))
    bases, delta = _lie_parts(ld, n + 1)
    return _alpha_entry(n, tc, bases, delta, ld.field)


def lie_compare(A, L=None, M=None, N=4, cap=None) -> ComparisonVerdict:
    ld = _data(A, L, M, cap)
    tc = totalize(assemble_lie(ld, N=N))
    bases, delta = _lie_parts(ld, N)
    out = ComparisonVerdict("alpha^n: H^n_A(L,M) -> H^n(A,L,M)", str(ld.field), N)
    for n in range(N):
        out.entries.append(_alpha_entry(n, tc, bases, delta, ld.field))
    return out
