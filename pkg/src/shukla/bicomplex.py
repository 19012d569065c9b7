"""Matrices of the horizontal differential d, the vertical differential delta,
the reduced subbicomplex and the total complex for an associative A-algebra R
with coefficients in an R-R-bimodule M.

Matrices are assembled row by row: for every basis argument tuple of the
target space the value of df (resp. delta f) is expanded through the structure
constants into a combination of values of f.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from itertools import product

from .cochains import space_dim
from .linalg import SparseMatrix, block_matrix
from .presentations import require_valid, validate_triple


class BicomplexIdentityFailure(AssertionError):
    pass


class TotalizationSignFailure(AssertionError):
    pass


def _op_rows(field, mat):
    """Dense square matrix -> per output row tuple of (input index, coeff)."""
    red = field.reduce
    return tuple(tuple((j, red(c)) for j, c in enumerate(row) if red(c)) for row in mat)


def _expand(lists):
    """Cartesian product of sparse expansions: lists[j] = ((k, c), ...)."""
    out = [((), 1)]
    for lst in lists:
        out = [(t + (k,), c * d) for t, c in out for k, d in lst]
    return out


def _mixed(digits, base):
    x = 0
    for d in digits:
        x = x * base + d
    return x


class AssocData:
    """Sparse structure constants of a validated triple, shared by the assemblers."""

    def __init__(self, A, R, M, cap=None, validate=True):
        if validate:
            require_valid(validate_triple(A, R, M))
        self.A, self.R, self.M = A, R, M
        self.field = A.field
        self.dims = (A.dim, R.dim, M.dim)
        self.cap = cap
        self.amul = A.sp_mult
        self.aact = R.sp_act
        self.rmul = R.sp_mult
        f = self.field
        self.left = [_op_rows(f, M.left_mats[i]) for i in range(R.dim)]
        self.right = [_op_rows(f, M.right_mats[i]) for i in range(R.dim)]
        self._a_unit = [tuple((k, c) for k, c in enumerate(R.image_of(A.basis(a))) if c) for a in range(A.dim)]
        self._lcache: dict = {}
        self._rcache: dict = {}

    def a_product(self, idx):
        """Product of A basis elements idx[0]...idx[-1] as {k: c}; empty product = 1_A."""
        f = self.field
        if not idx:
            return {k: c for k, c in enumerate(self.A.unit) if c}
        cur = {idx[0]: 1}
        for i in idx[1:]:
            nxt: dict = {}
            for k, c in cur.items():
                for l, d in self.amul[k][i]:
                    nxt[l] = nxt.get(l, 0) + c * d
            cur = {k: v for k, v in ((k, f.reduce(v)) for k, v in nxt.items()) if v}
        return cur

    def act_on_r(self, a: dict, r: dict):
        """a . r for sparse A- and R-vectors."""
        out: dict = {}
        for i, c in a.items():
            for j, d in r.items():
                for k, e in self.aact[i][j]:
                    out[k] = out.get(k, 0) + c * d * e
        f = self.field
        return {k: v for k, v in ((k, f.reduce(v)) for k, v in out.items()) if v}

    def a_on_unit(self, a: dict):
        """a . 1_R."""
        out: dict = {}
        for i, c in a.items():
            for k, e in self._a_unit[i]:
                out[k] = out.get(k, 0) + c * e
        f = self.field
        return {k: v for k, v in ((k, f.reduce(v)) for k, v in out.items()) if v}

    def _combine_ops(self, ops, r: dict):
        dm = self.dims[2]
        acc = [dict() for _ in range(dm)]
        for i, c in r.items():
            for mo, row in enumerate(ops[i]):
                tgt = acc[mo]
                for mi, d in row:
                    tgt[mi] = tgt.get(mi, 0) + c * d
        f = self.field
        return tuple(tuple((mi, f.reduce(v)) for mi, v in sorted(t.items()) if f.reduce(v)) for t in acc)

    def left_op(self, r: dict):
        key = tuple(sorted(r.items()))
        op = self._lcache.get(key)
        if op is None:
            op = self._lcache[key] = self._combine_ops(self.left, r)
        return op

    def right_op(self, r: dict):
        key = tuple(sorted(r.items()))
        op = self._rcache.get(key)
        if op is None:
            op = self._rcache[key] = self._combine_ops(self.right, r)
        return op


def _data(A, R=None, M=None, cap=None):
    return A if isinstance(A, AssocData) else AssocData(A, R, M, cap)


def _row_zero_matrix(p, dm, field):
    """d on row q = 0: M -> M is 0 for p even and the identity for p odd."""
    if p % 2:
        return SparseMatrix.identity(dm, field)
    return SparseMatrix.zero(dm, dm, field)


def horizontal_d(p, q, A, R=None, M=None, cap=None) -> SparseMatrix:
    """Matrix of d: K^{pq} -> K^{p+1,q}."""
    ctx = _data(A, R, M, cap)
    f = ctx.field
    da, dr, dm = ctx.dims
    ncols = space_dim((p, q), ctx.dims, ctx.cap)
    nrows = space_dim((p + 1, q), ctx.dims, ctx.cap)
    if q == 0:
        return _row_zero_matrix(p, dm, f)
    nrow = da ** q
    nr = dr ** q
    row_tuples = list(product(range(da), repeat=q))
    r_tuples = list(product(range(dr), repeat=q))

    op0 = [ctx.left_op(ctx.a_on_unit(ctx.a_product(t))) for t in row_tuples]
    merge: dict = {}

    def merged(i1, i2):
        key = (i1, i2)
        v = merge.get(key)
        if v is None:
            t1, t2 = row_tuples[i1], row_tuples[i2]
            acc: dict = {}
            for t, c in _expand([ctx.amul[x][y] for x, y in zip(t1, t2)]):
                k = _mixed(t, da)
                acc[k] = acc.get(k, 0) + c
            v = merge[key] = [(k, c) for k, c in acc.items() if f.reduce(c)]
        return v

    last: dict = {}

    def moved(ai, ri):
        key = (ai, ri)
        v = last.get(key)
        if v is None:
            ta, tr = row_tuples[ai], r_tuples[ri]
            acc: dict = {}
            for t, c in _expand([ctx.aact[x][y] for x, y in zip(ta, tr)]):
                k = _mixed(t, dr)
                acc[k] = acc.get(k, 0) + c
            v = last[key] = [(k, c) for k, c in acc.items() if f.reduce(c)]
        return v

    pw = [nrow ** k for k in range(p + 2)]
    sgn_last = -1 if p % 2 == 0 else 1  # (-1)^(p+1)
    data: dict = {}
    for rows in product(range(nrow), repeat=p + 1):
        t_a = 0
        for x in rows:
            t_a = t_a * nrow + x
        # source A-index of rows[1:], rows[:-1] and with two rows merged
        tail_a = t_a - rows[0] * pw[p]
        head_a = t_a // nrow
        ops = op0[rows[0]]
        mids = [merged(rows[i], rows[i + 1]) for i in range(p)]
        for ri in range(nr):
            t_base = (t_a * nr + ri) * dm
            mv = moved(rows[p], ri)
            rowdicts = [data.setdefault(t_base + m, {}) for m in range(dm)]
            # a_01...a_0q f(rows 1..p, r)
            s_base = (tail_a * nr + ri) * dm
            for mo, oprow in enumerate(ops):
                rd = rowdicts[mo]
                for mi, c in oprow:
                    col = s_base + mi
                    rd[col] = rd.get(col, 0) + c
            # merged rows i, i+1
            for i in range(p):
                sign = -1 if i % 2 == 0 else 1  # (-1)^(i+1)
                hi = 0
                for x in rows[:i]:
                    hi = hi * nrow + x
                lo = 0
                for x in rows[i + 2:]:
                    lo = lo * nrow + x
                lo_w = pw[p - 1 - i]
                for k, c in mids[i]:
                    a_idx = (hi * nrow + k) * lo_w + lo
                    s_base = (a_idx * nr + ri) * dm
                    sc = sign * c
                    for m in range(dm):
                        rd = rowdicts[m]
                        col = s_base + m
                        rd[col] = rd.get(col, 0) + sc
            # f(rows 0..p-1, a_p1 r_1, ..., a_pq r_q)
            for k, c in mv:
                s_base = (head_a * nr + k) * dm
                sc = sgn_last * c
                for m in range(dm):
                    rd = rowdicts[m]
                    col = s_base + m
                    rd[col] = rd.get(col, 0) + sc
    return SparseMatrix.from_rows(nrows, ncols, f, data)


def vertical_delta(p, q, A, R=None, M=None, cap=None) -> SparseMatrix:
    """Matrix of delta: K^{pq} -> K^{p,q+1}, including the (-1)^p factor.

    Column j of the argument grid, (a_1j, ..., a_pj, r_j), is treated as one
    basis element of A^{(x)p} (x) R, encoded with the A digits first.
    """
    ctx = _data(A, R, M, cap)
    f = ctx.field
    da, dr, dm = ctx.dims
    ncols = space_dim((p, q), ctx.dims, ctx.cap)
    nrows = space_dim((p, q + 1), ctx.dims, ctx.cap)
    nb = da ** p * dr
    cols_dec = [(t[:p], t[p]) for t in product(*([range(da)] * p + [range(dr)]))]

    def weights(Q):
        W = []
        for j in range(Q):
            wj = []
            for a_t, r in cols_dec:
                x = 0
                for i, a in enumerate(a_t):
                    x += a * da ** (p * Q - 1 - (i * Q + j))
                wj.append((x * dr ** Q + r * dr ** (Q - 1 - j)) * dm)
            W.append(wj)
        return W

    Wt = weights(q + 1)
    Ws = weights(q)

    def mu(c):
        a_t, r = cols_dec[c]
        if not a_t:
            return {r: 1}
        return ctx.act_on_r(ctx.a_product(a_t), {r: 1})

    lop = [ctx.left_op(mu(c)) for c in range(nb)]
    rop = [ctx.right_op(mu(c)) for c in range(nb)]
    bcache: dict = {}

    def bprod(c1, c2):
        key = (c1, c2)
        v = bcache.get(key)
        if v is None:
            (a1, r1), (a2, r2) = cols_dec[c1], cols_dec[c2]
            lists = [ctx.amul[x][y] for x, y in zip(a1, a2)] + [ctx.rmul[r1][r2]]
            acc: dict = {}
            for t, c in _expand(lists):
                k = _mixed(t[:-1], da) * dr + t[-1]
                acc[k] = acc.get(k, 0) + c
            v = bcache[key] = [(k, c) for k, c in acc.items() if f.reduce(c)]
        return v

    s_first = 1 if p % 2 == 0 else -1
    s_last = 1 if (q + p + 1) % 2 == 0 else -1
    data: dict = {}
    for cols in product(range(nb), repeat=q + 1):
        t_base = 0
        for j, c in enumerate(cols):
            t_base += Wt[j][c]
        rowdicts = [data.setdefault(t_base + m, {}) for m in range(dm)]
        # (-1)^p mu(col 0) . f(cols 1..q)
        s_base = 0
        for j in range(1, q + 1):
            s_base += Ws[j - 1][cols[j]]
        for mo, oprow in enumerate(lop[cols[0]]):
            rd = rowdicts[mo]
            for mi, c in oprow:
                col = s_base + mi
                rd[col] = rd.get(col, 0) + s_first * c
        # merged columns i, i+1
        for i in range(q):
            sign = 1 if (i + p + 1) % 2 == 0 else -1
            rest = 0
            for j in range(i):
                rest += Ws[j][cols[j]]
            for j in range(i + 2, q + 1):
                rest += Ws[j - 1][cols[j]]
            for k, c in bprod(cols[i], cols[i + 1]):
                s_base = rest + Ws[i][k]
                sc = sign * c
                for m in range(dm):
                    rd = rowdicts[m]
                    col = s_base + m
                    rd[col] = rd.get(col, 0) + sc
        # (-1)^(q+p+1) f(cols 0..q-1) . mu(col q)
        s_base = 0
        for j in range(q):
            s_base += Ws[j][cols[j]]
        for mo, oprow in enumerate(rop[cols[q]]):
            rd = rowdicts[mo]
            for mi, c in oprow:
                col = s_base + mi
                rd[col] = rd.get(col, 0) + s_last * c
    return SparseMatrix.from_rows(nrows, ncols, f, data)


# ---------------------------------------------------------------------------


@dataclass
class BigradedComplex:
    """Truncated bicomplex: spaces with p+q <= N, maps with source p+q <= N-1.

    ``vertical`` holds delta exactly as it will be used by the totalisation
    convention ``sign_rule`` ("as_is": D = d + v, "alternating": D = d + (-1)^p v).
    """

    N: int
    field: object
    spaces: dict
    d_mats: dict
    delta_mats: dict
    reduced: bool
    kind: str = "assoc"
    identities: dict = dc_field(default_factory=dict)

    def dim(self, p, q):
        return self.spaces.get((p, q), 0)

    def degrees(self, n):
        return [(p, n - p) for p in range(n + 1)]


def _zero(r, c, f):
    return SparseMatrix.zero(r, c, f)


def assemble(A, R=None, M=None, N: int = 4, reduced: bool = True, cap=None, check: bool = True) -> BigradedComplex:
    ctx = _data(A, R, M, cap)
    f = ctx.field
    dims = ctx.dims
    spaces = {}
    for n in range(N + 1):
        for p in range(n + 1):
            q = n - p
            spaces[(p, q)] = 0 if (reduced and q == 0 and p > 0) else space_dim((p, q), dims, ctx.cap)
    d_mats, delta_mats = {}, {}
    for n in range(N):
        for p in range(n + 1):
            q = n - p
            src = spaces[(p, q)]
            if src == 0 or spaces[(p + 1, q)] == 0:
                d_mats[(p, q)] = _zero(spaces[(p + 1, q)], src, f)
            else:
                d_mats[(p, q)] = horizontal_d(p, q, ctx)
            if src == 0 or spaces[(p, q + 1)] == 0:
                delta_mats[(p, q)] = _zero(spaces[(p, q + 1)], src, f)
            else:
                delta_mats[(p, q)] = vertical_delta(p, q, ctx)
    bc = BigradedComplex(N, f, spaces, d_mats, delta_mats, reduced)
    if check:
        check_identities(bc)
    return bc


def check_identities(bc: BigradedComplex, raise_on_failure: bool = True) -> dict:
    """Exact checks of d.d = 0, v.v = 0 and (anti)commutation inside the truncation."""
    res = {"dd": True, "vv": True, "commute": True, "anticommute": True, "failures": []}
    for (p, q), d1 in bc.d_mats.items():
        if (p + 1, q) in bc.d_mats:
            if not (bc.d_mats[(p + 1, q)] @ d1).is_zero():
                res["dd"] = False
                res["failures"].append(("dd", p, q))
    for (p, q), v1 in bc.delta_mats.items():
        if (p, q + 1) in bc.delta_mats:
            if not (bc.delta_mats[(p, q + 1)] @ v1).is_zero():
                res["vv"] = False
                res["failures"].append(("vv", p, q))
    for (p, q), d1 in bc.d_mats.items():
        if (p + 1, q) in bc.delta_mats and (p, q + 1) in bc.d_mats:
            x = bc.delta_mats[(p + 1, q)] @ d1
            y = bc.d_mats[(p, q + 1)] @ bc.delta_mats[(p, q)]
            if x != y:
                res["commute"] = False
            if not (x + y).is_zero():
                res["anticommute"] = False
    bc.identities = res
    if raise_on_failure and not (res["dd"] and res["vv"] and (res["commute"] or res["anticommute"])):
        raise BicomplexIdentityFailure(f"bicomplex identities fail: {res}")
    return res


@dataclass
class TotalComplex:
    """Total complex of a truncated bicomplex.

    Degree-n block layout: (0, n), (1, n-1), ..., (n, 0), i.e. ascending p.
    ``D[n]`` maps degree n to degree n+1 for n <= N-1.
    """

    N: int
    field: object
    dims: dict
    blocks: dict
    D: dict
    convention: str
    source: BigradedComplex | None = None

    def offset(self, p, q):
        n = p + q
        off = 0
        for pq, size in self.blocks[n]:
            if pq == (p, q):
                return off
            off += size
        raise KeyError((p, q))

    def split(self, n, vec: dict) -> dict:
        """Split a total degree-n vector into {(p, q): sparse block vector}."""
        out = {}
        off = 0
        for pq, size in self.blocks[n]:
            out[pq] = {k - off: v for k, v in vec.items() if off <= k < off + size}
            off += size
        return out

    def join(self, n, parts: dict) -> dict:
        out = {}
        off = 0
        for pq, size in self.blocks[n]:
            for k, v in parts.get(pq, {}).items():
                out[off + k] = v
            off += size
        return out


SIGN_RULES = ("as_is", "alternating")


def totalize(bc: BigradedComplex, conventions=SIGN_RULES) -> TotalComplex:
    f = bc.field
    blocks = {n: [((p, n - p), bc.dim(p, n - p)) for p in range(n + 1)] for n in range(bc.N + 1)}
    dims = {n: sum(s for _, s in blocks[n]) for n in blocks}
    for conv in conventions:
        D = {}
        for n in range(bc.N):
            parts = {}
            for p in range(n + 1):
                q = n - p
                parts[(p + 1, p)] = bc.d_mats[(p, q)]
                v = bc.delta_mats[(p, q)]
                if conv == "alternating" and p % 2:
                    v = -v
                parts[(p, p)] = v
            D[n] = block_matrix([s for _, s in blocks[n + 1]], [s for _, s in blocks[n]], parts, f)
        if all((D[n + 1] @ D[n]).is_zero() for n in range(bc.N - 1)):
            return TotalComplex(bc.N, f, dims, blocks, D, conv, bc)
    raise TotalizationSignFailure("no sign convention gives D o D = 0")
