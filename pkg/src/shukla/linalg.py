"""Exact sparse matrices and incremental Gauss-Jordan elimination.

Rows are ``dict[col, value]`` with no zero entries.  Over F_p the pivot of every
stored row is normalised to 1.  Over Q stored rows are primitive integer vectors
with a positive pivot: elimination is fraction-free (cross-multiplication
followed by removal of the row content), so no rational numbers appear until a
kernel or solution vector is read off.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import reduce
from math import gcd

from .scalars import FieldSpec, lcm


class SizeCapExceeded(RuntimeError):
    pass


DEFAULT_CAP = 5_000_000


def check_cap(n: int, cap: int | None = None, what: str = "space") -> int:
    cap = DEFAULT_CAP if cap is None else cap
    if n > cap:
        raise SizeCapExceeded(f"{what} has {n} basis elements (cap {cap})")
    return n


@dataclass
class SparseMatrix:
    rows: int
    cols: int
    field: FieldSpec
    data: dict = dc_field(default_factory=dict)  # row -> {col: value}

    # -- constructors -------------------------------------------------------
    @classmethod
    def from_entries(cls, rows, cols, field, entries):
        data: dict = {}
        for r, c, v in entries:
            if not (0 <= r < rows and 0 <= c < cols):
                raise IndexError(f"entry ({r},{c}) outside {rows}x{cols}")
            row = data.setdefault(r, {})
            row[c] = row.get(c, 0) + v
        return cls(rows, cols, field, _clean(data, field))

    @classmethod
    def from_rows(cls, rows, cols, field, data):
        return cls(rows, cols, field, _clean(data, field))

    @classmethod
    def from_dense(cls, dense, field, cols=None):
        cols = len(dense[0]) if dense else (cols or 0)
        entries = ((i, j, field.coerce(v)) for i, r in enumerate(dense) for j, v in enumerate(r) if v)
        return cls.from_entries(len(dense), cols, field, entries)

    @classmethod
    def identity(cls, n, field):
        return cls(n, n, field, {i: {i: 1} for i in range(n)})

    @classmethod
    def zero(cls, rows, cols, field):
        return cls(rows, cols, field, {})

    @classmethod
    def from_columns(cls, rows, field, columns):
        """Matrix whose j-th column is the sparse vector ``columns[j]``."""
        data: dict = {}
        for j, vec in enumerate(columns):
            for i, v in vec.items():
                data.setdefault(i, {})[j] = v
        return cls.from_rows(rows, len(columns), field, data)

    # -- views ----------------------------------------------------------------
    def entries(self):
        return [(r, c, self.data[r][c]) for r in sorted(self.data) for c in sorted(self.data[r])]

    @property
    def nnz(self) -> int:
        return sum(len(r) for r in self.data.values())

    @property
    def shape(self):
        return (self.rows, self.cols)

    def is_zero(self) -> bool:
        return not self.data

    def to_dense(self):
        out = [[0] * self.cols for _ in range(self.rows)]
        for r, row in self.data.items():
            for c, v in row.items():
                out[r][c] = v
        return out

    def column_vectors(self):
        cols = [dict() for _ in range(self.cols)]
        for r, row in self.data.items():
            for c, v in row.items():
                cols[c][r] = v
        return cols

    def transpose(self) -> "SparseMatrix":
        data: dict = {}
        for r, row in self.data.items():
            for c, v in row.items():
                data.setdefault(c, {})[r] = v
        return SparseMatrix(self.cols, self.rows, self.field, data)

    # -- algebra ----------------------------------------------------------
    def __matmul__(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        if not self.field.is_prime_field:
            return self._matmul_q(other)
        odata = other.data
        out: dict = {}
        for r, row in self.data.items():
            acc: dict = {}
            for k, v in row.items():
                orow = odata.get(k)
                if orow:
                    for c, w in orow.items():
                        acc[c] = acc.get(c, 0) + v * w
            if acc:
                out[r] = acc
        return SparseMatrix.from_rows(self.rows, other.cols, self.field, out)

    def _scaled(self):
        """(den, integer rows) with self = rows / den."""
        den = 1
        for row in self.data.values():
            for v in row.values():
                if isinstance(v, Fraction):
                    den = lcm(den, v.denominator)
        if den == 1:
            return 1, self.data
        return den, {r: {c: int(v * den) for c, v in row.items()} for r, row in self.data.items()}

    def _matmul_q(self, other):
        d1, left = self._scaled()
        d2, right = other._scaled()
        out: dict = {}
        for r, row in left.items():
            acc: dict = {}
            for k, v in row.items():
                orow = right.get(k)
                if orow:
                    for c, w in orow.items():
                        acc[c] = acc.get(c, 0) + v * w
            acc = {c: x for c, x in acc.items() if x}
            if acc:
                out[r] = acc
        den = d1 * d2
        if den != 1:
            out = {r: {c: Fraction(x, den) for c, x in row.items()} for r, row in out.items()}
        return SparseMatrix.from_rows(self.rows, other.cols, self.field, out)

    def __add__(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        data = {r: dict(row) for r, row in self.data.items()}
        for r, row in other.data.items():
            tgt = data.setdefault(r, {})
            for c, v in row.items():
                tgt[c] = tgt.get(c, 0) + v
        return SparseMatrix.from_rows(self.rows, self.cols, self.field, data)

    def scale(self, s) -> "SparseMatrix":
        return SparseMatrix.from_rows(
            self.rows, self.cols, self.field, {r: {c: s * v for c, v in row.items()} for r, row in self.data.items()}
        )

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def apply(self, vec: dict) -> dict:
        """Matrix times sparse column vector."""
        out: dict = {}
        for r, row in self.data.items():
            s = 0
            for c, v in row.items():
                w = vec.get(c)
                if w:
                    s += v * w
            s = self.field.reduce(s)
            if s:
                out[r] = s
        return out

    def __eq__(self, other):
        if not isinstance(other, SparseMatrix):
            return NotImplemented
        return self.shape == other.shape and self.field == other.field and self.data == other.data

    # -- export -------------------------------------------------------------
    def to_json(self) -> dict:
        f = self.field
        return {
            "rows": self.rows,
            "cols": self.cols,
            "field": str(f),
            "entries": [[r, c, f.render(v)] for r, c, v in self.entries()],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "SparseMatrix":
        f = FieldSpec.parse(obj["field"])
        return cls.from_entries(obj["rows"], obj["cols"], f, ((r, c, f.coerce(v)) for r, c, v in obj["entries"]))

    def to_matrix_market(self) -> str:
        lines = ["%%MatrixMarket matrix coordinate general", f"% field {self.field}"]
        ents = self.entries()
        lines.append(f"{self.rows} {self.cols} {len(ents)}")
        lines += [f"{r + 1} {c + 1} {self.field.render(v)}" for r, c, v in ents]
        return "\n".join(lines) + "\n"


def _clean(data: dict, field: FieldSpec) -> dict:
    out = {}
    red = field.reduce
    for r, row in data.items():
        nrow = {}
        for c, v in row.items():
            v = red(v)
            if v:
                nrow[c] = v
        if nrow:
            out[r] = nrow
    return out


def block_matrix(row_sizes, col_sizes, blocks: dict, field: FieldSpec) -> SparseMatrix:
    """Assemble ``blocks[(i, j)]`` (SparseMatrix) into one matrix."""
    roff = [0]
    for s in row_sizes:
        roff.append(roff[-1] + s)
    coff = [0]
    for s in col_sizes:
        coff.append(coff[-1] + s)
    data: dict = {}
    for (i, j), blk in blocks.items():
        if blk.shape != (row_sizes[i], col_sizes[j]):
            raise ValueError(f"block {(i, j)} has shape {blk.shape}")
        for r, row in blk.data.items():
            tgt = data.setdefault(roff[i] + r, {})
            for c, v in row.items():
                cc = coff[j] + c
                tgt[cc] = tgt.get(cc, 0) + v
    return SparseMatrix.from_rows(roff[-1], coff[-1], field, data)


# ---------------------------------------------------------------------------
# elimination


def _content(row: dict) -> int:
    return reduce(gcd, row.values(), 0)


def _integral(row: dict) -> dict:
    """Scale a rational row to a primitive integer row with positive leading entry."""
    den = 1
    for v in row.values():
        if isinstance(v, Fraction):
            den = lcm(den, v.denominator)
    if den != 1:
        row = {c: int(v * den) for c, v in row.items()}
    else:
        row = {c: int(v) for c, v in row.items()}
    g = _content(row)
    lead = row[min(row)]
    if lead < 0:
        g = -g
    if g != 1:
        row = {c: v // g for c, v in row.items()}
    return row


class RowReducer:
    """Incremental reduced row echelon form.

    ``pivots`` maps pivot column -> stored row; every stored row is zero in all
    other pivot columns.  Pivot of a new row = its smallest column.
    """

    def __init__(self, field: FieldSpec):
        self.field = field
        self.pivots: dict = {}

    def __len__(self):
        return len(self.pivots)

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, row: dict) -> dict:
        """Reduce a copy of ``row`` against the stored rows (result not stored).

        Over Q the result is a primitive integer multiple of the true residue.
        """
        row = {c: v for c, v in row.items() if v}
        if not row:
            return row
        if self.field.is_prime_field:
            p = self.field.p
            row = {c: v % p for c, v in row.items() if v % p}
            for c in [c for c in row if c in self.pivots]:
                v = row.get(c)
                if not v:
                    continue
                for j, w in self.pivots[c].items():
                    nv = (row.get(j, 0) - v * w) % p
                    if nv:
                        row[j] = nv
                    else:
                        del row[j]
            return row
        row = _integral(row)
        for c in [c for c in row if c in self.pivots]:
            v = row.get(c)
            if not v:
                continue
            prow = self.pivots[c]
            P = prow[c]
            g = gcd(P, v)
            s, t = P // g, v // g
            if s != 1:
                row = {j: s * w for j, w in row.items()}
            for j, w in prow.items():
                nv = row.get(j, 0) - t * w
                if nv:
                    row[j] = nv
                else:
                    del row[j]
        if row:
            row = _integral(row)
        return row

    def insert(self, row: dict):
        """Add a row; return its pivot column, or None if it was dependent."""
        row = self.reduce(row)
        if not row:
            return None
        c0 = min(row)
        if self.field.is_prime_field:
            p = self.field.p
            inv = pow(row[c0], -1, p)
            if inv != 1:
                row = {j: v * inv % p for j, v in row.items()}
            for prow in self.pivots.values():
                v = prow.get(c0)
                if v:
                    for j, w in row.items():
                        nv = (prow.get(j, 0) - v * w) % p
                        if nv:
                            prow[j] = nv
                        else:
                            del prow[j]
        else:
            P = row[c0]
            for pc in list(self.pivots):
                prow = self.pivots[pc]
                v = prow.get(c0)
                if v:
                    g = gcd(P, v)
                    s, t = P // g, v // g
                    nrow = {j: s * w for j, w in prow.items()} if s != 1 else dict(prow)
                    for j, w in row.items():
                        nv = nrow.get(j, 0) - t * w
                        if nv:
                            nrow[j] = nv
                        else:
                            del nrow[j]
                    self.pivots[pc] = _integral(nrow)
        self.pivots[c0] = row
        return c0

    def contains(self, vec: dict) -> bool:
        return not self.reduce(vec)

    def basis(self):
        """Stored rows in pivot order, as field vectors (pivot-normalised)."""
        return [self._normalised(c) for c in sorted(self.pivots)]

    def _normalised(self, c):
        row = self.pivots[c]
        if self.field.is_prime_field:
            return dict(row)
        P = row[c]
        return {j: self.field.reduce(Fraction(v, P)) for j, v in row.items()}

    def kernel_basis(self, ncols: int):
        """Basis of {x : row·x = 0 for all stored rows}, one vector per free column."""
        colidx: dict = {}
        for pc, row in self.pivots.items():
            for j, v in row.items():
                if j != pc:
                    colidx.setdefault(j, []).append(pc)
        out = []
        prime = self.field.is_prime_field
        for f in range(ncols):
            if f in self.pivots:
                continue
            hits = colidx.get(f, ())
            if prime:
                p = self.field.p
                vec = {f: 1}
                for pc in hits:
                    vec[pc] = (-self.pivots[pc][f]) % p
            else:
                L = 1
                for pc in hits:
                    P = self.pivots[pc][pc]
                    L = lcm(L, P // gcd(P, self.pivots[pc][f]))
                vec = {f: L}
                for pc in hits:
                    row = self.pivots[pc]
                    vec[pc] = -row[f] * L // row[pc]
            out.append(vec)
        return out


def rank(mat: SparseMatrix) -> int:
    rr = RowReducer(mat.field)
    src = mat if mat.rows <= mat.cols else mat.transpose()
    for r in sorted(src.data):
        rr.insert(src.data[r])
    return rr.rank


def rank_kernel(mat: SparseMatrix):
    """Exact rank and a kernel basis (list of sparse column vectors)."""
    rr = RowReducer(mat.field)
    for r in sorted(mat.data):
        rr.insert(mat.data[r])
    return rr.rank, rr.kernel_basis(mat.cols)


def kernel(mat: SparseMatrix):
    return rank_kernel(mat)[1]


def image_basis(mat: SparseMatrix):
    """Echelon basis of the column space (sparse vectors of length ``mat.rows``)."""
    rr = RowReducer(mat.field)
    for col in mat.column_vectors():
        if col:
            rr.insert(col)
    return rr.basis()


def solve(mat: SparseMatrix, rhs: dict):
    """Return one x with mat·x = rhs (free variables 0), or None if inconsistent."""
    f = mat.field
    n = mat.cols
    rr = RowReducer(f)
    for r in sorted(set(mat.data) | set(rhs)):
        row = dict(mat.data.get(r, {}))
        b = f.reduce(rhs.get(r, 0))
        if b:
            row[n] = b
        if row:
            rr.insert(row)
    if n in rr.pivots:
        return None
    x = {}
    for pc, row in rr.pivots.items():
        b = row.get(n)
        if b:
            x[pc] = f.reduce(b if f.is_prime_field else Fraction(b, row[pc]))
    return x


class Subspace:
    """Span of sparse vectors with membership tests."""

    def __init__(self, field: FieldSpec, vectors=()):
        self.rr = RowReducer(field)
        for v in vectors:
            self.rr.insert(v)

    @property
    def dim(self) -> int:
        return self.rr.rank

    def add(self, vec) -> bool:
        return self.rr.insert(vec) is not None

    def contains(self, vec) -> bool:
        return self.rr.contains(vec)

    def reduce(self, vec) -> dict:
        return self.rr.reduce(vec)

    def basis(self):
        return self.rr.basis()

    def contains_all(self, vectors) -> bool:
        return all(self.contains(v) for v in vectors)


def vec_add(u: dict, v: dict, field: FieldSpec, s=1) -> dict:
    """u + s·v, canonical."""
    out = dict(u)
    for k, w in v.items():
        out[k] = out.get(k, 0) + s * w
    return {k: x for k, x in ((k, field.reduce(x)) for k, x in out.items()) if x}


def vec_scale(v: dict, s, field: FieldSpec) -> dict:
    return {k: x for k, x in ((k, field.reduce(s * w)) for k, w in v.items()) if x}
