"""Bases and flat indexing for K^{pq} = Hom(A^{(x)pq} (x) R^{(x)q}, M) and the Lie analogue.

Flat index of a basis cochain: the argument list (a_11, ..., a_1q, a_21, ..., a_pq,
r_1, ..., r_q, m) read as a mixed-radix number, leftmost digit most significant.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from itertools import combinations
from math import comb

from .linalg import check_cap
from .scalars import FieldSpec


class IndexOutOfRange(IndexError):
    pass


@dataclass(frozen=True, order=True)
class BiDegree:
    p: int
    q: int

    def __post_init__(self):
        if self.p < 0 or self.q < 0:
            raise ValueError("bidegree must be nonnegative")

    @property
    def total(self):
        return self.p + self.q


def _bideg(degree) -> BiDegree:
    return degree if isinstance(degree, BiDegree) else BiDegree(*degree)


def space_dim(degree, dims, cap: int | None = None) -> int:
    d = _bideg(degree)
    da, dr, dm = dims
    return check_cap(da ** (d.p * d.q) * dr ** d.q * dm, cap, f"K^{{{d.p},{d.q}}}")


def encode_index(a_indices, r_indices, m_index, degree, dims) -> int:
    d = _bideg(degree)
    da, dr, dm = dims
    if len(a_indices) != d.p * d.q or len(r_indices) != d.q:
        raise IndexOutOfRange("wrong number of arguments for this bidegree")
    x = 0
    for i in a_indices:
        if not 0 <= i < da:
            raise IndexOutOfRange(f"A index {i} out of range")
        x = x * da + i
    for i in r_indices:
        if not 0 <= i < dr:
            raise IndexOutOfRange(f"R index {i} out of range")
        x = x * dr + i
    if not 0 <= m_index < dm:
        raise IndexOutOfRange(f"M index {m_index} out of range")
    return x * dm + m_index


def decode_index(flat: int, degree, dims):
    d = _bideg(degree)
    da, dr, dm = dims
    if not 0 <= flat < da ** (d.p * d.q) * dr ** d.q * dm:
        raise IndexOutOfRange(f"flat index {flat} out of range")
    flat, m = divmod(flat, dm)
    r = []
    for _ in range(d.q):
        flat, x = divmod(flat, dr)
        r.append(x)
    a = []
    for _ in range(d.p * d.q):
        flat, x = divmod(flat, da)
        a.append(x)
    return tuple(reversed(a)), tuple(reversed(r)), m


def lie_space_dim(p: int, q: int, dims, cap: int | None = None) -> int:
    da, dl, dm = dims
    return check_cap(comb(da ** p * dl, q) * dm, cap, f"Lie K^{{{p},{q}}}")


@lru_cache(maxsize=None)
def exterior_basis(n: int, q: int):
    """Strictly increasing q-tuples from range(n), lexicographic."""
    return tuple(combinations(range(n), q))


@lru_cache(maxsize=None)
def exterior_index(n: int, q: int):
    return {t: i for i, t in enumerate(exterior_basis(n, q))}


def sort_sign(t):
    """(sign, sorted tuple) of a sequence, sign 0 if it has a repeat."""
    t = list(t)
    sign = 1
    # insertion sort counting transpositions; tuples are short
    for i in range(1, len(t)):
        j = i
        while j > 0 and t[j - 1] > t[j]:
            t[j - 1], t[j] = t[j], t[j - 1]
            sign = -sign
            j -= 1
        if j > 0 and t[j - 1] == t[j]:
            return 0, None
    return sign, tuple(t)


@dataclass
class Cochain:
    """An element of K^{pq}, stored sparsely by flat index."""

    degree: BiDegree
    dims: tuple
    field: FieldSpec
    coeffs: dict = dc_field(default_factory=dict)

    def __post_init__(self):
        self.degree = _bideg(self.degree)
        self.dims = tuple(self.dims)
        n = self.size
        red = self.field.reduce
        clean = {}
        for k, v in self.coeffs.items():
            if not 0 <= k < n:
                raise IndexOutOfRange(f"flat index {k} outside K^{{{self.degree.p},{self.degree.q}}} of size {n}")
            v = red(v)
            if v:
                clean[k] = v
        self.coeffs = clean

    @property
    def size(self):
        return space_dim(self.degree, self.dims)

    def dense(self):
        out = [0] * self.size
        for k, v in self.coeffs.items():
            out[k] = v
        return out

    @classmethod
    def from_dense(cls, degree, dims, field, values):
        return cls(degree, dims, field, {i: v for i, v in enumerate(values) if v})

    @classmethod
    def zero(cls, degree, dims, field):
        return cls(degree, dims, field, {})

    def value(self, a_indices, r_indices):
        """Coefficient vector in M of f(a..., r...) on basis arguments."""
        dm = self.dims[2]
        base = encode_index(a_indices, r_indices, 0, self.degree, self.dims)
        return [self.coeffs.get(base + m, 0) for m in range(dm)]

    def __add__(self, other):
        assert self.degree == other.degree and self.dims == other.dims
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, 0) + v
        return Cochain(self.degree, self.dims, self.field, out)

    def __neg__(self):
        return Cochain(self.degree, self.dims, self.field, {k: -v for k, v in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __eq__(self, other):
        return (
            isinstance(other, Cochain)
            and self.degree == other.degree
            and self.dims == other.dims
            and self.field == other.field
            and self.coeffs == other.coeffs
        )

    def is_zero(self):
        return not self.coeffs

    def to_json(self) -> dict:
        f = self.field
        return {
            "degree": [self.degree.p, self.degree.q],
            "dims": list(self.dims),
            "field": str(f),
            "entries": [[k, f.render(v)] for k, v in sorted(self.coeffs.items())],
        }

    @classmethod
    def from_json(cls, obj, field: FieldSpec | None = None):
        f = FieldSpec.parse(obj["field"]) if "field" in obj else field
        if f is None:
            raise ValueError("cochain JSON needs a field")
        return cls(BiDegree(*obj["degree"]), tuple(obj["dims"]), f, {int(k): f.coerce(v) for k, v in obj["entries"]})
