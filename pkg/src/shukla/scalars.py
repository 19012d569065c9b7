"""Exact ground-field arithmetic over Q and prime fields F_p.

Internally every module works with *raw* values (``int`` or ``Fraction`` over
Q, canonical ``int`` residues over F_p) and a :class:`FieldSpec` that knows how
to combine them.  :class:`Scalar` is the checked, user-facing wrapper.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd


class FieldMismatch(ValueError):
    pass


class ScalarParseError(ValueError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class FieldSpec:
    kind: str = "Q"  # "Q" or "Fp"
    p: int | None = None

    def __post_init__(self):
        if self.kind == "Q":
            if self.p is not None:
                raise ValueError("Q takes no characteristic")
        elif self.kind == "Fp":
            if self.p is None or not is_prime(self.p):
                raise ValueError(f"Fp needs a prime, got {self.p!r}")
        else:
            raise ValueError(f"unknown field kind {self.kind!r}")

    # -- construction / naming -------------------------------------------
    @classmethod
    def parse(cls, text: str) -> "FieldSpec":
        t = text.strip()
        if t in ("Q", "QQ"):
            return QQ
        m = re.fullmatch(r"F[p]?[:_]?(\d+)", t)
        if m:
            return cls("Fp", int(m.group(1)))
        raise ScalarParseError(f"bad field syntax {text!r} (expected 'Q' or 'Fp:<prime>')")

    def __str__(self) -> str:
        return "Q" if self.kind == "Q" else f"Fp:{self.p}"

    @property
    def is_prime_field(self) -> bool:
        return self.kind == "Fp"

    @property
    def characteristic(self) -> int:
        return 0 if self.kind == "Q" else self.p

    # -- raw value arithmetic ----------------------------------------------
    def reduce(self, x):
        """Canonical form of a raw value (int, Fraction)."""
        if self.kind == "Fp":
            if isinstance(x, Fraction):
                return (x.numerator * pow(x.denominator, -1, self.p)) % self.p
            return x % self.p
        if isinstance(x, Fraction) and x.denominator == 1:
            return x.numerator
        return x

    def inv(self, x):
        if self.kind == "Fp":
            x %= self.p
            if x == 0:
                raise ZeroDivisionError("inverse of 0")
            return pow(x, -1, self.p)
        if x == 0:
            raise ZeroDivisionError("inverse of 0")
        return self.reduce(Fraction(1) / x)

    def div(self, x, y):
        return self.reduce(x * self.inv(y))

    def coerce(self, x):
        """Accept int, Fraction, Scalar or text and return a raw canonical value."""
        if isinstance(x, Scalar):
            if x.field != self:
                raise FieldMismatch(f"{x.field} vs {self}")
            return x.value
        if isinstance(x, str):
            return parse_scalar(x, self).value
        if isinstance(x, bool):
            x = int(x)
        if isinstance(x, (int, Fraction)):
            return self.reduce(x)
        raise TypeError(f"cannot coerce {type(x).__name__} to a field element")

    def render(self, x) -> str:
        x = self.reduce(x)
        return str(x)

    def scalar(self, x) -> "Scalar":
        return Scalar(self.coerce(x), self)


QQ = FieldSpec("Q")


def Fp(p: int) -> FieldSpec:
    return FieldSpec("Fp", p)


@dataclass(frozen=True)
class Scalar:
    value: object
    field: FieldSpec

    def __post_init__(self):
        object.__setattr__(self, "value", self.field.reduce(self.value))

    def _other(self, y):
        if isinstance(y, Scalar):
            if y.field != self.field:
                raise FieldMismatch(f"{self.field} vs {y.field}")
            return y.value
        return self.field.coerce(y)

    def __add__(self, y):
        return Scalar(self.value + self._other(y), self.field)

    __radd__ = __add__

    def __sub__(self, y):
        return Scalar(self.value - self._other(y), self.field)

    def __rsub__(self, y):
        return Scalar(self._other(y) - self.value, self.field)

    def __mul__(self, y):
        return Scalar(self.value * self._other(y), self.field)

    __rmul__ = __mul__

    def __neg__(self):
        return Scalar(-self.value, self.field)

    def inv(self) -> "Scalar":
        return Scalar(self.field.inv(self.value), self.field)

    def __truediv__(self, y):
        return self * Scalar(self._other(y), self.field).inv()

    def __eq__(self, y):
        if isinstance(y, Scalar):
            return self.field == y.field and self.value == y.value
        try:
            return self.value == self.field.coerce(y)
        except (TypeError, ScalarParseError):
            return NotImplemented

    def __hash__(self):
        return hash((self.value, self.field))

    def __bool__(self):
        return self.value != 0

    def __str__(self):
        return self.field.render(self.value)

    def __repr__(self):
        return f"Scalar({self}, {self.field})"


def scalar_arith(op: str, x: Scalar, y: Scalar | None = None) -> Scalar:
    if op in ("add", "sub", "mul"):
        if y is None:
            raise TypeError(f"{op} is binary")
        if x.field != y.field:
            raise FieldMismatch(f"{x.field} vs {y.field}")
        return {"add": x.__add__, "sub": x.__sub__, "mul": x.__mul__}[op](y)
    if op == "neg":
        return -x
    if op == "inv":
        return x.inv()
    raise ValueError(f"unknown op {op!r}")


_SCALAR_RE = re.compile(r"\s*([+-]?)\s*(\d+)\s*(?:/\s*([+-]?\d+))?\s*")


def parse_scalar(text: str, field: FieldSpec) -> Scalar:
    m = _SCALAR_RE.fullmatch(str(text))
    if not m:
        raise ScalarParseError(f"not a scalar: {text!r}")
    sign, num, den = m.groups()
    n = int(num) * (-1 if sign == "-" else 1)
    if den is None:
        return Scalar(n, field)
    d = int(den)
    if d == 0:
        raise ZeroDivisionError(f"zero denominator in {text!r}")
    if field.is_prime_field:
        if d % field.p == 0:
            raise ZeroDivisionError(f"denominator of {text!r} vanishes mod {field.p}")
        return Scalar(n * pow(d, -1, field.p), field)
    return Scalar(Fraction(n, d), field)


def lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b
