"""Structure-constant presentations of A, R, M, L and Lie modules.

Conventions (all tables are dense nested lists of raw field values):

* ``mult[i][j][k]``      e_i e_j = sum_k mult[i][j][k] e_k           (A and R)
* ``a_action[i][j][k]``  a_i . r_j = sum_k a_action[i][j][k] r_k     (A on R, A on L, A on a Lie module)
* ``left[i][j][k]``      r_i . m_j = sum_k left[i][j][k] m_k
* ``right[j][i][k]``     m_j . r_i = sum_k right[j][i][k] m_k
* ``bracket[i][j][k]``   [x_i, x_j] = sum_k bracket[i][j][k] x_k
* ``action[i][j][k]``    x_i . m_j = sum_k action[i][j][k] m_k

The A-action on an associative bimodule is never stored: a.m := (a.1_R)m and
m.a := m(a.1_R).
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from functools import cached_property

from .scalars import QQ, FieldSpec


class ShapeError(ValueError):
    pass


class ValidationFailure(ValueError):
    def __init__(self, report):
        super().__init__(str(report))
        self.report = report


@dataclass(frozen=True)
class Violation:
    identity: str
    indices: tuple
    detail: str = ""

    def __str__(self):
        return f"{self.identity} fails at {self.indices}" + (f": {self.detail}" if self.detail else "")


@dataclass
class ValidationReport:
    subject: str
    violations: list = dc_field(default_factory=list)
    limit: int = 200

    @property
    def ok(self) -> bool:
        return not self.violations

    def add(self, identity, indices, detail=""):
        if len(self.violations) < self.limit:
            self.violations.append(Violation(identity, tuple(indices), detail))

    def extend(self, other: "ValidationReport"):
        for v in other.violations:
            if len(self.violations) < self.limit:
                self.violations.append(v)

    def __str__(self):
        if self.ok:
            return f"{self.subject}: valid"
        lines = [f"{self.subject}: {len(self.violations)} violation(s)"]
        lines += ["  " + str(v) for v in self.violations]
        return "\n".join(lines)


# ---------------------------------------------------------------------------
# small dense helpers on raw vectors


def _sparse_table(field, table):
    """table[i][j] (a vector) -> tuple of ((k, c), ...) with c != 0."""
    red = field.reduce
    return tuple(
        tuple(tuple((k, red(c)) for k, c in enumerate(vec) if red(c)) for vec in row) for row in table
    )


def _vec_eq(field, u, v):
    return all(field.reduce(a - b) == 0 for a, b in zip(u, v))


def _combine(field, n, terms):
    """sum c * vec for (c, vec) in terms -> dense length-n vector."""
    out = [0] * n
    for c, vec in terms:
        if c:
            for k, x in enumerate(vec):
                if x:
                    out[k] += c * x
    return [field.reduce(x) for x in out]


def _basis(n, i):
    v = [0] * n
    v[i] = 1
    return v


def _bilinear(field, table, n_out, u, v):
    out = [0] * n_out
    for i, x in enumerate(u):
        if not x:
            continue
        for j, y in enumerate(v):
            if not y:
                continue
            for k, c in enumerate(table[i][j]):
                if c:
                    out[k] += x * y * c
    return [field.reduce(t) for t in out]


def _fmt(vec):
    return "[" + ", ".join(str(x) for x in vec) + "]"


# ---------------------------------------------------------------------------
# presentation types


@dataclass(eq=False)
class CommutativeAlgebraPres:
    field: FieldSpec
    dim: int
    mult: list
    unit: list
    labels: list | None = None
    characters: list = dc_field(default_factory=list)  # known algebra maps A -> K

    kind = "commutative"

    def __post_init__(self):
        _check_table(self.mult, (self.dim, self.dim, self.dim), "mult")
        _check_vec(self.unit, self.dim, "unit")
        if self.labels is None:
            self.labels = [f"a{i}" for i in range(self.dim)]

    @cached_property
    def sp_mult(self):
        return _sparse_table(self.field, self.mult)

    def mul(self, u, v):
        return _bilinear(self.field, self.mult, self.dim, u, v)

    def basis(self, i):
        return _basis(self.dim, i)


@dataclass(eq=False)
class AssocAlgebraPres:
    field: FieldSpec
    dim: int
    mult: list
    unit: list
    a_action: list
    labels: list | None = None
    characters: list = dc_field(default_factory=list)  # known algebra maps R -> K

    kind = "associative"

    def __post_init__(self):
        _check_table(self.mult, (self.dim, self.dim, self.dim), "mult")
        _check_vec(self.unit, self.dim, "unit")
        if not self.a_action or len(self.a_action[0]) != self.dim:
            raise ShapeError("a_action must be dimA x dimR x dimR")
        _check_table(self.a_action, (len(self.a_action), self.dim, self.dim), "a_action")
        if self.labels is None:
            self.labels = [f"r{i}" for i in range(self.dim)]

    @property
    def dim_a(self):
        return len(self.a_action)

    @cached_property
    def sp_mult(self):
        return _sparse_table(self.field, self.mult)

    @cached_property
    def sp_act(self):
        return _sparse_table(self.field, self.a_action)

    def mul(self, u, v):
        return _bilinear(self.field, self.mult, self.dim, u, v)

    def act(self, a, r):
        """a . r for vectors a (in A) and r (in R)."""
        return _bilinear(self.field, self.a_action, self.dim, a, r)

    def image_of(self, a):
        """a . 1_R."""
        return self.act(a, self.unit)

    def basis(self, i):
        return _basis(self.dim, i)


@dataclass(eq=False)
class BimodulePres:
    field: FieldSpec
    dim: int
    left: list
    right: list
    labels: list | None = None

    kind = "bimodule"

    def __post_init__(self):
        if self.left and len(self.left[0]) != self.dim:
            raise ShapeError("left must be dimR x dimM x dimM")
        _check_table(self.left, (len(self.left), self.dim, self.dim), "left")
        _check_table(self.right, (self.dim, len(self.left), self.dim), "right")
        if self.labels is None:
            self.labels = [f"m{i}" for i in range(self.dim)]

    @property
    def dim_r(self):
        return len(self.left)

    @cached_property
    def left_mats(self):
        """left_mats[i][k][j]: matrix of m -> r_i m (column j = image of m_j)."""
        n = self.dim
        return [[[self.left[i][j][k] for j in range(n)] for k in range(n)] for i in range(self.dim_r)]

    @cached_property
    def right_mats(self):
        n = self.dim
        return [[[self.right[j][i][k] for j in range(n)] for k in range(n)] for i in range(self.dim_r)]

    def lmul(self, r, m):
        return _bilinear(self.field, self.left, self.dim, r, m)

    def rmul(self, m, r):
        return _bilinear(self.field, self.right, self.dim, m, r)

    def left_matrix(self, r):
        """Dense matrix of m -> r.m for an R-vector r."""
        return _lin_comb_mats(self.field, self.left_mats, r, self.dim)

    def right_matrix(self, r):
        return _lin_comb_mats(self.field, self.right_mats, r, self.dim)


@dataclass(eq=False)
class LieAlgebraPres:
    field: FieldSpec
    dim: int
    bracket: list
    a_action: list
    labels: list | None = None

    kind = "lie"

    def __post_init__(self):
        _check_table(self.bracket, (self.dim, self.dim, self.dim), "bracket")
        if not self.a_action or len(self.a_action[0]) != self.dim:
            raise ShapeError("a_action must be dimA x dimL x dimL")
        _check_table(self.a_action, (len(self.a_action), self.dim, self.dim), "a_action")
        if self.labels is None:
            self.labels = [f"x{i}" for i in range(self.dim)]

    @property
    def dim_a(self):
        return len(self.a_action)

    @cached_property
    def sp_bracket(self):
        return _sparse_table(self.field, self.bracket)

    @cached_property
    def sp_act(self):
        return _sparse_table(self.field, self.a_action)

    def br(self, u, v):
        return _bilinear(self.field, self.bracket, self.dim, u, v)

    def act(self, a, x):
        return _bilinear(self.field, self.a_action, self.dim, a, x)

    def basis(self, i):
        return _basis(self.dim, i)


@dataclass(eq=False)
class LieModulePres:
    field: FieldSpec
    dim: int
    action: list
    a_action: list
    labels: list | None = None

    kind = "lie_module"

    def __post_init__(self):
        if self.action and len(self.action[0]) != self.dim:
            raise ShapeError("action must be dimL x dimM x dimM")
        _check_table(self.action, (len(self.action), self.dim, self.dim), "action")
        if self.a_action and len(self.a_action[0]) != self.dim:
            raise ShapeError("a_action must be dimA x dimM x dimM")
        _check_table(self.a_action, (len(self.a_action), self.dim, self.dim), "a_action")
        if self.labels is None:
            self.labels = [f"m{i}" for i in range(self.dim)]

    @property
    def dim_l(self):
        return len(self.action)

    @property
    def dim_a(self):
        return len(self.a_action)

    def act(self, x, m):
        return _bilinear(self.field, self.action, self.dim, x, m)

    def a_act(self, a, m):
        return _bilinear(self.field, self.a_action, self.dim, a, m)

    @cached_property
    def action_mats(self):
        n = self.dim
        return [[[self.action[i][j][k] for j in range(n)] for k in range(n)] for i in range(self.dim_l)]

    @cached_property
    def a_mats(self):
        n = self.dim
        return [[[self.a_action[i][j][k] for j in range(n)] for k in range(n)] for i in range(self.dim_a)]


def _lin_comb_mats(field, mats, coeffs, n):
    out = [[0] * n for _ in range(n)]
    for c, mat in zip(coeffs, mats):
        if c:
            for k in range(n):
                for j in range(n):
                    if mat[k][j]:
                        out[k][j] += c * mat[k][j]
    return [[field.reduce(x) for x in row] for row in out]


def _check_vec(vec, n, name):
    if not isinstance(vec, (list, tuple)) or len(vec) != n:
        raise ShapeError(f"{name} must have length {n}")


def _check_table(table, shape, name):
    a, b, c = shape
    if not isinstance(table, (list, tuple)) or len(table) != a:
        raise ShapeError(f"{name}: expected {a} rows, got {len(table) if isinstance(table, (list, tuple)) else table!r}")
    for i, row in enumerate(table):
        if not isinstance(row, (list, tuple)) or len(row) != b:
            raise ShapeError(f"{name}[{i}]: expected {b} entries")
        for j, vec in enumerate(row):
            if not isinstance(vec, (list, tuple)) or len(vec) != c:
                raise ShapeError(f"{name}[{i}][{j}]: expected a vector of length {c}")


# ---------------------------------------------------------------------------
# validation


def validate_commutative(A: CommutativeAlgebraPres) -> ValidationReport:
    rep = ValidationReport("A (commutative algebra)")
    f, n = A.field, A.dim
    E = [A.basis(i) for i in range(n)]
    for i, j in itertools.product(range(n), repeat=2):
        if not _vec_eq(f, A.mult[i][j], A.mult[j][i]):
            rep.add("commutativity", (i, j))
    for i, j, k in itertools.product(range(n), repeat=3):
        lhs = A.mul(A.mult[i][j], E[k])
        rhs = A.mul(E[i], A.mult[j][k])
        if not _vec_eq(f, lhs, rhs):
            rep.add("associativity", (i, j, k), f"{_fmt(lhs)} != {_fmt(rhs)}")
    for i in range(n):
        if not _vec_eq(f, A.mul(A.unit, E[i]), E[i]):
            rep.add("left unit", (i,))
        if not _vec_eq(f, A.mul(E[i], A.unit), E[i]):
            rep.add("right unit", (i,))
    return rep


def validate_assoc(R: AssocAlgebraPres, A: CommutativeAlgebraPres | None = None) -> ValidationReport:
    rep = ValidationReport("R (associative A-algebra)")
    f, n = R.field, R.dim
    E = [R.basis(i) for i in range(n)]
    for i, j, k in itertools.product(range(n), repeat=3):
        lhs = R.mul(R.mult[i][j], E[k])
        rhs = R.mul(E[i], R.mult[j][k])
        if not _vec_eq(f, lhs, rhs):
            rep.add("associativity", (i, j, k), f"{_fmt(lhs)} != {_fmt(rhs)}")
    for i in range(n):
        if not _vec_eq(f, R.mul(R.unit, E[i]), E[i]):
            rep.add("left unit", (i,))
        if not _vec_eq(f, R.mul(E[i], R.unit), E[i]):
            rep.add("right unit", (i,))
    if A is None:
        return rep
    if A.dim != R.dim_a:
        raise ShapeError(f"a_action has {R.dim_a} rows but dim A = {A.dim}")
    _module_axioms(rep, f, A, R.dim, R.a_action, "A-action on R")
    na = A.dim
    for a in range(na):
        ea = A.basis(a)
        for i, j in itertools.product(range(n), repeat=2):
            rs = R.mult[i][j]
            x = R.act(ea, rs)
            y = R.mul(R.act(ea, E[i]), E[j])
            z = R.mul(E[i], R.act(ea, E[j]))
            if not (_vec_eq(f, x, y) and _vec_eq(f, x, z)):
                rep.add("A acts centrally: a(rs)=(ar)s=r(as)", (a, i, j))
    return rep


def _module_axioms(rep, f, A, n, table, what):
    """Unital, associative left A-module structure given by ``table``."""
    E = [_basis(n, i) for i in range(n)]
    for j in range(n):
        v = _bilinear(f, table, n, A.unit, E[j])
        if not _vec_eq(f, v, E[j]):
            rep.add(f"{what}: 1_A acts as identity", (j,))
    na = A.dim
    for a, b, j in itertools.product(range(na), range(na), range(n)):
        lhs = _bilinear(f, table, n, A.basis(a), table[b][j])
        rhs = _bilinear(f, table, n, A.mult[a][b], E[j])
        if not _vec_eq(f, lhs, rhs):
            rep.add(f"{what}: a(bx)=(ab)x", (a, b, j))


def validate_bimodule(M: BimodulePres, R: AssocAlgebraPres, A: CommutativeAlgebraPres | None = None) -> ValidationReport:
    rep = ValidationReport("M (R-R-bimodule)")
    if M.dim_r != R.dim:
        raise ShapeError(f"bimodule tables are over an algebra of dim {M.dim_r}, R has dim {R.dim}")
    f, n, nr = M.field, M.dim, R.dim
    Em = [_basis(n, i) for i in range(n)]
    Er = [R.basis(i) for i in range(nr)]
    for i, j, k in itertools.product(range(nr), range(nr), range(n)):
        if not _vec_eq(f, M.lmul(R.mult[i][j], Em[k]), M.lmul(Er[i], M.left[j][k])):
            rep.add("(rs)m = r(sm)", (i, j, k))
        if not _vec_eq(f, M.rmul(Em[k], R.mult[i][j]), M.rmul(M.right[k][i], Er[j])):
            rep.add("m(rs) = (mr)s", (k, i, j))
        if not _vec_eq(f, M.rmul(M.left[i][k], Er[j]), M.lmul(Er[i], M.right[k][j])):
            rep.add("(rm)s = r(ms)", (i, k, j))
    for k in range(n):
        if not _vec_eq(f, M.lmul(R.unit, Em[k]), Em[k]):
            rep.add("1m = m", (k,))
        if not _vec_eq(f, M.rmul(Em[k], R.unit), Em[k]):
            rep.add("m1 = m", (k,))
    if A is not None:
        for a in range(A.dim):
            u = R.image_of(A.basis(a))
            for k in range(n):
                if not _vec_eq(f, M.lmul(u, Em[k]), M.rmul(Em[k], u)):
                    rep.add("A acts symmetrically: (a1)m = m(a1)", (a, k))
    return rep


def validate_lie(L: LieAlgebraPres, A: CommutativeAlgebraPres | None = None) -> ValidationReport:
    rep = ValidationReport("L (Lie A-algebra)")
    f, n = L.field, L.dim
    E = [L.basis(i) for i in range(n)]
    for i in range(n):
        if any(f.reduce(c) for c in L.bracket[i][i]):
            rep.add("[x,x] = 0", (i,))
    for i, j in itertools.product(range(n), repeat=2):
        if not _vec_eq(f, L.bracket[i][j], [-c for c in L.bracket[j][i]]):
            rep.add("antisymmetry", (i, j))
    for i, j, k in itertools.combinations_with_replacement(range(n), 3):
        t1 = L.br(E[i], L.bracket[j][k])
        t2 = L.br(E[j], L.bracket[k][i])
        t3 = L.br(E[k], L.bracket[i][j])
        if any(f.reduce(x + y + z) for x, y, z in zip(t1, t2, t3)):
            rep.add("Jacobi", (i, j, k))
    if A is None:
        return rep
    if A.dim != L.dim_a:
        raise ShapeError(f"a_action has {L.dim_a} rows but dim A = {A.dim}")
    _module_axioms(rep, f, A, n, L.a_action, "A-action on L")
    for a, i, j in itertools.product(range(A.dim), range(n), range(n)):
        lhs = L.br(L.a_action[a][i], E[j])
        rhs = L.act(A.basis(a), L.bracket[i][j])
        if not _vec_eq(f, lhs, rhs):
            rep.add("A-bilinearity [ax,y] = a[x,y]", (a, i, j))
    return rep


def validate_lie_module(M: LieModulePres, L: LieAlgebraPres, A: CommutativeAlgebraPres | None = None) -> ValidationReport:
    rep = ValidationReport("M (Lie module)")
    if M.dim_l != L.dim:
        raise ShapeError(f"action table is over a Lie algebra of dim {M.dim_l}, L has dim {L.dim}")
    f, n, nl = M.field, M.dim, L.dim
    Em = [_basis(n, i) for i in range(n)]
    El = [L.basis(i) for i in range(nl)]
    for i, j, k in itertools.product(range(nl), range(nl), range(n)):
        lhs = M.act(L.bracket[i][j], Em[k])
        rhs = [x - y for x, y in zip(M.act(El[i], M.action[j][k]), M.act(El[j], M.action[i][k]))]
        if not _vec_eq(f, lhs, rhs):
            rep.add("[x,y]m = x(ym) - y(xm)", (i, j, k))
    if A is None:
        return rep
    if M.dim_a != A.dim:
        raise ShapeError(f"module a_action has {M.dim_a} rows but dim A = {A.dim}")
    _module_axioms(rep, f, A, n, M.a_action, "A-action on M")
    for a, i, k in itertools.product(range(A.dim), range(nl), range(n)):
        ea = A.basis(a)
        ax_m = M.act(L.a_action[a][i], Em[k])
        a_xm = M.a_act(ea, M.action[i][k])
        x_am = M.act(El[i], M.a_action[a][k])
        if not _vec_eq(f, ax_m, a_xm):
            rep.add("(ax)m = a(xm)", (a, i, k))
        if not _vec_eq(f, x_am, a_xm):
            rep.add("x(am) = a(xm)", (a, i, k))
    return rep


def validate(pres, *context) -> ValidationReport:
    """Validate ``pres`` against the presentations it depends on.

    context: () for A; (A,) for R or L; (R, A) / (R,) for a bimodule; (L, A) / (L,) for a Lie module.
    """
    if isinstance(pres, CommutativeAlgebraPres):
        return validate_commutative(pres)
    if isinstance(pres, AssocAlgebraPres):
        return validate_assoc(pres, *context[:1])
    if isinstance(pres, BimodulePres):
        return validate_bimodule(pres, *context[:2])
    if isinstance(pres, LieAlgebraPres):
        return validate_lie(pres, *context[:1])
    if isinstance(pres, LieModulePres):
        return validate_lie_module(pres, *context[:2])
    raise TypeError(f"not a presentation: {type(pres).__name__}")


def validate_triple(A, R, M) -> ValidationReport:
    rep = ValidationReport("triple (A, R, M)")
    for part in (validate_commutative(A), validate_assoc(R, A), validate_bimodule(M, R, A)):
        rep.extend(part)
    return rep


def validate_lie_triple(A, L, M) -> ValidationReport:
    rep = ValidationReport("triple (A, L, M)")
    for part in (validate_commutative(A), validate_lie(L, A), validate_lie_module(M, L, A)):
        rep.extend(part)
    return rep


def require_valid(rep: ValidationReport):
    if not rep.ok:
        raise ValidationFailure(rep)


# ---------------------------------------------------------------------------
# change of basis
#
# T is a dense invertible matrix whose *columns* are the new basis vectors in
# old coordinates.


def mat_inv(field: FieldSpec, T):
    n = len(T)
    aug = [[field.coerce(x) for x in row] + _basis(n, i) for i, row in enumerate(T)]
    for c in range(n):
        piv = next((r for r in range(c, n) if field.reduce(aug[r][c])), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        aug[c], aug[piv] = aug[piv], aug[c]
        inv = field.inv(aug[c][c])
        aug[c] = [field.reduce(x * inv) for x in aug[c]]
        for r in range(n):
            if r != c and aug[r][c]:
                t = aug[r][c]
                aug[r] = [field.reduce(x - t * y) for x, y in zip(aug[r], aug[c])]
    return [row[n:] for row in aug]


def mat_vec(field, T, v):
    return [field.reduce(sum(T[i][j] * v[j] for j in range(len(v)) if v[j])) for i in range(len(T))]


def _col(T, i):
    return [row[i] for row in T]


def _transform_bilinear(field, table, T1, T2, T3inv, n3):
    n1, n2 = len(T1[0]), len(T2[0])
    out = []
    for i in range(n1):
        u = _col(T1, i)
        row = []
        for j in range(n2):
            v = _col(T2, j)
            w = _bilinear(field, table, n3, u, v)
            row.append(mat_vec(field, T3inv, w))
        out.append(row)
    return out


def transform_commutative(A: CommutativeAlgebraPres, T) -> CommutativeAlgebraPres:
    f = A.field
    Ti = mat_inv(f, T)
    mult = _transform_bilinear(f, A.mult, T, T, Ti, A.dim)
    chars = [mat_vec(f, _transpose(T), chi) for chi in A.characters]
    return CommutativeAlgebraPres(f, A.dim, mult, mat_vec(f, Ti, A.unit), None, chars)


def transform_assoc(R: AssocAlgebraPres, T, TA=None) -> AssocAlgebraPres:
    f = R.field
    Ti = mat_inv(f, T)
    TA = TA or [_basis(R.dim_a, i) for i in range(R.dim_a)]
    mult = _transform_bilinear(f, R.mult, T, T, Ti, R.dim)
    act = _transform_bilinear(f, R.a_action, TA, T, Ti, R.dim)
    chars = [mat_vec(f, _transpose(T), chi) for chi in R.characters]
    return AssocAlgebraPres(f, R.dim, mult, mat_vec(f, Ti, R.unit), act, None, chars)


def transform_bimodule(M: BimodulePres, T, TR=None) -> BimodulePres:
    f = M.field
    Ti = mat_inv(f, T)
    TR = TR or [_basis(M.dim_r, i) for i in range(M.dim_r)]
    left = _transform_bilinear(f, M.left, TR, T, Ti, M.dim)
    right = _transform_bilinear(f, M.right, T, TR, Ti, M.dim)
    return BimodulePres(f, M.dim, left, right)


def transform_lie(L: LieAlgebraPres, T, TA=None) -> LieAlgebraPres:
    f = L.field
    Ti = mat_inv(f, T)
    TA = TA or [_basis(L.dim_a, i) for i in range(L.dim_a)]
    br = _transform_bilinear(f, L.bracket, T, T, Ti, L.dim)
    act = _transform_bilinear(f, L.a_action, TA, T, Ti, L.dim)
    return LieAlgebraPres(f, L.dim, br, act)


def transform_lie_module(M: LieModulePres, T, TL=None, TA=None) -> LieModulePres:
    f = M.field
    Ti = mat_inv(f, T)
    TL = TL or [_basis(M.dim_l, i) for i in range(M.dim_l)]
    TA = TA or [_basis(M.dim_a, i) for i in range(M.dim_a)]
    act = _transform_bilinear(f, M.action, TL, T, Ti, M.dim)
    aact = _transform_bilinear(f, M.a_action, TA, T, Ti, M.dim)
    return LieModulePres(f, M.dim, act, aact)


def _transpose(T):
    return [list(r) for r in zip(*T)]


# ---------------------------------------------------------------------------
# JSON


def _render_table(field, t):
    if isinstance(t, (list, tuple)):
        return [_render_table(field, x) for x in t]
    return field.render(t)


def _parse_table(field, t):
    if isinstance(t, (list, tuple)):
        return [_parse_table(field, x) for x in t]
    return field.coerce(t)


def to_json(pres) -> dict:
    f = pres.field
    out = {"kind": pres.kind, "field": str(f), "dim": pres.dim, "labels": list(pres.labels)}
    for key in ("mult", "unit", "a_action", "left", "right", "bracket", "action"):
        if hasattr(pres, key):
            out[key] = _render_table(f, getattr(pres, key))
    chars = getattr(pres, "characters", None)
    if chars:
        out["characters"] = _render_table(f, chars)
    return out


def from_json(obj: dict, expect: str | None = None, field: FieldSpec | None = None, A=None):
    """Build a presentation from its JSON document.

    ``expect`` selects the kind when the document does not say; ``A`` supplies
    the default A-action for associative inputs lacking "a_action" (R = A acting on itself).
    """
    f = FieldSpec.parse(obj["field"]) if "field" in obj else (field or QQ)
    if field is not None and f != field:
        raise ShapeError(f"presentation is over {f}, expected {field}")
    kind = obj.get("kind") or expect or _infer_kind(obj)
    if expect and kind != expect:
        raise ShapeError(f"expected a {expect} presentation, got {kind}")
    dim = obj["dim"]
    labels = obj.get("labels")
    P = lambda key: _parse_table(f, obj[key])  # noqa: E731
    chars = _parse_table(f, obj.get("characters", []))
    if kind == "commutative":
        return CommutativeAlgebraPres(f, dim, P("mult"), P("unit"), labels, chars)
    if kind == "associative":
        if "a_action" in obj:
            act = P("a_action")
        elif A is not None and A.dim == dim:
            act = [[list(v) for v in row] for row in A.mult]
        else:
            raise ShapeError("associative presentation without a_action needs R = A")
        return AssocAlgebraPres(f, dim, P("mult"), P("unit"), act, labels, chars)
    if kind == "bimodule":
        return BimodulePres(f, dim, P("left"), P("right"), labels)
    if kind == "lie":
        return LieAlgebraPres(f, dim, P("bracket"), P("a_action"), labels)
    if kind == "lie_module":
        return LieModulePres(f, dim, P("action"), P("a_action"), labels)
    raise ShapeError(f"unknown presentation kind {kind!r}")


def _infer_kind(obj):
    if "bracket" in obj:
        return "lie"
    if "action" in obj:
        return "lie_module"
    if "left" in obj or "right" in obj:
        return "bimodule"
    if "a_action" in obj:
        return "associative"
    if "mult" in obj:
        return "commutative"
    raise ShapeError("cannot infer presentation kind")
