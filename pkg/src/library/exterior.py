"""Graded exterior algebra on the dual of a Lie algebra.

Forms are stored on strictly increasing 1-based multi-indices; the
coefficient of e_I is the value of the form on (E_i1, ..., E_ik).
"""

from __future__ import annotations

import itertools
from typing import TYPE_CHECKING, Iterable, Iterator, Mapping, Optional, Sequence, Union

import sympy

from .exceptions import ArgTypeError, DegenerateMetricError, DimensionMismatchError, ParametricEvaluationError
from .scalars import Point, ScalarInput, ScalarPoly, is_zero, normalize, parse_scalar, poly_string, substitute, to_scalar

if TYPE_CHECKING:
    from .lie_structure import LieAlgebra

Index = tuple[int, ...]
Vector = Sequence[ScalarInput]


def sort_sign(indices: Sequence[int]) -> tuple[int, Index]:
    """Sign of the permutation sorting `indices`, and the sorted tuple.

    Returns sign 0 when an index repeats.
    """
    if len(set(indices)) != len(indices):
        return 0, tuple()
    inversions = sum(1 for a, b in itertools.combinations(indices, 2) if a > b)
    return (-1 if inversions % 2 else 1), tuple(sorted(indices))


class Form:
    """Homogeneous exterior form with exact coefficients.

    Attributes:
        ambient_dim:
            dimension n of the underlying space.
        grade:
            degree k of the form, 0 <= k <= n.
        coeffs:
            mapping strictly increasing index tuple -> nonzero coefficient.
    """

    __slots__ = ("ambient_dim", "grade", "coeffs")

    def __init__(self, ambient_dim: int, grade: int, coeffs: Optional[Mapping[Index, ScalarInput]] = None):
        if not 0 <= grade:
            raise ValueError(f"grade must be non-negative, got {grade}")
        self.ambient_dim = ambient_dim
        self.grade = grade
        clean: dict[Index, ScalarPoly] = {}
        for idx, c in (coeffs or {}).items():
            idx = tuple(idx)
            if len(idx) != grade or any(not 1 <= i <= ambient_dim for i in idx):
                raise ValueError(f"index {idx} invalid for a {grade}-form in dimension {ambient_dim}")
            if any(a >= b for a, b in zip(idx, idx[1:])):
                raise ValueError(f"index {idx} is not strictly increasing")
            value = normalize(c)
            if value != 0:
                clean[idx] = value
        self.coeffs = dict(sorted(clean.items()))

    def __repr__(self) -> str:
        if not self.coeffs:
            return f"Form(dim={self.ambient_dim}, grade={self.grade}, 0)"
        terms = " + ".join(f"({poly_string(c)})*e{''.join(map(str, i))}" for i, c in self.coeffs.items())
        return f"Form(dim={self.ambient_dim}, grade={self.grade}, {terms})"

    def __iter__(self) -> Iterator[tuple[Index, ScalarPoly]]:
        return iter(self.coeffs.items())

    def __getitem__(self, idx: Index) -> ScalarPoly:
        return self.coeffs.get(tuple(idx), sympy.Integer(0))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Form):
            return NotImplemented
        if (self.ambient_dim, self.grade) != (other.ambient_dim, other.grade):
            return False
        return (self - other).is_zero()

    def __hash__(self) -> int:
        return hash((self.ambient_dim, self.grade, tuple(self.coeffs)))

    def _check_compatible(self, other: Form) -> None:
        if not isinstance(other, Form):
            raise ArgTypeError(var_name="other", type_given=type(other), type_expected=Form)
        if other.ambient_dim != self.ambient_dim:
            raise DimensionMismatchError(self.ambient_dim, other.ambient_dim)
        if other.grade != self.grade:
            raise ValueError(f"cannot add forms of grade {self.grade} and {other.grade}")

    def __add__(self, other: Form) -> Form:
        self._check_compatible(other)
        out = dict(self.coeffs)
        for idx, c in other.coeffs.items():
            out[idx] = out.get(idx, 0) + c
        return Form(self.ambient_dim, self.grade, out)

    def __neg__(self) -> Form:
        return Form(self.ambient_dim, self.grade, {i: -c for i, c in self.coeffs.items()})

    def __sub__(self, other: Form) -> Form:
        return self + (-other)

    def __mul__(self, scalar: ScalarInput) -> Form:
        s = to_scalar(scalar)
        return Form(self.ambient_dim, self.grade, {i: s * c for i, c in self.coeffs.items()})

    __rmul__ = __mul__

    def __xor__(self, other: Form) -> Form:
        return wedge(self, other)

    def is_zero(self) -> bool:
        return not self.coeffs

    def coefficients(self) -> list[ScalarPoly]:
        return list(self.coeffs.values())

    def free_symbols(self) -> set[sympy.Symbol]:
        out: set[sympy.Symbol] = set()
        for c in self.coeffs.values():
            out |= c.free_symbols
        return out

    def subs(self, point: Optional[Point]) -> Form:
        return Form(self.ambient_dim, self.grade, {i: substitute(c, point) for i, c in self.coeffs.items()})

    def evaluate(self, vectors: Sequence[Vector]) -> ScalarPoly:
        """Value of the form on `grade` vectors (determinant convention)."""
        if len(vectors) != self.grade:
            raise ValueError(f"a {self.grade}-form takes {self.grade} vectors, got {len(vectors)}")
        total = sympy.Integer(0)
        for idx, c in self.coeffs.items():
            block = sympy.Matrix([[to_scalar(v[i - 1]) for i in idx] for v in vectors])
            total += c * block.det()
        return normalize(total)

    def contract(self, vector: Vector) -> Form:
        """Interior product X ⌟ α."""
        if len(vector) != self.ambient_dim:
            raise DimensionMismatchError(self.ambient_dim, len(vector), "vector")
        if self.grade == 0:
            return zero_form(self.ambient_dim, 0)
        out: dict[Index, ScalarPoly] = {}
        for idx, c in self.coeffs.items():
            for p, i in enumerate(idx):
                x = to_scalar(vector[i - 1])
                if x == 0:
                    continue
                rest = idx[:p] + idx[p + 1:]
                out[rest] = out.get(rest, 0) + (-1) ** p * x * c
        return Form(self.ambient_dim, self.grade - 1, out)

    def to_json(self) -> dict:
        return {
            "grade": self.grade,
            "terms": [{"idx": list(i), "coef": poly_string(c)} for i, c in self.coeffs.items()],
        }

    @classmethod
    def from_json(cls, ambient_dim: int, data: Mapping) -> Form:
        terms = {tuple(t["idx"]): parse_scalar(t["coef"]) for t in data.get("terms", [])}
        return cls(ambient_dim, int(data["grade"]), terms)


def zero_form(n: int, grade: int) -> Form:
    return Form(n, grade)


def constant_form(n: int, value: ScalarInput) -> Form:
    return Form(n, 0, {(): value})


def basis_form(n: int, *indices: int) -> Form:
    """e_{i1} ∧ ... ∧ e_{ik} in dimension n, indices in any order."""
    sign, idx = sort_sign(indices)
    if sign == 0:
        return zero_form(n, len(indices))
    return Form(n, len(indices), {idx: sign})


def one_form(covector: Vector) -> Form:
    n = len(covector)
    return Form(n, 1, {(i + 1,): c for i, c in enumerate(covector)})


def wedge(x: Form, y: Form) -> Form:
    """Exterior product in the canonical increasing-index representation."""
    for name, f in (("x", x), ("y", y)):
        if not isinstance(f, Form):
            raise ArgTypeError(var_name=name, type_given=type(f), type_expected=Form)
    if x.ambient_dim != y.ambient_dim:
        raise DimensionMismatchError(x.ambient_dim, y.ambient_dim)
    n, grade = x.ambient_dim, x.grade + y.grade
    if grade > n:
        return zero_form(n, grade)
    out: dict[Index, ScalarPoly] = {}
    for i, a in x.coeffs.items():
        for j, b in y.coeffs.items():
            sign, idx = sort_sign(i + j)
            if sign:
                out[idx] = out.get(idx, 0) + sign * a * b
    return Form(n, grade, out)


def wedge_all(forms: Iterable[Form], n: int) -> Form:
    out = constant_form(n, 1)
    for f in forms:
        out = wedge(out, f)
    return out


def differential(alg: "LieAlgebra", x: Form) -> Form:
    """Chevalley–Eilenberg differential, extended from d on g* as an anti-derivation."""
    if x.ambient_dim != alg.dim:
        raise DimensionMismatchError(alg.dim, x.ambient_dim)
    n = alg.dim
    out = zero_form(n, x.grade + 1)
    if x.grade >= n:
        return out
    for idx, c in x.coeffs.items():
        for p, i in enumerate(idx):
            left = wedge_all((basis_form(n, j) for j in idx[:p]), n)
            right = wedge_all((basis_form(n, j) for j in idx[p + 1:]), n)
            out = out + wedge(wedge(left, alg.d_basis[i - 1]), right) * ((-1) ** p * c)
    return out


class Metric:
    """Symmetric bilinear form on the Lie algebra, in the basis E_1..E_n.

    Attributes:
        dim:
            dimension n.
        entries:
            symmetric sympy Matrix, entries[i, j] = g(E_i, E_j).
    """

    def __init__(self, entries: Union[sympy.Matrix, Sequence[Sequence[ScalarInput]]]):
        m = sympy.Matrix(entries).applyfunc(lambda e: normalize(to_scalar(e)))
        if m.rows != m.cols:
            raise DimensionMismatchError(m.rows, m.cols, "metric")
        if any(not is_zero(m[i, j] - m[j, i]) for i in range(m.rows) for j in range(i)):
            raise DegenerateMetricError("matrix is not symmetric")
        self.dim = m.rows
        self.entries = m

    def __repr__(self) -> str:
        return f"Metric({self.entries.tolist()})"

    @classmethod
    def identity(cls, n: int) -> Metric:
        return cls(sympy.eye(n))

    def is_identity(self) -> bool:
        return self.entries == sympy.eye(self.dim)

    def free_symbols(self) -> set[sympy.Symbol]:
        return set().union(*(e.free_symbols for e in self.entries))

    def subs(self, point: Optional[Point]) -> Metric:
        return Metric(self.entries.applyfunc(lambda e: substitute(e, point)))

    def leading_minors(self) -> list[ScalarPoly]:
        return [normalize(self.entries[:k, :k].det()) for k in range(1, self.dim + 1)]

    def is_positive_definite(self, point: Optional[Point] = None) -> bool:
        """Sylvester's criterion; symbolic minors must be decidable after substitution."""
        minors = [substitute(m, point) for m in self.leading_minors()]
        undecided = [m for m in minors if m.free_symbols]
        if undecided:
            raise ParametricEvaluationError(set().union(*(m.free_symbols for m in undecided)), "positivity")
        return all(m > 0 for m in minors)

    def pairing(self, x: Vector, y: Vector) -> ScalarPoly:
        vx = sympy.Matrix([to_scalar(v) for v in x])
        vy = sympy.Matrix([to_scalar(v) for v in y])
        return normalize((vx.T * self.entries * vy)[0, 0])


def _complement(idx: Index, n: int) -> Index:
    return tuple(i for i in range(1, n + 1) if i not in idx)


def hodge_star(m: Metric, x: Form, orientation: int = 1) -> Form:
    """Riemannian Hodge star, α ∧ *β = <α, β> vol_g with vol_g = sqrt(det g) e_1..n.

    The identity metric uses the orthonormal fast path; otherwise the metric
    must be numerically specialised and positive definite.
    """
    if orientation not in (1, -1):
        raise ValueError("orientation must be +1 or -1")
    if m.dim != x.ambient_dim:
        raise DimensionMismatchError(m.dim, x.ambient_dim, "metric")
    n, k = x.ambient_dim, x.grade
    out: dict[Index, ScalarPoly] = {}
    if m.is_identity():
        for idx, c in x.coeffs.items():
            comp = _complement(idx, n)
            sign, _ = sort_sign(idx + comp)
            out[comp] = out.get(comp, 0) + orientation * sign * c
        return Form(n, n - k, out)

    if m.free_symbols():
        raise ParametricEvaluationError(m.free_symbols(), "hodge_star")
    if not m.is_positive_definite():
        raise DegenerateMetricError("metric is not positive definite")
    inverse = m.entries.inv()
    volume = sympy.sqrt(m.entries.det())
    for idx, c in x.coeffs.items():
        for jdx in itertools.combinations(range(1, n + 1), k):
            gram = inverse.extract([i - 1 for i in idx], [j - 1 for j in jdx]).det() if k else sympy.Integer(1)
            if gram == 0:
                continue
            comp = _complement(jdx, n)
            sign, _ = sort_sign(jdx + comp)
            out[comp] = out.get(comp, 0) + orientation * sign * volume * gram * c
    return Form(n, n - k, out)


def codifferential(alg: "LieAlgebra", m: Metric, x: Form, orientation: int = 1) -> Form:
    """d* = (-1)^(n(k+1)+1) * d *, which is -*d* in even dimension."""
    n, k = x.ambient_dim, x.grade
    if k == 0:
        return zero_form(n, 0)
    sign = (-1) ** (n * (k + 1) + 1)
    inner = hodge_star(m, x, orientation)
    return hodge_star(m, differential(alg, inner), orientation) * sign


def _endomorphism(J: Union[sympy.Matrix, Sequence[Sequence[ScalarInput]]]) -> sympy.Matrix:
    mat = sympy.Matrix(J)
    if mat.rows != mat.cols:
        raise DimensionMismatchError(mat.rows, mat.cols, "endomorphism")
    return mat


def pullback(A: Union[sympy.Matrix, Sequence[Sequence[ScalarInput]]], x: Form) -> Form:
    """(A^* α)(X_1, ..., X_k) = α(A X_1, ..., A X_k), A acting on vectors (columns)."""
    mat = _endomorphism(A)
    n = x.ambient_dim
    if mat.rows != n:
        raise DimensionMismatchError(n, mat.rows, "endomorphism")
    images = [Form(n, 1, {(j + 1,): mat[i, j] for j in range(n)}) for i in range(n)]
    out = zero_form(n, x.grade)
    for idx, c in x.coeffs.items():
        out = out + wedge_all((images[i - 1] for i in idx), n) * c
    return out


def j_action(J: Union[sympy.Matrix, Sequence[Sequence[ScalarInput]]], x: Form) -> Form:
    """(Jα)(X_1, ..., X_k) = (-1)^k α(JX_1, ..., JX_k)."""
    return pullback(J, x) * ((-1) ** x.grade)
