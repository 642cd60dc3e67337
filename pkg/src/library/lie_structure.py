"""Lie algebras given by the differential on the dual basis.

The structure is stored dually: d_basis[k-1] is the 2-form d e_k, and the
bracket is recovered from e_k([X, Y]) = -d e_k(X, Y).
"""

from __future__ import annotations

import logging
from typing import Iterable, Mapping, Optional, Sequence

import sympy

from .exceptions import (
    DimensionMismatchError,
    NotAnIdealError,
    NotSolvableError,
    ParametricEvaluationError,
)
from .exterior import Form, Vector, differential, zero_form
from .scalars import Point, ScalarInput, ScalarPoly, normalize, parse_scalar, poly_string, substitute, to_scalar

LOGGER = logging.getLogger(__name__)


class LieAlgebra:
    """Finite-dimensional Lie algebra in dual form.

    Attributes:
        dim:
            dimension n.
        d_basis:
            tuple of n 2-forms, d of each dual basis element.
        name:
            optional label used in reports and error messages.
    """

    def __init__(self, d_basis: Sequence[Form], name: str = ""):
        self.dim = len(d_basis)
        for k, form in enumerate(d_basis):
            if form.ambient_dim != self.dim:
                raise DimensionMismatchError(self.dim, form.ambient_dim, f"d e{k + 1}")
            if form.grade != 2:
                raise ValueError(f"d e{k + 1} must be a 2-form, got grade {form.grade}")
        self.d_basis = tuple(d_basis)
        self.name = name

    def __repr__(self) -> str:
        return f"LieAlgebra(name={self.name!r}, dim={self.dim})"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LieAlgebra):
            return NotImplemented
        return self.dim == other.dim and all(a == b for a, b in zip(self.d_basis, other.d_basis))

    def __hash__(self) -> int:
        return hash((self.dim, self.d_basis))

    @classmethod
    def abelian(cls, n: int) -> LieAlgebra:
        return cls([zero_form(n, 2) for _ in range(n)], name=f"R{n}" if n > 1 else "R")

    @classmethod
    def from_structure_constants(
        cls, n: int, constants: Mapping[tuple[int, int, int], ScalarInput], name: str = ""
    ) -> LieAlgebra:
        """Builds the algebra with [E_i, E_j] = sum_k c[i, j, k] E_k (1-based, i < j)."""
        coeffs: list[dict[tuple[int, int], ScalarPoly]] = [{} for _ in range(n)]
        for (i, j, k), c in constants.items():
            if i == j:
                continue
            sign = 1 if i < j else -1
            key = (min(i, j), max(i, j))
            coeffs[k - 1][key] = coeffs[k - 1].get(key, 0) - sign * to_scalar(c)
        return cls([Form(n, 2, c) for c in coeffs], name=name)

    def free_symbols(self) -> set[sympy.Symbol]:
        out: set[sympy.Symbol] = set()
        for form in self.d_basis:
            out |= form.free_symbols()
        return out

    def at(self, point: Optional[Point]) -> LieAlgebra:
        if not point:
            return self
        return LieAlgebra([f.subs(point) for f in self.d_basis], name=self.name)

    def with_name(self, name: str) -> LieAlgebra:
        return LieAlgebra(self.d_basis, name=name)

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "d": [
                [{"coef": poly_string(c), "i": idx[0], "j": idx[1]} for idx, c in form]
                for form in self.d_basis
            ],
            "name": self.name,
        }

    @classmethod
    def from_json(cls, data: Mapping) -> LieAlgebra:
        n = int(data["dim"])
        entries = data.get("d", [])
        if len(entries) != n:
            raise DimensionMismatchError(n, len(entries), "algebra JSON")
        forms = []
        for entry in entries:
            coeffs: dict[tuple[int, int], ScalarPoly] = {}
            for term in entry:
                i, j = int(term["i"]), int(term["j"])
                value = parse_scalar(str(term["coef"]))
                if i > j:
                    i, j, value = j, i, -value
                coeffs[(i, j)] = coeffs.get((i, j), 0) + value
            forms.append(Form(n, 2, coeffs))
        return cls(forms, name=data.get("name", ""))


class Subspace:
    """Subspace of g (vectors) or of g* (covectors), spanned by exact coordinate vectors.

    Attributes:
        ambient_dim:
            dimension of the ambient space.
        basis:
            linearly independent coordinate vectors.
    """

    def __init__(self, ambient_dim: int, vectors: Iterable[Sequence[ScalarInput]] = ()):
        self.ambient_dim = ambient_dim
        columns = []
        for v in vectors:
            if len(v) != ambient_dim:
                raise DimensionMismatchError(ambient_dim, len(v), "vector")
            columns.append(sympy.Matrix([normalize(to_scalar(x)) for x in v]))
        self.basis: tuple[tuple[ScalarPoly, ...], ...] = ()
        if columns:
            mat = sympy.Matrix.hstack(*columns)
            _, pivots = mat.rref(simplify=True)
            self.basis = tuple(tuple(mat[:, p]) for p in pivots)

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, basis={[list(b) for b in self.basis]})"

    def __len__(self) -> int:
        return self.dim

    @property
    def dim(self) -> int:
        return len(self.basis)

    @classmethod
    def whole(cls, n: int) -> Subspace:
        return cls(n, [tuple(sympy.eye(n)[:, i]) for i in range(n)])

    def matrix(self) -> sympy.Matrix:
        """n x dim matrix with the basis vectors as columns."""
        if not self.basis:
            return sympy.zeros(self.ambient_dim, 0)
        return sympy.Matrix.hstack(*[sympy.Matrix(b) for b in self.basis])

    def contains(self, vector: Vector) -> bool:
        if not self.basis:
            return all(normalize(to_scalar(x)) == 0 for x in vector)
        extended = Subspace(self.ambient_dim, [*self.basis, vector])
        return extended.dim == self.dim

    def is_subspace_of(self, other: Subspace) -> bool:
        return all(other.contains(v) for v in self.basis)

    def same_as(self, other: Subspace) -> bool:
        return self.dim == other.dim and self.is_subspace_of(other)

    def annihilator(self) -> Subspace:
        """Covectors vanishing on this subspace (or vectors killed by these covectors)."""
        if not self.basis:
            return Subspace.whole(self.ambient_dim)
        rows = self.matrix().T
        return Subspace(self.ambient_dim, [tuple(v) for v in rows.nullspace(simplify=True)])

    def coordinates(self, vector: Vector) -> list[ScalarPoly]:
        """Coordinates of a vector of the subspace in its basis."""
        mat = self.matrix()
        v = sympy.Matrix([to_scalar(x) for x in vector])
        gram = mat.T * mat
        coords = gram.inv() * mat.T * v
        if any(normalize(e) != 0 for e in mat * coords - v):
            raise ValueError("vector does not lie in the subspace")
        return [normalize(c) for c in coords]


def _require_numeric(alg: LieAlgebra, point: Optional[Point], operation: str) -> LieAlgebra:
    concrete = alg.at(point)
    symbols = concrete.free_symbols()
    if symbols:
        raise ParametricEvaluationError(symbols, operation)
    return concrete


def _unit(n: int, i: int) -> list[ScalarPoly]:
    return [sympy.Integer(1) if k == i else sympy.Integer(0) for k in range(n)]


def bracket(alg: LieAlgebra, x: Vector, y: Vector) -> list[ScalarPoly]:
    if len(x) != alg.dim or len(y) != alg.dim:
        raise DimensionMismatchError(alg.dim, len(x) if len(x) != alg.dim else len(y), "vector")
    return [normalize(-form.evaluate([x, y])) for form in alg.d_basis]


def structure_constants(alg: LieAlgebra) -> dict[tuple[int, int, int], ScalarPoly]:
    """Nonzero c[i, j, k] with [E_i, E_j] = sum_k c[i, j, k] E_k, i < j."""
    out = {}
    for k, form in enumerate(alg.d_basis, start=1):
        for (i, j), c in form:
            out[(i, j, k)] = normalize(-c)
    return dict(sorted(out.items()))


def ad_matrix(alg: LieAlgebra, x: Vector) -> sympy.Matrix:
    """Matrix of ad(X); column j holds [X, E_j]."""
    n = alg.dim
    return sympy.Matrix.hstack(*[sympy.Matrix(bracket(alg, x, _unit(n, j))) for j in range(n)]) if n else sympy.zeros(0, 0)


def jacobi_check(alg: LieAlgebra) -> list[ScalarPoly]:
    """Coefficients of d(d e_k) for every k; all zero iff the Jacobi identity holds."""
    residuals: list[ScalarPoly] = []
    for form in alg.d_basis:
        residuals.extend(differential(alg, form).coefficients())
    return residuals


def is_lie_algebra(alg: LieAlgebra) -> bool:
    return not jacobi_check(alg)


def bracket_span(alg: LieAlgebra, left: Subspace, right: Subspace) -> Subspace:
    vectors = [bracket(alg, x, y) for x in left.basis for y in right.basis]
    return Subspace(alg.dim, vectors)


def derived_series(alg: LieAlgebra, point: Optional[Point] = None) -> list[Subspace]:
    """g, [g, g], [g', g'], ... until the chain stabilises."""
    alg = _require_numeric(alg, point, "derived_series")
    series = [Subspace.whole(alg.dim)]
    while True:
        nxt = bracket_span(alg, series[-1], series[-1])
        if nxt.dim == series[-1].dim:
            return series
        series.append(nxt)


def lower_central_series(alg: LieAlgebra, point: Optional[Point] = None) -> list[Subspace]:
    """g, [g, g], [g, [g, g]], ... until the chain stabilises."""
    alg = _require_numeric(alg, point, "lower_central_series")
    whole = Subspace.whole(alg.dim)
    series = [whole]
    while True:
        nxt = bracket_span(alg, whole, series[-1])
        if nxt.dim == series[-1].dim:
            return series
        series.append(nxt)


def derived_algebra(alg: LieAlgebra, point: Optional[Point] = None) -> Subspace:
    alg = _require_numeric(alg, point, "derived_algebra")
    whole = Subspace.whole(alg.dim)
    return bracket_span(alg, whole, whole)


def is_solvable(alg: LieAlgebra, point: Optional[Point] = None) -> bool:
    return derived_series(alg, point)[-1].dim == 0


def is_nilpotent(alg: LieAlgebra, point: Optional[Point] = None) -> bool:
    return lower_central_series(alg, point)[-1].dim == 0


def center(alg: LieAlgebra, point: Optional[Point] = None) -> Subspace:
    """z(g) = {X : X ⌟ dα = 0 for every α}."""
    alg = _require_numeric(alg, point, "center")
    n = alg.dim
    rows = []
    for form in alg.d_basis:
        for j in range(n):
            # coefficient of X_i in (X ⌟ d e_k)(E_j)
            rows.append([form.evaluate([_unit(n, i), _unit(n, j)]) for i in range(n)])
    if not rows:
        return Subspace.whole(n)
    kernel = sympy.Matrix(rows).nullspace(simplify=True)
    return Subspace(n, [tuple(v) for v in kernel])


def chi(alg: LieAlgebra) -> list[ScalarPoly]:
    """The covector χ(X) = tr ad(X) in the dual basis."""
    n = alg.dim
    return [normalize(sum((bracket(alg, _unit(n, i), _unit(n, k))[k] for k in range(n)), sympy.Integer(0))) for i in range(n)]


def unimodular_kernel(alg: LieAlgebra, point: Optional[Point] = None) -> Subspace:
    covector = [substitute(c, point) for c in chi(alg)]
    if any(c.free_symbols for c in covector):
        raise ParametricEvaluationError(set().union(*(c.free_symbols for c in covector)), "unimodular_kernel")
    if all(c == 0 for c in covector):
        return Subspace.whole(alg.dim)
    kernel = sympy.Matrix([covector]).nullspace(simplify=True)
    return Subspace(alg.dim, [tuple(v) for v in kernel])


def is_unimodular(alg: LieAlgebra, point: Optional[Point] = None) -> bool:
    covector = [substitute(c, point) for c in chi(alg)]
    if all(c == 0 for c in covector):
        return True
    if any(c.free_symbols for c in covector) and not any(c.is_Rational and c != 0 for c in covector):
        raise ParametricEvaluationError(set().union(*(c.free_symbols for c in covector)), "is_unimodular")
    return False


def is_ideal(alg: LieAlgebra, subspace: Subspace) -> bool:
    n = alg.dim
    return all(subspace.contains(bracket(alg, _unit(n, j), v)) for v in subspace.basis for j in range(n))


def is_subalgebra(alg: LieAlgebra, subspace: Subspace) -> bool:
    return bracket_span(alg, subspace, subspace).is_subspace_of(subspace)


def subalgebra(alg: LieAlgebra, subspace: Subspace, name: str = "") -> LieAlgebra:
    """The bracket restricted to a subalgebra, written in the subspace's own basis."""
    if not is_subalgebra(alg, subspace):
        raise ValueError(f'subspace is not closed under the bracket of "{alg.name}"')
    m = subspace.dim
    coeffs: list[dict[tuple[int, int], ScalarPoly]] = [{} for _ in range(m)]
    for p in range(m):
        for q in range(p + 1, m):
            coords = subspace.coordinates(bracket(alg, subspace.basis[p], subspace.basis[q]))
            for r, c in enumerate(coords):
                if c != 0:
                    coeffs[r][(p + 1, q + 1)] = -c
    return LieAlgebra([Form(m, 2, c) for c in coeffs], name=name)


def derived_center(alg: LieAlgebra, point: Optional[Point] = None) -> Subspace:
    """z(g'), the centre of the derived algebra, as a subspace of g."""
    alg = _require_numeric(alg, point, "derived_center")
    derived = derived_algebra(alg)
    inner_center = center(subalgebra(alg, derived))
    vectors = [list(derived.matrix() * sympy.Matrix(v)) for v in inner_center.basis]
    return Subspace(alg.dim, vectors)


def quotient(alg: LieAlgebra, ideal: Subspace, name: str = "") -> LieAlgebra:
    """g / I, with dual space the annihilator of I in g*."""
    if not is_ideal(alg, ideal):
        raise NotAnIdealError(alg.name)
    covectors = ideal.annihilator()
    m = covectors.dim
    if m == 0:
        return LieAlgebra([], name=name)
    rows = covectors.matrix().T
    lifts = rows.T * (rows * rows.T).inv()
    vectors = [list(lifts[:, p]) for p in range(m)]
    coeffs: list[dict[tuple[int, int], ScalarPoly]] = [{} for _ in range(m)]
    for l in range(m):
        d_beta = zero_form(alg.dim, 2)
        for k, c in enumerate(rows.row(l)):
            if c != 0:
                d_beta = d_beta + alg.d_basis[k] * c
        for p in range(m):
            for q in range(p + 1, m):
                value = d_beta.evaluate([vectors[p], vectors[q]])
                if value != 0:
                    coeffs[l][(p + 1, q + 1)] = value
    return LieAlgebra([Form(m, 2, c) for c in coeffs], name=name)


def product_with_line(alg: LieAlgebra, name: Optional[str] = None) -> LieAlgebra:
    """R x g, with the R factor appended as the last basis element."""
    n = alg.dim + 1
    forms = [Form(n, 2, dict(form.coeffs)) for form in alg.d_basis] + [zero_form(n, 2)]
    return LieAlgebra(forms, name=name if name is not None else f"R_x_{alg.name}")


def _d_on_pairs(alg: LieAlgebra, vectors: Sequence[Sequence[ScalarPoly]]) -> list[list[ScalarPoly]]:
    """Rows (one per pair X_p, X_q) of the linear map α -> dα(X_p, X_q)."""
    rows = []
    for p in range(len(vectors)):
        for q in range(p + 1, len(vectors)):
            rows.append([form.evaluate([vectors[p], vectors[q]]) for form in alg.d_basis])
    return rows


def solvable_filtration(alg: LieAlgebra, point: Optional[Point] = None) -> list[Subspace]:
    """Maximal chain W_1 < W_2 < ... of g* with dW_i contained in the ideal generated by W_(i-1).

    W_1 is the kernel of d on g*; raises NotSolvableError when the chain
    stops short of g*.
    """
    alg = _require_numeric(alg, point, "solvable_filtration")
    n = alg.dim
    chain: list[Subspace] = []
    previous = Subspace(n)
    while True:
        rows = _d_on_pairs(alg, previous.annihilator().basis)
        if rows:
            current = Subspace(n, [tuple(v) for v in sympy.Matrix(rows).nullspace(simplify=True)])
        else:
            current = Subspace.whole(n)
        if current.dim == previous.dim:
            break
        chain.append(current)
        previous = current
        if current.dim == n:
            return chain
    raise NotSolvableError(alg.name, previous.dim, n)


def refined_filtration(alg: LieAlgebra, point: Optional[Point] = None) -> list[Subspace]:
    """V_1 < ... < V_n with dim V_i = i, refining the W_i one basis element at a time."""
    chain = solvable_filtration(alg, point)
    n = alg.dim
    refined: list[Subspace] = []
    collected: list[tuple[ScalarPoly, ...]] = []
    for w in chain:
        for v in w.basis:
            candidate = Subspace(n, [*collected, v])
            if candidate.dim > len(collected):
                collected.append(v)
                refined.append(candidate)
    return refined


def is_filtration_compatible(alg: LieAlgebra, chain: Sequence[Subspace]) -> bool:
    """Checks dV_i ⊆ I(V_(i-1)) along a chain of covector subspaces."""
    n = alg.dim
    previous = Subspace(n)
    for current in chain:
        vectors = previous.annihilator().basis
        rows = _d_on_pairs(alg, vectors)
        for covector in current.basis:
            for row in rows:
                if normalize(sum((a * b for a, b in zip(row, covector)), sympy.Integer(0))) != 0:
                    return False
        previous = current
    return True
