"""Invariant Hermitian structures: fundamental form, integrability, Bismut torsion, SKT and Kähler tests.

The frame convention throughout is e1 = a, e2 = Ja, e3 = b, e4 = Jb, with J
acting on vectors by J E_j = sum_i J[i, j] E_i.
"""

from __future__ import annotations

import logging
from functools import lru_cache
from typing import Mapping, NamedTuple, Optional, Sequence, Union

import sympy

from .exceptions import (
    DegenerateMetricError,
    DimensionMismatchError,
    IncompatibleStructureError,
    NotAdInvariantError,
)
from .exterior import (
    Form,
    Metric,
    basis_form,
    codifferential,
    differential,
    j_action,
    wedge,
    zero_form,
)
from .lie_structure import LieAlgebra, bracket, jacobi_check
from .misc import StructuralCase
from .scalars import (
    Point,
    ScalarInput,
    ScalarPoly,
    is_zero,
    normalize,
    parse_scalar,
    poly_string,
    substitute,
    symbols,
    to_scalar,
)

LOGGER = logging.getLogger(__name__)

Matrix = Union[sympy.Matrix, Sequence[Sequence[ScalarInput]]]


def standard_complex_structure(n: int = 4) -> sympy.Matrix:
    """J0 with J E_(2i-1) = E_(2i) on the frame a, Ja, b, Jb, ..."""
    if n % 2:
        raise IncompatibleStructureError(f"odd dimension {n}")
    j = sympy.zeros(n, n)
    for i in range(0, n, 2):
        j[i + 1, i] = 1
        j[i, i + 1] = -1
    return j


class HermitianStructure:
    """Almost Hermitian structure (J, g) on a Lie algebra.

    Attributes:
        alg:
            the Lie algebra.
        J:
            almost complex structure as a matrix acting on vectors.
        g:
            compatible metric.
    """

    def __init__(self, alg: LieAlgebra, J: Matrix, g: Metric):
        self.alg = alg
        self.J = sympy.Matrix(J).applyfunc(lambda e: normalize(to_scalar(e)))
        self.g = g
        n = alg.dim
        if n % 2:
            raise IncompatibleStructureError(f"odd dimension {n}")
        if self.J.shape != (n, n):
            raise DimensionMismatchError(n, self.J.rows, "J")
        if g.dim != n:
            raise DimensionMismatchError(n, g.dim, "metric")
        if any(not is_zero(e) for e in self.J * self.J + sympy.eye(n)):
            raise IncompatibleStructureError("J^2 != -1")
        if any(not is_zero(e) for e in self.J.T * g.entries * self.J - g.entries):
            raise IncompatibleStructureError("g(JX, JY) != g(X, Y)")

    def __repr__(self) -> str:
        return f"HermitianStructure(alg={self.alg.name!r}, J={self.J.tolist()}, g={self.g.entries.tolist()})"

    @classmethod
    def standard(cls, alg: LieAlgebra) -> HermitianStructure:
        """J0 with the identity metric, i.e. an orthonormal frame a, Ja, b, Jb."""
        return cls(alg, standard_complex_structure(alg.dim), Metric.identity(alg.dim))

    @classmethod
    def from_fundamental_form(cls, alg: LieAlgebra, J: Matrix, omega: Form) -> HermitianStructure:
        """Recovers g(X, Y) = ω(X, JY)."""
        n = alg.dim
        big_omega = sympy.zeros(n, n)
        for (i, j), c in omega:
            big_omega[i - 1, j - 1] = c
            big_omega[j - 1, i - 1] = -c
        return cls(alg, J, Metric(big_omega * sympy.Matrix(J)))

    def at(self, point: Optional[Point]) -> HermitianStructure:
        if not point:
            return self
        return HermitianStructure(
            self.alg.at(point), self.J.applyfunc(lambda e: substitute(e, point)), self.g.subs(point)
        )

    def to_json(self) -> dict:
        return {
            "J": [[poly_string(e) for e in row] for row in self.J.tolist()],
            "g": [[poly_string(e) for e in row] for row in self.g.entries.tolist()],
        }

    @classmethod
    def from_json(cls, alg: LieAlgebra, data: Mapping) -> HermitianStructure:
        J = [[parse_scalar(str(e)) for e in row] for row in data["J"]]
        g = [[parse_scalar(str(e)) for e in row] for row in data["g"]]
        return cls(alg, J, Metric(g))


class StructureCheck(NamedTuple):
    """Exact decision with the residuals it was read from."""

    holds: bool
    residuals: list

    @property
    def residual(self) -> ScalarPoly:
        return self.residuals[0] if self.residuals else sympy.Integer(0)


def fundamental_form(h: HermitianStructure, point: Optional[Point] = None) -> Form:
    """ω(X, Y) = g(JX, Y), so ω_ij = (J^T g)_ij."""
    n = h.alg.dim
    matrix = h.J.T * h.g.entries
    omega = Form(n, 2, {(i + 1, j + 1): matrix[i, j] for i in range(n) for j in range(i + 1, n)})
    if point is not None:
        top = omega
        for _ in range(n // 2 - 1):
            top = wedge(top, omega)
        if top.subs(point).is_zero():
            raise DegenerateMetricError("ω^(n/2) vanishes at the evaluation point")
    return omega


class _ComplexForm(NamedTuple):
    re: Form
    im: Form

    def __add__(self, other: _ComplexForm) -> _ComplexForm:
        return _ComplexForm(self.re + other.re, self.im + other.im)

    def scale(self, re: ScalarPoly, im: ScalarPoly) -> _ComplexForm:
        return _ComplexForm(self.re * re - self.im * im, self.re * im + self.im * re)


def _complex_wedge(x: _ComplexForm, y: _ComplexForm) -> _ComplexForm:
    return _ComplexForm(wedge(x.re, y.re) - wedge(x.im, y.im), wedge(x.re, y.im) + wedge(x.im, y.re))


def _projector_01(J: sympy.Matrix, n: int) -> list[_ComplexForm]:
    """½(e_i + iJe_i), the (0,1)-components of the basis covectors."""
    half = sympy.Rational(1, 2)
    out = []
    for i in range(1, n + 1):
        e = basis_form(n, i)
        out.append(_ComplexForm(e * half, j_action(J, e) * half))
    return out


def integrability_residual(alg: LieAlgebra, J: Matrix) -> list[ScalarPoly]:
    """Real and imaginary coefficients of (d(e_k - iJe_k))^(0,2) over all k; empty iff J is integrable."""
    J = sympy.Matrix(J)
    n = alg.dim
    projectors = _projector_01(J, n)
    pairs = {
        (i, j): _complex_wedge(projectors[i - 1], projectors[j - 1])
        for i in range(1, n + 1)
        for j in range(i + 1, n + 1)
    }
    residuals: list[ScalarPoly] = []
    for k in range(1, n + 1):
        e = basis_form(n, k)
        d_re = differential(alg, e)
        d_im = differential(alg, -j_action(J, e))
        total = _ComplexForm(zero_form(n, 2), zero_form(n, 2))
        for idx, pair in pairs.items():
            c_re, c_im = d_re[idx], d_im[idx]
            if c_re == 0 and c_im == 0:
                continue
            total = total + pair.scale(c_re, c_im)
        residuals.extend(total.re.coefficients())
        residuals.extend(total.im.coefficients())
    return residuals


def is_integrable(alg: LieAlgebra, J: Matrix) -> bool:
    return not integrability_residual(alg, J)


def _torsion(h: HermitianStructure) -> Form:
    return -j_action(h.J, differential(h.alg, fundamental_form(h)))


def bismut_torsion(h: HermitianStructure) -> Form:
    """c = -J dω, the torsion 3-form of the Bismut connection."""
    if not is_integrable(h.alg, h.J):
        LOGGER.warning(f"Bismut torsion requested on {h.alg.name or 'algebra'} with a non-integrable J.")
    return _torsion(h)


def is_skt(h: HermitianStructure, point: Optional[Point] = None) -> StructureCheck:
    """dc = 0; in dimension four dc is a top form and the residual a single polynomial."""
    dc = differential(h.alg, _torsion(h)).subs(point)
    return StructureCheck(dc.is_zero(), dc.coefficients())


def is_kahler(h: HermitianStructure, point: Optional[Point] = None) -> StructureCheck:
    d_omega = differential(h.alg, fundamental_form(h)).subs(point)
    return StructureCheck(d_omega.is_zero(), d_omega.coefficients())


def lee_form(h: HermitianStructure, point: Optional[Point] = None) -> Form:
    """θ = J d*ω; the metric must be numeric at the point unless it is the identity."""
    concrete = h.at(point)
    omega = fundamental_form(concrete)
    return j_action(concrete.J, codifferential(concrete.alg, concrete.g, omega))


def lee_coclosed(h: HermitianStructure, point: Optional[Point] = None) -> StructureCheck:
    concrete = h.at(point)
    theta = lee_form(concrete)
    value = codifferential(concrete.alg, concrete.g, theta)
    return StructureCheck(value.is_zero(), value.coefficients())


# Generic structural equations on the frame a, Ja, b, Jb.

COMPLEX_VARIABLES = symbols("x1 y1 y2 y3 z1 z2 u1 u2 u3 v1 v2 w1")
REAL_VARIABLES = symbols("x1 x2 x3 y2 z1 z2 z3 u1 u2 u3 v1 v2 w1 t")


def frame(n: int = 4) -> tuple[Form, ...]:
    """The 1-forms a, Ja, b, Jb as e1, e2, e3, e4."""
    return tuple(basis_form(n, i) for i in range(1, n + 1))


class GenericCase(NamedTuple):
    """Symbolic algebra and Hermitian structure of one structural case."""

    case: StructuralCase
    alg: LieAlgebra
    structure: HermitianStructure
    variables: tuple[sympy.Symbol, ...]


def generic_case(case: Union[StructuralCase, str]) -> GenericCase:
    case = StructuralCase.get_from_str(case)
    a, Ja, b, Jb = frame()
    if case == StructuralCase.COMPLEX:
        x1, y1, y2, y3, z1, z2, u1, u2, u3, v1, v2, w1 = COMPLEX_VARIABLES
        d = [
            zero_form(4, 2),
            (a ^ Ja) * x1,
            (a ^ Ja) * y1 + (a ^ b) * y2 + (a ^ Jb) * y3 + (b ^ Ja) * z1 + (Ja ^ Jb) * z2,
            (a ^ Ja) * u1 + (a ^ b) * u2 + (a ^ Jb) * u3 + (b ^ Ja) * v1 + (Ja ^ Jb) * v2 + (b ^ Jb) * w1,
        ]
        alg = LieAlgebra(d, name="generic complex case")
        return GenericCase(case, alg, HermitianStructure.standard(alg), COMPLEX_VARIABLES)

    x1, x2, x3, y2, z1, z2, z3, u1, u2, u3, v1, v2, w1, t = REAL_VARIABLES
    d = [
        zero_form(4, 2),
        (a ^ Ja) * x1 + ((a ^ b) + (Ja ^ Jb)) * x2 + ((a ^ Jb) + (b ^ Ja)) * x3 + (b ^ Jb) * y2,
        (a ^ Ja) * z1 + (a ^ b) * z2 + (a ^ Jb) * z3,
        (a ^ Ja) * u1 + (a ^ b) * u2 + (a ^ Jb) * u3 + (b ^ Ja) * v1 + (b ^ Jb) * v2 + (Ja ^ Jb) * w1,
    ]
    alg = LieAlgebra(d, name="generic real case")
    omega = (a ^ Ja) + (b ^ Jb) + ((a ^ b) + (Ja ^ Jb)) * t
    structure = HermitianStructure.from_fundamental_form(alg, standard_complex_structure(4), omega)
    return GenericCase(case, alg, structure, REAL_VARIABLES)


class GenericConditions(NamedTuple):
    integrability: tuple
    jacobi: tuple
    skt: ScalarPoly

    def generators(self) -> list[ScalarPoly]:
        return [*self.integrability, *self.jacobi, self.skt]


@lru_cache(maxsize=None)
def _generic_condition_polys(case_value: str) -> GenericConditions:
    generic = generic_case(case_value)
    integrability = tuple(dict.fromkeys(integrability_residual(generic.alg, generic.structure.J)))
    jacobi = tuple(dict.fromkeys(jacobi_check(generic.alg)))
    skt = is_skt(generic.structure).residual
    return GenericConditions(integrability, jacobi, skt)


def generic_condition_polys(case: Union[StructuralCase, str]) -> GenericConditions:
    """Integrability, Jacobi and SKT residual polynomials of a structural case."""
    return _generic_condition_polys(StructuralCase.get_from_str(case).value)


def _parse_list(items: Sequence[str]) -> tuple[ScalarPoly, ...]:
    return tuple(parse_scalar(s) for s in items)


COMPLEX_CONDITIONS = _parse_list([
    "y2 - z2 - u3 + v1",
    "y3 - z1 + u2 - v2",
    "x1*z1 - y3*v1 - z2*u2",
    "(x1 - y2 + u3)*z2 - y3*(z1 + v2)",
    "y2*w1",
    "y3*w1",
    "z1*w1",
    "z2*w1",
    "(x1 + y2 - u3)*v1 - (z1 + v2)*u2 + u1*w1",
    "x1*v2 + y1*w1 - y3*v1 - z2*u2",
    "(x1 + y2 + u3)*(y2 + u3) + (z1 - v2)**2 - u1*w1",
])

REAL_CONDITIONS = _parse_list([
    "z2 - u3 + v1",
    "z3 + u2 - w1",
    "x2*u2 - x3*(z2 - v1) - y2*u1",
    "(-x1 + z2 + u3)*y2 + x2**2 + x3*(x3 - v2)",
    "x2*u3 - x3*(w1 + z3) + y2*z1",
    "(x1 + z2 - u3)*v1 - (x3 - v2)*u1 - u2*w1",
    "x2*v2 - y2*w1",
    "x3*z1 + z3*v1",
    "y2*z1 + z3*v2",
    "x2*z1 + z3*w1",
    "x2*v1 - x3*w1",
    "x2*w1 + x3*v1 - y2*u1 + z2*v2",
    "x1*w1 - x2*u1 + z1*v2 - z3*v1",
    "(x1 + z2 + u3)*(-y2 + z2 + u3) + x2*(x2 - z1 + t*v2) + (x3 - u1 + t*(u2 - w1))*(x3 + v2) + w1**2",
])

COMPLEX_KAHLER_CONDITIONS = _parse_list(["y1", "u1", "u3 + y2", "v2 - z1"])

REAL_KAHLER_CONDITIONS = _parse_list([
    "x2 - z1 - t*(x1 + u3)",
    "x3 - u1 + t*u2",
    "y2 - z2 - u3 - t*x2",
    "w1 - t*(x3 + v2)",
])


class ListedCorrection(NamedTuple):
    """A listed quantity replaced by the one dc actually produces."""

    index: int
    printed: ScalarPoly
    corrected: ScalarPoly

    @property
    def difference(self) -> ScalarPoly:
        return normalize(self.printed - self.corrected)


# the printed real-case SKT quantity reads t*x2*v2 where dc has t*x2*z2
LISTED_CORRECTIONS: dict[StructuralCase, tuple[ListedCorrection, ...]] = {
    StructuralCase.COMPLEX: (),
    StructuralCase.REAL: (
        ListedCorrection(
            13,
            REAL_CONDITIONS[13],
            parse_scalar(
                "(x1 + z2 + u3)*(-y2 + z2 + u3) + x2*(x2 - z1 + t*z2) + (x3 - u1 + t*(u2 - w1))*(x3 + v2) + w1**2"
            ),
        ),
    ),
}


def listed_corrections(case: Union[StructuralCase, str]) -> tuple[ListedCorrection, ...]:
    return LISTED_CORRECTIONS[StructuralCase.get_from_str(case)]


def reference_conditions(case: Union[StructuralCase, str], corrected: bool = True) -> tuple[ScalarPoly, ...]:
    """The listed SKT conditions of a case, with listed_corrections applied unless corrected is False."""
    case = StructuralCase.get_from_str(case)
    listed = list(COMPLEX_CONDITIONS if case == StructuralCase.COMPLEX else REAL_CONDITIONS)
    if corrected:
        for fix in LISTED_CORRECTIONS[case]:
            listed[fix.index] = fix.corrected
    return tuple(listed)


def reference_kahler_conditions(case: Union[StructuralCase, str]) -> tuple[ScalarPoly, ...]:
    case = StructuralCase.get_from_str(case)
    return COMPLEX_KAHLER_CONDITIONS if case == StructuralCase.COMPLEX else REAL_KAHLER_CONDITIONS


class KahlerCheck(NamedTuple):
    """dω = 0 computed directly, against the listed Kähler conditions."""

    kahler: bool
    listed: bool

    @property
    def agrees(self) -> bool:
        return self.kahler == self.listed


def _full_assignment(generic: GenericCase, assignment: Mapping) -> dict[sympy.Symbol, ScalarPoly]:
    given = {sympy.Symbol(str(k)): to_scalar(v) for k, v in assignment.items()}
    return {s: given.get(s, sympy.Integer(0)) for s in generic.variables}


def kahler_condition_check(case: Union[StructuralCase, str], assignment: Mapping[str, ScalarInput]) -> KahlerCheck:
    """Decides Kähler at an SKT assignment of the generic structure constants.

    Variables missing from the assignment are set to zero.
    """
    generic = generic_case(case)
    point = _full_assignment(generic, assignment)
    conditions = generic_condition_polys(case)
    if any(substitute(p, point) != 0 for p in conditions.generators()):
        LOGGER.warning(f"Kähler check on an assignment that is not SKT: {assignment}")
    kahler = is_kahler(generic.structure, point).holds
    listed = all(substitute(p, point) == 0 for p in reference_kahler_conditions(case))
    return KahlerCheck(kahler, listed)


def kahler_polys(case: Union[StructuralCase, str]) -> tuple[ScalarPoly, ...]:
    """Coefficients of dω for the generic structure of a case."""
    generic = generic_case(case)
    return tuple(is_kahler(generic.structure).residuals)


class BiinvariantTorsion(NamedTuple):
    torsion: Form
    closed: bool


def ad_invariance_residuals(alg: LieAlgebra, m: Metric) -> list[ScalarPoly]:
    """g([X, Y], Z) + g(Y, [X, Z]) on basis triples."""
    n = alg.dim
    units = [[1 if k == i else 0 for k in range(n)] for i in range(n)]
    out = []
    for x in units:
        for y in units:
            for z in units:
                value = normalize(m.pairing(bracket(alg, x, y), z) + m.pairing(y, bracket(alg, x, z)))
                if value != 0:
                    out.append(value)
    return out


def biinvariant_torsion(alg: LieAlgebra, m: Metric) -> BiinvariantTorsion:
    """c(X, Y, Z) = -g([X, Y], Z) for an ad-invariant metric, and whether dc = 0.

    Raises:
        NotAdInvariantError: the metric is not ad-invariant.
    """
    residuals = ad_invariance_residuals(alg, m)
    if residuals:
        raise NotAdInvariantError(alg.name, residuals[0])
    n = alg.dim
    units = [[1 if k == i else 0 for k in range(n)] for i in range(n)]
    coeffs = {}
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                coeffs[(i + 1, j + 1, k + 1)] = -m.pairing(bracket(alg, units[i], units[j]), units[k])
    torsion = Form(n, 3, coeffs)
    return BiinvariantTorsion(torsion, differential(alg, torsion).is_zero())


def tilted_affaff_structure(t: ScalarInput = "t") -> HermitianStructure:
    """aff_R x aff_R with da = db = 0, d(Ja) = aJa, d(Jb) = bJb and ω = aJa + bJb + t(aJb + bJa)."""
    a, Ja, b, Jb = frame()
    alg = LieAlgebra([zero_form(4, 2), a ^ Ja, zero_form(4, 2), b ^ Jb], name="aff_R_x_aff_R")
    omega = (a ^ Ja) + (b ^ Jb) + ((a ^ Jb) + (b ^ Ja)) * to_scalar(t)
    return HermitianStructure.from_fundamental_form(alg, standard_complex_structure(4), omega)
