"""The four-dimensional SKT solution families, the SKT table rows and the non-SKT list.

Every family is written on the frame a, Ja, b, Jb (e1..e4). Complex-case
families use the orthonormal structure J0 with the identity metric; the
real-case families carry ω = aJa + bJb + t(ab + JaJb).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Callable, Mapping, NamedTuple, Optional

import numpy as np
import sympy

from src.library.exceptions import InadmissibleParametersError
from src.library.exterior import Form, zero_form
from src.library.hermitian import HermitianStructure, frame, standard_complex_structure
from src.library.identification import AlgebraId, abelian_id, in_r4_region
from src.library.lie_structure import LieAlgebra
from src.library.misc import StructuralCase
from src.library.scalars import Point, ScalarInput, ScalarPoly, normalize, poly_string, substitute, symbol, to_scalar

LOGGER = logging.getLogger(__name__)

Params = dict[str, ScalarPoly]

HALF = sympy.Rational(1, 2)
CIRCLE_PARAMETER = "m"


def _is_numeric(value: ScalarPoly) -> bool:
    return not to_scalar(value).free_symbols


class _Constraint(NamedTuple):
    name: str
    test: Callable[[ScalarPoly], bool]
    text: str


def _positive(name: str) -> _Constraint:
    return _Constraint(name, lambda v: v > 0, f"{name} > 0")


def _negative(name: str) -> _Constraint:
    return _Constraint(name, lambda v: v < 0, f"{name} < 0")


def _nonnegative(name: str) -> _Constraint:
    return _Constraint(name, lambda v: v >= 0, f"{name} >= 0")


def _nonzero(name: str) -> _Constraint:
    return _Constraint(name, lambda v: v != 0, f"{name} != 0")


def _open_unit(name: str) -> _Constraint:
    return _Constraint(name, lambda v: -1 < v < 1, f"-1 < {name} < 1")


# seeded samplers of admissible rationals


def _draw_positive(rng: np.random.Generator) -> sympy.Rational:
    return sympy.Rational(int(rng.integers(1, 10)), int(rng.integers(1, 8)))


def _draw_nonnegative(rng: np.random.Generator) -> sympy.Rational:
    return sympy.Rational(int(rng.integers(0, 10)), int(rng.integers(1, 8)))


def _draw_any(rng: np.random.Generator) -> sympy.Rational:
    return sympy.Rational(int(rng.integers(-9, 10)), int(rng.integers(1, 8)))


def _draw_nonzero(rng: np.random.Generator) -> sympy.Rational:
    value = _draw_positive(rng)
    return value if rng.integers(0, 2) else -value


def _draw_unit_interval(rng: np.random.Generator) -> sympy.Rational:
    """A rational in the open interval (0, 1)."""
    den = int(rng.integers(2, 10))
    return sympy.Rational(int(rng.integers(1, den)), den)


def _draw_open_unit(rng: np.random.Generator) -> sympy.Rational:
    den = int(rng.integers(2, 10))
    return sympy.Rational(int(rng.integers(-den + 1, den)), den)


def circle_point(m: ScalarInput, sign: int = 1) -> tuple[ScalarPoly, ScalarPoly]:
    """Rational point ((1 - m²)/(1 + m²), ±2m/(1 + m²)) of the unit circle."""
    m = to_scalar(m)
    return normalize((1 - m**2) / (1 + m**2)), normalize(sign * 2 * m / (1 + m**2))


@dataclass(frozen=True)
class SktFamily:
    """One reduced family of SKT structural equations.

    Attributes:
        family_id:
            stable identifier used by the CLI and the reports.
        derived:
            the derived algebra g' the family belongs to ("0", "R", "R^2", "R^3", "h3").
        case:
            structural case of the frame.
        parameters:
            public parameter names, in order.
        constraints:
            admissibility ranges, checked on numeric values only.
        equations:
            (d a, d Ja, d b, d Jb) from the full parameter set.
        claimed:
            identifier the algebra is claimed to be isomorphic to.
        kahler:
            claimed Kähler predicate on numeric parameters.
        kahler_text:
            the same predicate in words, for reports.
        sampler:
            seeded draw of admissible values for all public parameters.
        circle:
            (first, second, sign) for two parameters tied by first² + second² = 1.
        derived_parameters:
            parameters fixed by the others, e.g. u1 = u3²/w1.
        metric_parameter:
            name of t in ω = aJa + bJb + t(ab + JaJb), if any.
        quotient_claim:
            identifier claimed for g / z(g') when g' = h3.
    """

    family_id: str
    derived: str
    case: StructuralCase
    parameters: tuple[str, ...]
    constraints: tuple[_Constraint, ...]
    equations: Callable[[Params], list[Form]]
    claimed: Callable[[Params], AlgebraId]
    kahler: Callable[[Params], bool]
    kahler_text: str
    sampler: Callable[[np.random.Generator], Params]
    circle: Optional[tuple[str, str, int]] = None
    derived_parameters: Callable[[Params], Params] = field(default=lambda p: {})
    metric_parameter: Optional[str] = None
    quotient_claim: Optional[Callable[[Params], AlgebraId]] = None


def _abelian(p: Params) -> list[Form]:
    return [zero_form(4, 2) for _ in range(4)]


def _one_dim_nilpotent(p: Params) -> list[Form]:
    a, Ja, b, Jb = frame()
    return [zero_form(4, 2), zero_form(4, 2), zero_form(4, 2), (a ^ Ja) * p["u1"]]


def _one_dim_r30(p: Params) -> list[Form]:
    a, Ja, b, Jb = frame()
    d_jb = (a ^ Ja) * p["u1"] + ((a ^ Jb) + (b ^ Ja)) * p["u3"] + (b ^ Jb) * p["w1"]
    return [zero_form(4, 2), zero_form(4, 2), zero_form(4, 2), d_jb]


def _complex_kernel(p: Params) -> list[Form]:
    a, Ja, b, Jb = frame()
    y3, u1 = p["y3"], p["u1"]
    return [zero_form(4, 2), zero_form(4, 2), (a ^ Jb) * y3, (a ^ Ja) * u1 - (a ^ b) * y3]


def _real_kernel(p: Params) -> list[Form]:
    a, Ja, b, Jb = frame()
    two_ell = 2 * p["ell"]
    return [
        zero_form(4, 2),
        (a ^ Ja) * (two_ell * p["sigma"]),
        zero_form(4, 2),
        (b ^ Jb) * (-two_ell * p["tau"]),
    ]


def _three_dim_abelian(p: Params) -> list[Form]:
    # the three abelian-g' families share one shape with u1 = 0
    a, Ja, b, Jb = frame()
    x1, y1, y2, y3 = p["x1"], p["y1"], p["y2"], p["y3"]
    return [
        zero_form(4, 2),
        (a ^ Ja) * x1,
        (a ^ Ja) * y1 + (a ^ b) * y2 + (a ^ Jb) * y3,
        (a ^ b) * (-y3) + (a ^ Jb) * y2,
    ]


def _h3_d4(p: Params) -> list[Form]:
    a, Ja, b, Jb = frame()
    x1, y1, u1 = p["x1"], p["y1"], p["u1"]
    return [
        zero_form(4, 2),
        (a ^ Ja) * x1,
        (a ^ Ja) * y1 - (a ^ b) * x1,
        (a ^ Ja) * u1 + (b ^ Ja) * x1,
    ]


def _h3_d42(p: Params) -> list[Form]:
    a, Ja, b, Jb = frame()
    x1, y1, u1 = p["x1"], p["y1"], p["u1"]
    return [
        zero_form(4, 2),
        (a ^ Ja) * x1,
        (a ^ Ja) * y1 - (a ^ b) * (HALF * x1),
        (a ^ Ja) * u1 + (a ^ Jb) * (HALF * x1) + (b ^ Ja) * x1,
    ]


def _rotated(p: Params) -> tuple[Form, Form]:
    """c = qa + rb and Jc = qJa + rJb."""
    a, Ja, b, Jb = frame()
    q, r = p["q"], p["r"]
    return a * q + b * r, Ja * q + Jb * r


def _h3_d4p0(p: Params) -> list[Form]:
    a, Ja, b, Jb = frame()
    c, Jc = _rotated(p)
    k, q, r, z3 = p["k"], p["q"], p["r"], p["z3"]
    return [
        zero_form(4, 2),
        (c ^ Jc) * (-k),
        (a ^ Jc) * (z3 / r),
        (a ^ b) * (-z3) + (c ^ Jc) * (k * q / r),
    ]


def _h3_final(p: Params) -> list[Form]:
    a, Ja, b, Jb = frame()
    c, Jc = _rotated(p)
    k, q, r, z3 = p["k"], p["q"], p["r"], p["z3"]
    return [
        zero_form(4, 2),
        ((a ^ Ja) + (c ^ Jc)) * (-k),
        (a ^ b) * (-HALF * k) + (a ^ Jc) * (z3 / r),
        (a ^ (Ja * q - Jb * r)) * (k / (2 * r)) - (a ^ b) * z3 + (c ^ Jc) * (k * q / r),
    ]


def _h3_final_claim(p: Params) -> AlgebraId:
    if p["z3"] == 0:
        return AlgebraId("d4_lambda", (HALF,))
    return AlgebraId("d4p_lambda", (abs(p["k"] / (2 * p["z3"])),))


def _h3_final_quotient(p: Params) -> AlgebraId:
    if p["z3"] == 0:
        return AlgebraId("r3_lambda", (1,))
    return AlgebraId("r3p_lambda", (abs(p["k"] / (2 * p["z3"])),))


def _sample_r30(rng: np.random.Generator) -> Params:
    return {"u3": _draw_nonnegative(rng), "w1": _draw_positive(rng)}


def _sample_real_kernel(rng: np.random.Generator) -> Params:
    sigma, tau = circle_point(_draw_unit_interval(rng), sign=-1)
    return {"ell": _draw_positive(rng), "sigma": sigma, "tau": tau, "t": _draw_open_unit(rng)}


def _sample_h3_real(rng: np.random.Generator, k_draw: Callable) -> Params:
    q, r = circle_point(_draw_positive(rng))
    return {"k": k_draw(rng), "q": q, "r": r, "z3": _draw_positive(rng)}


def _sample_h3_final(rng: np.random.Generator) -> Params:
    params = _sample_h3_real(rng, _draw_nonzero)
    params["z3"] = _draw_any(rng)
    return params


FAMILIES: tuple[SktFamily, ...] = (
    SktFamily(
        family_id="abelian",
        derived="0",
        case=StructuralCase.COMPLEX,
        parameters=(),
        constraints=(),
        equations=_abelian,
        claimed=lambda p: abelian_id(4),
        kahler=lambda p: True,
        kahler_text="always",
        sampler=lambda rng: {},
    ),
    SktFamily(
        family_id="oneDim_nilpotent",
        derived="R",
        case=StructuralCase.COMPLEX,
        parameters=("u1",),
        constraints=(_nonzero("u1"),),
        equations=_one_dim_nilpotent,
        claimed=lambda p: AlgebraId("R_x_h3"),
        kahler=lambda p: False,
        kahler_text="never",
        sampler=lambda rng: {"u1": _draw_nonzero(rng)},
    ),
    SktFamily(
        family_id="oneDim_r30",
        derived="R",
        case=StructuralCase.COMPLEX,
        parameters=("u3", "w1"),
        constraints=(_nonnegative("u3"), _positive("w1")),
        equations=_one_dim_r30,
        claimed=lambda p: AlgebraId("R_x_r3_lambda", (0,)),
        kahler=lambda p: p["u1"] == 0,
        kahler_text="u1 = 0",
        sampler=_sample_r30,
        derived_parameters=lambda p: {"u1": p["u3"] ** 2 / p["w1"]},
    ),
    SktFamily(
        family_id="complexKernel",
        derived="R^2",
        case=StructuralCase.COMPLEX,
        parameters=("y3", "u1"),
        constraints=(_positive("y3"), _nonnegative("u1")),
        equations=_complex_kernel,
        claimed=lambda p: AlgebraId("R_x_r3p_lambda", (0,)),
        kahler=lambda p: p["u1"] == 0,
        kahler_text="u1 = 0",
        sampler=lambda rng: {"y3": _draw_positive(rng), "u1": _draw_nonnegative(rng)},
    ),
    SktFamily(
        family_id="realKernel_affaff",
        derived="R^2",
        case=StructuralCase.REAL,
        parameters=("ell", "sigma", "tau", "t"),
        constraints=(_positive("ell"), _positive("sigma"), _negative("tau"), _open_unit("t")),
        equations=_real_kernel,
        claimed=lambda p: AlgebraId("aff_R_x_aff_R"),
        kahler=lambda p: p["t"] == 0,
        kahler_text="t = 0",
        sampler=_sample_real_kernel,
        circle=("sigma", "tau", -1),
        metric_parameter="t",
    ),
    SktFamily(
        family_id="threeDimAb_y2zero",
        derived="R^3",
        case=StructuralCase.COMPLEX,
        parameters=("x1", "y1", "y3"),
        constraints=(_positive("x1"), _nonnegative("y1"), _nonzero("y3")),
        equations=_three_dim_abelian,
        claimed=lambda p: AlgebraId("r4p_mu_lambda", (abs(p["x1"] / p["y3"]), 0)),
        kahler=lambda p: p["y1"] == 0,
        kahler_text="y1 = 0",
        sampler=lambda rng: {"x1": _draw_positive(rng), "y1": _draw_nonnegative(rng), "y3": _draw_nonzero(rng)},
        derived_parameters=lambda p: {"y2": sympy.Integer(0)},
    ),
    SktFamily(
        family_id="threeDimAb_y3zero",
        derived="R^3",
        case=StructuralCase.COMPLEX,
        parameters=("y1", "y2"),
        constraints=(_nonnegative("y1"), _negative("y2")),
        equations=_three_dim_abelian,
        claimed=lambda p: AlgebraId("r4_mu_lambda", (-HALF, -HALF)),
        kahler=lambda p: False,
        kahler_text="never",
        sampler=lambda rng: {"y1": _draw_nonnegative(rng), "y2": -_draw_positive(rng)},
        derived_parameters=lambda p: {"x1": -2 * p["y2"], "y3": sympy.Integer(0)},
    ),
    SktFamily(
        family_id="threeDimAb_general",
        derived="R^3",
        case=StructuralCase.COMPLEX,
        parameters=("y1", "y2", "y3"),
        constraints=(_nonnegative("y1"), _negative("y2"), _nonzero("y3")),
        equations=_three_dim_abelian,
        claimed=lambda p: AlgebraId("r4p_mu_lambda", (2 * abs(p["y2"] / p["y3"]), -abs(p["y2"] / p["y3"]))),
        kahler=lambda p: False,
        kahler_text="never",
        sampler=lambda rng: {"y1": _draw_nonnegative(rng), "y2": -_draw_positive(rng), "y3": _draw_nonzero(rng)},
        derived_parameters=lambda p: {"x1": -2 * p["y2"]},
    ),
    SktFamily(
        family_id="h3_d4",
        derived="h3",
        case=StructuralCase.COMPLEX,
        parameters=("x1", "y1", "u1"),
        constraints=(_positive("x1"),),
        equations=_h3_d4,
        claimed=lambda p: AlgebraId("d4"),
        kahler=lambda p: False,
        kahler_text="never",
        sampler=lambda rng: {"x1": _draw_positive(rng), "y1": _draw_any(rng), "u1": _draw_any(rng)},
        quotient_claim=lambda p: AlgebraId("r3_lambda", (-1,)),
    ),
    SktFamily(
        family_id="h3_d42",
        derived="h3",
        case=StructuralCase.COMPLEX,
        parameters=("x1", "y1", "u1"),
        constraints=(_positive("x1"),),
        equations=_h3_d42,
        claimed=lambda p: AlgebraId("d4_lambda", (2,)),
        kahler=lambda p: p["y1"] == 0 and p["u1"] == 0,
        kahler_text="y1 = u1 = 0",
        sampler=lambda rng: {"x1": _draw_positive(rng), "y1": _draw_any(rng), "u1": _draw_any(rng)},
        quotient_claim=lambda p: AlgebraId("r3_lambda", (-HALF,)),
    ),
    SktFamily(
        family_id="h3_d4p0",
        derived="h3",
        case=StructuralCase.REAL,
        parameters=("k", "q", "r", "z3"),
        constraints=(_positive("k"), _positive("r"), _positive("z3")),
        equations=_h3_d4p0,
        claimed=lambda p: AlgebraId("d4p_lambda", (0,)),
        kahler=lambda p: False,
        kahler_text="never",
        sampler=lambda rng: _sample_h3_real(rng, _draw_positive),
        circle=("q", "r", 1),
        quotient_claim=lambda p: AlgebraId("r3p_lambda", (0,)),
    ),
    SktFamily(
        family_id="h3_final",
        derived="h3",
        case=StructuralCase.REAL,
        parameters=("k", "q", "r", "z3"),
        constraints=(_nonzero("k"), _positive("r")),
        equations=_h3_final,
        claimed=_h3_final_claim,
        kahler=lambda p: p["q"] == 0,
        kahler_text="q = 0",
        sampler=_sample_h3_final,
        circle=("q", "r", 1),
        quotient_claim=_h3_final_quotient,
    ),
)

FAMILY_IDS = tuple(f.family_id for f in FAMILIES)


def get_family(family_id: str) -> SktFamily:
    for family in FAMILIES:
        if family.family_id == family_id:
            return family
    raise ValueError(f'Family not defined: "{family_id}"')


@dataclass(frozen=True)
class FamilyInstance:
    """A family at concrete or symbolic parameter values.

    Attributes:
        family_id:
            identifier of the family.
        params:
            all parameter values, derived ones included.
        alg:
            the Lie algebra on the frame a, Ja, b, Jb.
        structure:
            the SKT Hermitian structure.
        claimed_id:
            claimed isomorphism type, None while parameters are free.
        kahler_expected:
            claimed Kähler verdict, None while parameters are free.
    """

    family_id: str
    params: Params
    alg: LieAlgebra
    structure: HermitianStructure
    claimed_id: Optional[AlgebraId]
    kahler_expected: Optional[bool]

    @property
    def family(self) -> SktFamily:
        return get_family(self.family_id)

    @property
    def is_numeric(self) -> bool:
        return not self.alg.free_symbols() and not self.structure.g.free_symbols()

    def public_params(self) -> Params:
        return {name: self.params[name] for name in self.family.parameters}

    def at(self, point: Optional[Point]) -> FamilyInstance:
        """Substitutes a point into the free parameters and rebuilds the instance."""
        return build_family(self.family_id, {k: substitute(v, point) for k, v in self.public_params().items()})

    def to_json(self) -> dict:
        return {
            "family": self.family_id,
            "params": {k: poly_string(v) for k, v in sorted(self.params.items())},
            "claimed": self.claimed_id.to_json() if self.claimed_id else None,
            "structure": self.structure.to_json(),
        }


def _resolve_circle(family: SktFamily, given: Params) -> None:
    first, second, sign = family.circle
    present = [name for name in (first, second) if name in given]
    if CIRCLE_PARAMETER in given and present:
        raise InadmissibleParametersError(family.family_id, f"give either {CIRCLE_PARAMETER} or ({first}, {second})")
    if len(present) == 1:
        raise InadmissibleParametersError(family.family_id, f"{first} and {second} must be given together")
    if not present:
        m = given.pop(CIRCLE_PARAMETER, symbol(CIRCLE_PARAMETER))
        given[first], given[second] = circle_point(m, sign)
        return
    x, y = given[first], given[second]
    if _is_numeric(x) and _is_numeric(y) and normalize(x**2 + y**2) != 1:
        raise InadmissibleParametersError(family.family_id, f"{first}^2 + {second}^2 = 1 required")


def build_family(family_id: str, params: Optional[Mapping[str, ScalarInput]] = None) -> FamilyInstance:
    """Instantiates a family; parameters left out stay symbolic.

    Args:
        family_id:
            one of FAMILY_IDS.
        params:
            parameter name -> exact value. Circle-constrained pairs may be
            given through the single rational parameter "m" instead.

    Raises:
        ValueError: unknown family.
        InadmissibleParametersError: unknown name or value out of range.
    """
    family = get_family(family_id)
    given: Params = {str(k): normalize(to_scalar(v)) for k, v in (params or {}).items()}
    allowed = set(family.parameters) | ({CIRCLE_PARAMETER} if family.circle else set())
    unknown = sorted(set(given) - allowed)
    if unknown:
        raise InadmissibleParametersError(family_id, f"unknown parameter(s) {', '.join(unknown)}")
    if family.circle:
        _resolve_circle(family, given)
    values: Params = {name: given.get(name, symbol(name)) for name in family.parameters}
    for constraint in family.constraints:
        value = values[constraint.name]
        if _is_numeric(value) and not constraint.test(value):
            raise InadmissibleParametersError(family_id, f"{constraint.text} required, got {poly_string(value)}")
    values.update({k: normalize(v) for k, v in family.derived_parameters(values).items()})

    name = family_id
    if family.parameters:
        name += "(" + ", ".join(f"{k}={poly_string(values[k])}" for k in family.parameters) + ")"
    alg = LieAlgebra(family.equations(values), name=name)
    if family.metric_parameter:
        a, Ja, b, Jb = frame()
        omega = (a ^ Ja) + (b ^ Jb) + ((a ^ b) + (Ja ^ Jb)) * values[family.metric_parameter]
        structure = HermitianStructure.from_fundamental_form(alg, standard_complex_structure(4), omega)
    else:
        structure = HermitianStructure.standard(alg)

    numeric = all(_is_numeric(v) for v in values.values())
    LOGGER.debug(f"Built {name} ({family.case.value} case).")
    return FamilyInstance(
        family_id=family_id,
        params=values,
        alg=alg,
        structure=structure,
        claimed_id=family.claimed(values) if numeric else None,
        kahler_expected=family.kahler(values) if numeric else None,
    )


def sample_family(family_id: str, rng: np.random.Generator, fixed: Optional[Mapping[str, ScalarInput]] = None) -> FamilyInstance:
    """Draws an admissible instance; numeric values in `fixed` are kept."""
    family = get_family(family_id)
    params = family.sampler(rng)
    for k, v in (fixed or {}).items():
        if k in params and _is_numeric(to_scalar(v)):
            params[k] = to_scalar(v)
    return build_family(family_id, params)


# SKT table


class Witness(NamedTuple):
    """A family instance claimed to realise an SKT table row."""

    family_id: str
    params: dict

    def build(self) -> FamilyInstance:
        return build_family(self.family_id, self.params)


@dataclass(frozen=True)
class Table4Row:
    """One algebra of the SKT table.

    Attributes:
        derived:
            the derived algebra g'.
        label:
            stable row label.
        algebra:
            identifier as a function of the row parameter λ (ignored when not parametric).
        parametric:
            whether the row is a one-parameter family in λ > 0.
        moduli_dim, moduli_components:
            moduli metadata, recorded but not verified.
        kahler_exists:
            whether some SKT structure on the algebra is Kähler.
        betti:
            (b1, b2, b3, b4).
        unimodular:
            whether χ = tr ad vanishes.
        witnesses:
            family instances realising the row, as a function of λ.
    """

    derived: str
    label: str
    algebra: Callable[[ScalarPoly], AlgebraId]
    parametric: bool
    moduli_dim: int
    moduli_components: int
    kahler_exists: bool
    betti: tuple[int, int, int, int]
    unimodular: bool
    witnesses: Callable[[ScalarPoly], tuple[Witness, ...]]


_ONE = sympy.Integer(1)
_THREE_FIFTHS, _FOUR_FIFTHS = sympy.Rational(3, 5), sympy.Rational(4, 5)

TABLE4: tuple[Table4Row, ...] = (
    Table4Row(
        "0", "R4", lambda lam: abelian_id(4), False, 0, 1, True, (4, 6, 4, 1), True,
        lambda lam: (Witness("abelian", {}),),
    ),
    Table4Row(
        "R", "R_x_h3", lambda lam: AlgebraId("R_x_h3"), False, 0, 1, False, (3, 4, 3, 1), True,
        lambda lam: (Witness("oneDim_nilpotent", {"u1": 1}),),
    ),
    Table4Row(
        "R", "R_x_r3_0", lambda lam: AlgebraId("R_x_r3_lambda", (0,)), False, 1, 1, True, (3, 3, 1, 0), False,
        lambda lam: (
            Witness("oneDim_r30", {"u3": 1, "w1": 1}),
            Witness("oneDim_r30", {"u3": 0, "w1": 1}),
        ),
    ),
    Table4Row(
        "R^2", "R_x_r3p_0", lambda lam: AlgebraId("R_x_r3p_lambda", (0,)), False, 1, 1, True, (2, 2, 2, 1), True,
        lambda lam: (
            Witness("complexKernel", {"y3": 1, "u1": 1}),
            Witness("complexKernel", {"y3": 1, "u1": 0}),
        ),
    ),
    Table4Row(
        "R^2", "aff_R_x_aff_R", lambda lam: AlgebraId("aff_R_x_aff_R"), False, 2, 1, True, (2, 1, 0, 0), False,
        lambda lam: (
            Witness("realKernel_affaff", {"ell": 1, "sigma": _THREE_FIFTHS, "tau": -_FOUR_FIFTHS, "t": HALF}),
            Witness("realKernel_affaff", {"ell": 1, "sigma": _THREE_FIFTHS, "tau": -_FOUR_FIFTHS, "t": 0}),
        ),
    ),
    Table4Row(
        "R^3", "r4p_lambda_0", lambda lam: AlgebraId("r4p_mu_lambda", (lam, 0)), True, 1, 2, True, (1, 1, 1, 0), False,
        lambda lam: (
            Witness("threeDimAb_y2zero", {"x1": lam, "y1": 1, "y3": 1}),
            Witness("threeDimAb_y2zero", {"x1": lam, "y1": 0, "y3": 1}),
        ),
    ),
    Table4Row(
        "R^3", "r4_-1/2_-1/2", lambda lam: AlgebraId("r4_mu_lambda", (-HALF, -HALF)), False, 1, 1, False, (1, 0, 1, 1), True,
        lambda lam: (Witness("threeDimAb_y3zero", {"y1": 0, "y2": -1}),),
    ),
    Table4Row(
        "R^3", "r4p_2lambda_-lambda", lambda lam: AlgebraId("r4p_mu_lambda", (2 * lam, -lam)), True, 1, 2, False,
        (1, 0, 1, 1), True,
        lambda lam: (Witness("threeDimAb_general", {"y1": 0, "y2": -lam, "y3": 1}),),
    ),
    Table4Row(
        "h3", "d4", lambda lam: AlgebraId("d4"), False, 2, 1, False, (1, 0, 1, 1), True,
        lambda lam: (Witness("h3_d4", {"x1": 1, "y1": 0, "u1": 0}),),
    ),
    Table4Row(
        "h3", "d4_2", lambda lam: AlgebraId("d4_lambda", (2,)), False, 2, 1, True, (1, 1, 1, 0), False,
        lambda lam: (
            Witness("h3_d42", {"x1": 1, "y1": 1, "u1": 0}),
            Witness("h3_d42", {"x1": 1, "y1": 0, "u1": 0}),
        ),
    ),
    Table4Row(
        "h3", "d4p_0", lambda lam: AlgebraId("d4p_lambda", (0,)), False, 2, 1, False, (1, 0, 1, 1), True,
        lambda lam: (Witness("h3_d4p0", {"k": 1, "q": _THREE_FIFTHS, "r": _FOUR_FIFTHS, "z3": 1}),),
    ),
    Table4Row(
        "h3", "d4_1/2", lambda lam: AlgebraId("d4_lambda", (HALF,)), False, 1, 1, True, (1, 0, 0, 0), False,
        lambda lam: (
            Witness("h3_final", {"k": 1, "q": _THREE_FIFTHS, "r": _FOUR_FIFTHS, "z3": 0}),
            Witness("h3_final", {"k": 1, "q": 0, "r": 1, "z3": 0}),
        ),
    ),
    Table4Row(
        "h3", "d4p_lambda", lambda lam: AlgebraId("d4p_lambda", (lam,)), True, 1, 1, True, (1, 0, 0, 0), False,
        lambda lam: (
            Witness("h3_final", {"k": 2 * lam, "q": _THREE_FIFTHS, "r": _FOUR_FIFTHS, "z3": 1}),
            Witness("h3_final", {"k": 2 * lam, "q": 0, "r": 1, "z3": 1}),
        ),
    ),
)


def table4_row(label: str) -> Table4Row:
    for row in TABLE4:
        if row.label == label:
            return row
    raise ValueError(f'SKT table row not defined: "{label}"')


# algebras with complex structures but no SKT structure


@dataclass(frozen=True)
class NonSktEntry:
    """A (family of) algebra(s) admitting complex structures but no SKT metric.

    Attributes:
        family:
            AlgebraId family tag.
        constraint:
            parameter constraints on top of the normal-form range.
        samples:
            admissible identifiers satisfying the constraint.
    """

    family: str
    constraint: str
    samples: tuple[AlgebraId, ...]

    def contains(self, alg_id: AlgebraId) -> bool:
        """Whether an identifier of this family satisfies the constraint."""
        if alg_id.family != self.family:
            return False
        return _NON_SKT_TESTS[self.family](alg_id.params)


def _r4_mu_lambda_non_skt(p: tuple) -> bool:
    mu, lam = p
    return in_r4_region(mu, lam) and ((mu == lam and mu != -HALF) or lam == 1)


_NON_SKT_TESTS: dict[str, Callable[[tuple], bool]] = {
    "R_x_r3_lambda": lambda p: p[0] == 1,
    "R_x_r3p_lambda": lambda p: p[0] > 0,
    "aff_C": lambda p: True,
    "r4_lambda": lambda p: p[0] == 1,
    "r4_mu_lambda": _r4_mu_lambda_non_skt,
    "r4p_mu_lambda": lambda p: p[0] > 0 and p[1] != 0 and p[1] != -p[0] / 2,
    "d4_lambda": lambda p: p[0] >= HALF and p[0] not in (HALF, 2),
    "h4": lambda p: True,
}


def _ids(family: str, *params: tuple) -> tuple[AlgebraId, ...]:
    return tuple(AlgebraId(family, tuple(sympy.Rational(x) for x in p)) for p in params)


NON_SKT: tuple[NonSktEntry, ...] = (
    NonSktEntry("R_x_r3_lambda", "lambda = 1", _ids("R_x_r3_lambda", ("1",))),
    NonSktEntry("R_x_r3p_lambda", "lambda > 0", _ids("R_x_r3p_lambda", ("1/2",), ("1",), ("2",))),
    NonSktEntry("aff_C", "", (AlgebraId("aff_C"),)),
    NonSktEntry("r4_lambda", "lambda = 1", _ids("r4_lambda", ("1",))),
    NonSktEntry(
        "r4_mu_lambda",
        "mu = lambda != -1/2, or mu <= lambda = 1",
        _ids("r4_mu_lambda", ("1/2", "1/2"), ("-1/3", "-1/3"), ("-1/2", "1")),
    ),
    NonSktEntry(
        "r4p_mu_lambda",
        "lambda != 0 and lambda != -mu/2",
        _ids("r4p_mu_lambda", ("1", "1"), ("1", "-1"), ("2", "1/3")),
    ),
    NonSktEntry("d4_lambda", "lambda != 1/2, 2", _ids("d4_lambda", ("1",), ("3/2",), ("3",))),
    NonSktEntry("h4", "", (AlgebraId("h4"),)),
)


def non_skt_list() -> tuple[NonSktEntry, ...]:
    return NON_SKT


def admits_skt(alg_id: AlgebraId) -> Optional[bool]:
    """Claimed SKT existence for a four-dimensional identifier; None if the tables are silent."""
    if any(entry.contains(alg_id) for entry in NON_SKT):
        return False
    for row in TABLE4:
        if row.parametric:
            if alg_id.family == row.algebra(symbol("lambda")).family:
                lam = _row_parameter(row, alg_id)
                if lam is not None and lam > 0:
                    return True
        elif alg_id.same_as(row.algebra(_ONE)):
            return True
    return None


def _row_parameter(row: Table4Row, alg_id: AlgebraId) -> Optional[ScalarPoly]:
    """λ with row.algebra(λ) == alg_id, if any."""
    lam = symbol("lambda")
    template = row.algebra(lam)
    if len(template.params) != len(alg_id.params):
        return None
    solutions = sympy.solve([t - v for t, v in zip(template.params, alg_id.params)], lam, dict=True)
    return solutions[0][lam] if solutions else None


def witness_quotient_id(instance: FamilyInstance) -> Optional[AlgebraId]:
    """Claimed type of g / z(g') for the h3 families."""
    claim = instance.family.quotient_claim
    if claim is None or instance.claimed_id is None:
        return None
    return claim(instance.params)


# admissible draws from the algebra tables


_TABLE_SAMPLERS: dict[str, Callable[[np.random.Generator], tuple]] = {
    "r3_lambda": lambda rng: (_draw_open_unit(rng),),
    "r3p_lambda": lambda rng: (_draw_nonnegative(rng),),
    "r4_lambda": lambda rng: (_draw_any(rng),),
    "r4p_mu_lambda": lambda rng: (_draw_positive(rng), _draw_any(rng)),
    "d4_lambda": lambda rng: (HALF + _draw_nonnegative(rng),),
    "d4p_lambda": lambda rng: (_draw_nonnegative(rng),),
}


def _draw_r4_region(rng: np.random.Generator) -> tuple:
    while True:
        mu, lam = sorted((_draw_open_unit(rng), _draw_open_unit(rng)))
        if in_r4_region(mu, lam):
            return mu, lam


_TABLE_SAMPLERS["r4_mu_lambda"] = _draw_r4_region


def sample_table_id(family: str, rng: np.random.Generator) -> AlgebraId:
    """An admissible identifier of a table family (parameter-free families pass through)."""
    sampler = _TABLE_SAMPLERS.get(family)
    return AlgebraId(family, sampler(rng) if sampler else ())
