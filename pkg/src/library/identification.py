"""Identification of solvable Lie algebras of dimension at most four.

Identifiers follow the standard normal forms: r3_lambda has |lambda| <= 1,
r3p_lambda has lambda >= 0, r4_mu_lambda has (mu, lambda) in the region
-1 <= mu <= lambda <= 1, mu, lambda != 0 and lambda < 0 when mu = -1,
r4p_mu_lambda has mu > 0, d4_lambda has lambda >= 1/2 and d4p_lambda has
lambda >= 0.
"""

from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass, field
from typing import Optional, Sequence

import sympy

from .exceptions import (
    AmbiguousIdentificationError,
    InadmissibleParametersError,
    UnrecognizedAlgebraError,
)
from .exterior import Form
from .lie_structure import (
    LieAlgebra,
    Subspace,
    ad_matrix,
    bracket_span,
    center,
    derived_algebra,
    derived_center,
    is_nilpotent,
    is_solvable,
    product_with_line,
    quotient,
    subalgebra,
    unimodular_kernel,
)
from .notation import parse
from .scalars import Point, ScalarPoly, normalize, poly_string, symbol, to_scalar

LOGGER = logging.getLogger(__name__)

PARAMETER_NAMES = {
    "R^n": ("n",),
    "r3_lambda": ("lambda",),
    "r3p_lambda": ("lambda",),
    "R_x_r3_lambda": ("lambda",),
    "R_x_r3p_lambda": ("lambda",),
    "r4_lambda": ("lambda",),
    "r4_mu_lambda": ("mu", "lambda"),
    "r4p_mu_lambda": ("mu", "lambda"),
    "d4_lambda": ("lambda",),
    "d4p_lambda": ("lambda",),
}

_TEMPLATES = {
    "aff_R": "(0,21)",
    "h3": "(0,0,21)",
    "r3": "(0,21+31,31)",
    "r3_lambda": "(0,21,lambda31)",
    "r3p_lambda": "(0,lambda21+31,-21+lambda31)",
    "aff_R_x_aff_R": "(0,21,0,43)",
    "n4": "(0,0,21,31)",
    "aff_C": "(0,0,31-42,41+32)",
    "r4": "(0,21+31,31+41,41)",
    "r4_lambda": "(0,21,lambda31+41,lambda41)",
    "r4_mu_lambda": "(0,21,mu31,lambda41)",
    "r4p_mu_lambda": "(0,mu21,lambda31+41,-31+lambda41)",
    "d4": "(0,21,-31,32)",
    "d4p_lambda": "(0,lambda21+31,-21+lambda31,2lambda.41+32)",
    "h4": "(0,21+31,31,2.41+32)",
}


@dataclass(frozen=True)
class AlgebraId:
    """Normal-form identifier of a solvable Lie algebra.

    Attributes:
        family:
            family tag, e.g. "h3", "r4_mu_lambda", "R_x_r3p_lambda".
        params:
            exact parameter values in the table conventions.
    """

    family: str
    params: tuple[ScalarPoly, ...] = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "params", tuple(normalize(to_scalar(p)) for p in self.params))

    def __str__(self) -> str:
        if not self.params:
            return self.family
        return f"{self.family}({', '.join(poly_string(p) for p in self.params)})"

    def same_as(self, other: AlgebraId) -> bool:
        if self.family != other.family or len(self.params) != len(other.params):
            return False
        return all(sympy.simplify(a - b) == 0 for a, b in zip(self.params, other.params))

    def to_json(self) -> dict:
        out: dict = {"id": self.family}
        for name, value in zip(PARAMETER_NAMES.get(self.family, ()), self.params):
            out[name] = poly_string(value)
        return out


def abelian_id(n: int) -> AlgebraId:
    return AlgebraId("R^n", (n,))


def _check_admissible(alg_id: AlgebraId) -> None:
    family, p = alg_id.family, alg_id.params
    expected = len(PARAMETER_NAMES.get(family, ()))
    if len(p) != expected:
        raise InadmissibleParametersError(family, f"expected {expected} parameter(s), got {len(p)}")
    base = family[len("R_x_"):] if family.startswith("R_x_") else family
    if base == "r3_lambda" and abs(p[0]) > 1:
        raise InadmissibleParametersError(family, "|lambda| <= 1 required")
    if base in ("r3p_lambda", "d4p_lambda") and p[0] < 0:
        raise InadmissibleParametersError(family, "lambda >= 0 required")
    if family == "d4_lambda" and p[0] < sympy.Rational(1, 2):
        raise InadmissibleParametersError(family, "lambda >= 1/2 required")
    if family == "r4p_mu_lambda" and p[0] <= 0:
        raise InadmissibleParametersError(family, "mu > 0 required")
    if family == "r4_mu_lambda" and not in_r4_region(p[0], p[1]):
        raise InadmissibleParametersError(family, "(mu, lambda) outside the admissible region")
    if family == "R^n" and p[0] < 0:
        raise InadmissibleParametersError(family, "dimension must be non-negative")


def in_r4_region(mu: ScalarPoly, lam: ScalarPoly) -> bool:
    if mu == 0 or lam == 0:
        return False
    if not (-1 <= mu <= 1 and -1 <= lam <= 1 and lam >= mu):
        return False
    return not (mu == -1 and lam >= 0)


TABLE_FAMILIES = (*_TEMPLATES, "d4_lambda")


def table_algebra(family: str) -> LieAlgebra:
    """Normal form of a table family, symbolic in its parameters."""
    if family == "d4_lambda":
        lam = symbol("lambda")
        # (0, λ21, (1-λ)31, 41+32)
        forms = [
            Form(4, 2),
            Form(4, 2, {(1, 2): -lam}),
            Form(4, 2, {(1, 3): lam - 1}),
            Form(4, 2, {(1, 4): -1, (2, 3): -1}),
        ]
        return LieAlgebra(forms, name=family)
    if family not in _TEMPLATES:
        raise UnrecognizedAlgebraError(family, "unknown family")
    return parse(_TEMPLATES[family], name=family)


def construct(alg_id: AlgebraId) -> LieAlgebra:
    """Builds the normal-form algebra of an identifier.

    Raises:
        InadmissibleParametersError: parameters outside the normal-form range.
        UnrecognizedAlgebraError: unknown family tag.
    """
    _check_admissible(alg_id)
    family = alg_id.family
    if family == "R^n":
        return LieAlgebra.abelian(int(alg_id.params[0]))
    if family.startswith("R_x_") and family[4:] in TABLE_FAMILIES:
        inner = construct(AlgebraId(family[4:], alg_id.params))
        return product_with_line(inner, name=str(alg_id))
    point = {symbol(n): v for n, v in zip(PARAMETER_NAMES.get(family, ()), alg_id.params)}
    return table_algebra(family).at(point).with_name(str(alg_id))


def _eigen_data(m: sympy.Matrix) -> list[tuple[ScalarPoly, int, int]]:
    """(eigenvalue, algebraic multiplicity, geometric multiplicity) triples, exact roots."""
    x = sympy.Dummy("x")
    counts = Counter(m.charpoly(x).all_roots())
    size = m.rows
    out = []
    for value, mult in counts.items():
        # repeated roots of a rational polynomial are rational here
        geometric = 1 if mult == 1 else size - (m - value * sympy.eye(size)).rank()
        out.append((value, mult, geometric))
    return sorted(out, key=lambda t: (float(sympy.re(t[0])), float(sympy.im(t[0]))))


def _restricted_ad(alg: LieAlgebra, derived: Subspace) -> sympy.Matrix:
    """ad(X) restricted to the derived algebra, for a basis vector X outside it."""
    n = alg.dim
    for i in range(n):
        x = [1 if k == i else 0 for k in range(n)]
        if not derived.contains(x):
            ad = ad_matrix(alg, x)
            columns = [derived.coordinates(list(ad * sympy.Matrix(v))) for v in derived.basis]
            return sympy.Matrix(columns).T
    raise UnrecognizedAlgebraError(alg.name, "derived algebra is the whole algebra")


def _is_abelian(alg: LieAlgebra, subspace: Subspace) -> bool:
    return bracket_span(alg, subspace, subspace).dim == 0


def _identify_dim3_codim1(m: sympy.Matrix) -> AlgebraId:
    """Dimension 3 with two-dimensional abelian derived algebra, M = ad X on g'."""
    tr, det = sympy.simplify(m.trace()), sympy.simplify(m.det())
    disc = sympy.simplify(tr**2 - 4 * det)
    if disc < 0:
        return AlgebraId("r3p_lambda", (sympy.simplify(abs(tr) / sympy.sqrt(-disc)),))
    if disc == 0:
        if m.is_diagonal():
            return AlgebraId("r3_lambda", (1,))
        return AlgebraId("r3")
    root = sympy.sqrt(disc)
    e1, e2 = (tr - root) / 2, (tr + root) / 2
    small, large = sorted((e1, e2), key=lambda e: (abs(e), e))
    return AlgebraId("r3_lambda", (sympy.simplify(small / large),))


def _identify_r3_family(m: sympy.Matrix) -> AlgebraId:
    """Dimension 4 with derived algebra R^3, M = ad X on g'."""
    data = _eigen_data(m)
    complex_pairs = [d for d in data if not d[0].is_real]
    if complex_pairs:
        real = [d for d in data if d[0].is_real][0][0]
        pair = complex_pairs[0][0]
        alpha, beta = sympy.re(pair), abs(sympy.im(pair))
        sign = 1 if real > 0 else -1
        return AlgebraId("r4p_mu_lambda", (sympy.simplify(abs(real) / beta), sympy.simplify(sign * alpha / beta)))
    if len(data) == 1:
        value, _, geometric = data[0]
        if geometric == 1:
            return AlgebraId("r4")
        if geometric == 2:
            return AlgebraId("r4_lambda", (1,))
        return AlgebraId("r4_mu_lambda", (1, 1))
    defective = [d for d in data if d[1] > d[2]]
    if defective:
        block = defective[0][0]
        simple = [d for d in data if d[0] != block][0][0]
        return AlgebraId("r4_lambda", (sympy.simplify(block / simple),))
    values = [d[0] for d in data for _ in range(d[1])]
    return AlgebraId("r4_mu_lambda", _normalize_r4_pair(values))


def _normalize_r4_pair(values: Sequence[ScalarPoly]) -> tuple[ScalarPoly, ScalarPoly]:
    """Scales three real eigenvalues so one becomes 1 and (mu, lambda) lands in the region."""
    top = max(abs(v) for v in values)
    for scale in sorted({v for v in values if abs(v) == top}, key=lambda v: -v):
        scaled = [sympy.simplify(v / scale) for v in values]
        scaled.remove(1)
        mu, lam = sorted(scaled)
        if in_r4_region(mu, lam):
            return mu, lam
    raise UnrecognizedAlgebraError("r4_mu_lambda", f"eigenvalues {list(values)} admit no normal form")


def _identify_h3_family(alg: LieAlgebra) -> AlgebraId:
    """Dimension 4 with derived algebra h3, read off g / z(g')."""
    reduced = identify(quotient(alg, derived_center(alg)))
    if reduced.family == "r3":
        return AlgebraId("h4")
    if reduced.family == "r3_lambda":
        kappa = reduced.params[0]
        if kappa == -1:
            return AlgebraId("d4")
        return AlgebraId("d4_lambda", (sympy.simplify(1 / (1 + kappa)),))
    if reduced.family == "r3p_lambda":
        return AlgebraId("d4p_lambda", reduced.params)
    raise UnrecognizedAlgebraError(alg.name, f"unexpected quotient {reduced}")


_UNIMODULAR_KERNELS = {
    "r3_lambda(-1)": "aff_R_x_aff_R",
    "h3": "d4_lambda",
    "r3p_lambda(0)": "aff_C",
}


def identify(alg: LieAlgebra, point: Optional[Point] = None) -> AlgebraId:
    """Identifies a solvable algebra of dimension at most four with its normal form.

    Raises:
        AmbiguousIdentificationError: free parameters remain after evaluation.
        UnrecognizedAlgebraError: dimension above four or not solvable.
    """
    concrete = alg.at(point)
    if concrete.free_symbols():
        raise AmbiguousIdentificationError(
            alg.name, f"free parameters {sorted(map(str, concrete.free_symbols()))} need values"
        )
    n = concrete.dim
    if n > 4:
        raise UnrecognizedAlgebraError(alg.name, f"dimension {n} is above four")
    if not is_solvable(concrete):
        raise UnrecognizedAlgebraError(alg.name, "algebra is not solvable")
    derived = derived_algebra(concrete)
    k = derived.dim
    if k == 0:
        return abelian_id(n)
    if n == 2:
        return AlgebraId("aff_R")
    if n == 3:
        if k == 1:
            return AlgebraId("h3") if is_nilpotent(concrete) else AlgebraId("r3_lambda", (0,))
        return _identify_dim3_codim1(_restricted_ad(concrete, derived))

    # n == 4
    if k == 1:
        return AlgebraId("R_x_h3") if is_nilpotent(concrete) else AlgebraId("R_x_r3_lambda", (0,))
    if k == 2:
        z = center(concrete)
        if z.dim == 0:
            kernel = identify(subalgebra(concrete, unimodular_kernel(concrete)))
            key = str(kernel)
            if key not in _UNIMODULAR_KERNELS:
                raise UnrecognizedAlgebraError(alg.name, f"unexpected unimodular kernel {kernel}")
            family = _UNIMODULAR_KERNELS[key]
            return AlgebraId(family, (1,) if family == "d4_lambda" else ())
        outside = [v for v in z.basis if not derived.contains(v)]
        if outside:
            reduced = identify(quotient(concrete, Subspace(n, [outside[0]])))
            return AlgebraId(f"R_x_{reduced.family}", reduced.params)
        return AlgebraId("n4") if is_nilpotent(concrete) else AlgebraId("r4_lambda", (0,))
    if _is_abelian(concrete, derived):
        return _identify_r3_family(_restricted_ad(concrete, derived))
    return _identify_h3_family(concrete)


def identify_subspace(alg: LieAlgebra, subspace: Subspace, point: Optional[Point] = None) -> AlgebraId:
    """Identifies a subalgebra, e.g. the unimodular kernel."""
    return identify(subalgebra(alg.at(point), subspace))
