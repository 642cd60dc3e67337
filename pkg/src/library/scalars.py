"""Exact scalars: rationals and multivariate polynomials (with rational-function closure).

All symbolic computation in the package uses sympy expressions that are
polynomials (or quotients of polynomials, for rationally parametrised
families) with rational coefficients. Floating point never enters here.
"""

from __future__ import annotations

import itertools
import re
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence, Union

import sympy
from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.orderings import monomial_key

from .exceptions import ArgTypeError

ScalarPoly = sympy.Expr
Rational = sympy.Rational
ScalarInput = Union[int, Fraction, str, sympy.Basic]
Point = Mapping[Union[str, sympy.Symbol], ScalarInput]

# "lambda" is a python keyword, so it is swapped out while sympy parses
_KEYWORD_NAMES = {"lambda": "lambda_"}
_RE_KEYWORD = re.compile(r"\b(" + "|".join(_KEYWORD_NAMES) + r")\b")
_SYMBOL_ALIASES = {"λ": "lambda", "μ": "mu"}


def symbol(name: str) -> sympy.Symbol:
    """Returns the parameter symbol for a name (Greek letters normalised to ASCII)."""
    return sympy.Symbol(_SYMBOL_ALIASES.get(name, name))


def symbols(names: str) -> tuple[sympy.Symbol, ...]:
    return tuple(symbol(n) for n in names.replace(",", " ").split())


def to_scalar(value: ScalarInput) -> ScalarPoly:
    """Converts user input to an exact scalar.

    Args:
        value:
            int, Fraction, sympy object, or a string such as "3/2" or "2*lambda - 1".
    """
    if isinstance(value, bool):
        raise ArgTypeError(var_name="value", type_given=type(value), type_expected="exact scalar")
    if isinstance(value, sympy.Basic):
        return value
    if isinstance(value, int):
        return sympy.Integer(value)
    if isinstance(value, Fraction):
        return sympy.Rational(value.numerator, value.denominator)
    if isinstance(value, str):
        return parse_scalar(value)
    raise ArgTypeError(var_name="value", type_given=type(value), type_expected=str(ScalarInput))


def parse_scalar(text: str) -> ScalarPoly:
    """Parses a poly-string as written by `poly_string`."""
    for greek, ascii_name in _SYMBOL_ALIASES.items():
        text = text.replace(greek, ascii_name)
    text = text.replace("−", "-")
    text = _RE_KEYWORD.sub(lambda m: _KEYWORD_NAMES[m.group(1)], text)
    local_dict = {alias: sympy.Symbol(name) for name, alias in _KEYWORD_NAMES.items()}
    return sympy.sympify(text, locals=local_dict, rational=True)


def normalize(value: ScalarInput) -> ScalarPoly:
    """Canonical form: expanded numerator over expanded denominator, common factors cancelled."""
    expr = to_scalar(value)
    if expr.is_Rational:
        return expr
    return sympy.cancel(sympy.together(expr))


def is_zero(value: ScalarInput) -> bool:
    return normalize(value) == 0


def substitute(value: ScalarPoly, point: Optional[Point]) -> ScalarPoly:
    if not point:
        return value
    subs = {symbol(str(k)) if not isinstance(k, sympy.Symbol) else k: to_scalar(v) for k, v in point.items()}
    return normalize(value.subs(subs))


def poly_string(value: ScalarPoly) -> str:
    """Deterministic string with graded lexicographic monomial order."""
    expr = normalize(value)
    num, den = sympy.fraction(expr)
    if den.is_number:
        return sympy.sstr(expr, order="grlex")
    s_num = sympy.sstr(num, order="grlex")
    return f"({s_num})/({sympy.sstr(den, order='grlex')})"


def free_symbols(values: Iterable[ScalarPoly]) -> list[sympy.Symbol]:
    out: set[sympy.Symbol] = set()
    for v in values:
        out |= to_scalar(v).free_symbols
    return sorted(out, key=str)


class MembershipResult:
    """Outcome of a degree-bounded linear membership test.

    Attributes:
        member:
            whether the target lies in the degree-bounded span.
        certificate:
            generator index -> multiplier polynomial, with target = sum(mult * gen).
    """

    def __init__(self, member: bool, certificate: Optional[dict[int, ScalarPoly]] = None):
        self.member = member
        self.certificate = certificate or {}

    def __bool__(self) -> bool:
        return self.member

    def __repr__(self) -> str:
        return f"MembershipResult(member={self.member}, certificate={self.certificate})"


def _monomials_up_to(n_vars: int, degree: int) -> list[tuple[int, ...]]:
    out: list[tuple[int, ...]] = []
    for deg in range(degree + 1):
        for combo in itertools.combinations_with_replacement(range(n_vars), deg):
            exps = [0] * n_vars
            for i in combo:
                exps[i] += 1
            out.append(tuple(exps))
    return out


def _as_poly(expr: ScalarPoly, gens: Sequence[sympy.Symbol]) -> sympy.Poly:
    num, den = sympy.fraction(normalize(expr))
    if den.free_symbols:
        raise ArgTypeError(var_name="generator", type_given=type(expr), type_expected="polynomial")
    return sympy.Poly(num / den, *gens, domain=QQ)


def poly_linear_membership(
    target: ScalarPoly,
    generators: Sequence[ScalarPoly],
    degree_bound: int,
    variables: Optional[Sequence[sympy.Symbol]] = None,
) -> MembershipResult:
    """Decides whether target lies in span{m * g : deg(m * g) <= degree_bound}.

    The decision is exact linear algebra over QQ; on success the certificate
    gives one multiplier polynomial per generator.

    Args:
        target:
            polynomial to test.
        generators:
            generating polynomials.
        degree_bound:
            maximal total degree of the products m * g.
        variables:
            ordered variable set; defaults to all free symbols, sorted by name.
    """
    if variables is None:
        variables = free_symbols([target, *generators])
    gens = list(variables)
    if not gens:
        # constants: target is a member iff it is zero or some generator is a nonzero constant
        t = normalize(target)
        nonzero = [i for i, g in enumerate(generators) if not is_zero(g)]
        if t == 0:
            return MembershipResult(True, {})
        if nonzero:
            i = nonzero[0]
            return MembershipResult(True, {i: normalize(t / to_scalar(generators[i]))})
        return MembershipResult(False)

    target_poly = _as_poly(target, gens)
    if target_poly.is_zero:
        return MembershipResult(True, {})

    columns: list[tuple[int, tuple[int, ...], dict[tuple[int, ...], object]]] = []
    for idx, g in enumerate(generators):
        if is_zero(g):
            continue
        gp = _as_poly(g, gens)
        room = degree_bound - gp.total_degree()
        if room < 0:
            continue
        for mono in _monomials_up_to(len(gens), room):
            col = {tuple(a + b for a, b in zip(m, mono)): c for m, c in gp.terms()}
            columns.append((idx, mono, col))

    row_index: dict[tuple[int, ...], int] = {}
    for _, _, col in columns:
        for m in col:
            row_index.setdefault(m, len(row_index))
    for m, _ in target_poly.terms():
        if m not in row_index:
            # a monomial no product can reach
            return MembershipResult(False)

    ordered = sorted(row_index, key=monomial_key("grlex"), reverse=True)
    row_index = {m: i for i, m in enumerate(ordered)}
    n_rows, n_cols = len(row_index), len(columns) + 1
    rows: dict[int, dict[int, object]] = {}
    for j, (_, _, col) in enumerate(columns):
        for m, c in col.items():
            rows.setdefault(row_index[m], {})[j] = QQ.convert(c)
    for m, c in target_poly.terms():
        rows.setdefault(row_index[m], {})[n_cols - 1] = QQ.convert(c)

    matrix = DomainMatrix(rows, (n_rows, n_cols), QQ)
    reduced, pivots = matrix.rref()
    if n_cols - 1 in pivots:
        return MembershipResult(False)

    sdm = reduced.to_sparse().rep
    certificate: dict[int, ScalarPoly] = {}
    for r, p in enumerate(pivots):
        value = sdm.get(r, {}).get(n_cols - 1)
        if value is None:
            continue
        idx, mono, _ = columns[p]
        term = QQ.to_sympy(value) * sympy.Mul(*[v**e for v, e in zip(gens, mono)])
        certificate[idx] = certificate.get(idx, sympy.Integer(0)) + term
    return MembershipResult(True, {k: normalize(v) for k, v in certificate.items()})
