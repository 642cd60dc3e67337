import sympy
import pytest
from hypothesis import given, settings, strategies as st

from src.library.exceptions import ArgTypeError
from src.library.scalars import (
    is_zero,
    normalize,
    parse_scalar,
    poly_linear_membership,
    poly_string,
    substitute,
    symbol,
    to_scalar,
)

x, y, z = sympy.symbols("x y z")


def test_parse_rational_and_symbols():
    assert parse_scalar("3/2") == sympy.Rational(3, 2)
    assert symbol("lambda") in parse_scalar("2*lambda - 1").free_symbols
    assert parse_scalar("2*λ") == 2 * symbol("lambda")
    assert parse_scalar("−1") == -1


def test_to_scalar_rejects_bool():
    with pytest.raises(ArgTypeError):
        to_scalar(True)


def test_normalize_cancels_common_factors():
    assert normalize((x**2 - 1) / (x - 1)) == x + 1
    assert is_zero((x + 1) ** 2 - x**2 - 2 * x - 1)


def test_substitute_accepts_names():
    assert substitute(x * y + 1, {"x": 2, "y": "1/2"}) == 2


def test_poly_string_is_deterministic():
    assert poly_string(y + x**2) == poly_string(x**2 + y)
    assert is_zero(parse_scalar(poly_string((x + 1) / (y - 2))) - (x + 1) / (y - 2))


def test_poly_string_prints_rationals_plainly():
    assert poly_string(sympy.Rational(1, 3)) == "1/3"
    assert poly_string(sympy.Rational(-3, 2)) == "-3/2"
    assert poly_string(sympy.Integer(4)) == "4"
    assert "(" not in poly_string(x / 3)
    assert is_zero(parse_scalar(poly_string(x / 3)) - x / 3)
    assert poly_string(1 / (x + 1)) == "(1)/(x + 1)"


def test_membership_with_certificate():
    result = poly_linear_membership(x * y, [x], 2)
    assert result.member
    assert result.certificate == {0: y}


def test_membership_respects_degree_bound():
    assert not poly_linear_membership(x**2 * y, [x], 2)
    assert poly_linear_membership(x**2 * y, [x], 3)


def test_constant_is_not_in_proper_ideal():
    assert not poly_linear_membership(sympy.Integer(1), [x, y], 3)


@settings(max_examples=25, deadline=None)
@given(st.integers(-5, 5), st.integers(-5, 5), st.integers(-5, 5))
def test_combinations_are_members(a, b, c):
    generators = [x + y, y * z]
    target = (a * x + b) * generators[0] + c * generators[1]
    result = poly_linear_membership(target, generators, 2, [x, y, z])
    assert result.member
    rebuilt = sum((m * generators[i] for i, m in result.certificate.items()), sympy.Integer(0))
    assert is_zero(rebuilt - target)
