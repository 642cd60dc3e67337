import json

import pytest
import sympy

from src.library.exceptions import NotationSyntaxError, UnprintableCoefficientError
from src.library.exterior import Form, basis_form
from src.library.lie_structure import LieAlgebra
from src.library.notation import load_algebra, parse, to_notation

LAMBDA = sympy.Symbol("lambda")
D4P = "(0,lambda21+31,-21+lambda31,2lambda.41+32)"


def test_term_is_ordered_wedge():
    alg = parse("(0,0,21)")
    assert alg.dim == 3
    assert alg.d_basis[2] == -basis_form(3, 1, 2)
    assert alg.name == "(0,0,21)"


def test_coefficients_and_separator():
    alg = parse(D4P)
    assert alg.d_basis[3][(1, 4)] == -2 * LAMBDA
    assert alg.d_basis[3][(2, 3)] == -1
    assert alg.d_basis[1][(1, 2)] == -LAMBDA
    assert parse("(0,0,1/2.21)").d_basis[2][(1, 2)] == sympy.Rational(-1, 2)
    assert parse("(0,0,221)").d_basis[2][(1, 2)] == -2


def test_separator_is_optional_for_integer_coefficients():
    assert parse("(0,0,0,241+32)") == parse("(0,0,0,2.41+32)")
    assert parse("(0,0,0,1241)").d_basis[3][(1, 4)] == -12


def test_unicode_minus_and_greek():
    assert parse("(0,0,−21)") == parse("(0,0,-21)")
    assert parse("(0,λ21)") == parse("(0,lambda21)")


def test_product_suffix():
    alg = parse("(0,0,21)xR")
    assert alg.dim == 4
    assert alg.d_basis[3].is_zero()
    assert alg.d_basis[2] == -basis_form(4, 1, 2)


@pytest.mark.parametrize("text", ["(0,0,21)", "(0,21,-31,32)", D4P, "(0,21+31,31,2.41+32)", "(0,0,1/2.21)"])
def test_to_notation_round_trip(text):
    alg = parse(text)
    assert parse(to_notation(alg)) == alg


def test_to_notation_canonical():
    assert to_notation(parse("(0,0,21)")) == "(0,0,21)"
    assert to_notation(parse("(0,0,-12)")) == "(0,0,21)"


def test_unprintable_coefficient():
    alg = LieAlgebra([Form(2, 2), Form(2, 2, {(1, 2): LAMBDA**2})])
    with pytest.raises(UnprintableCoefficientError):
        to_notation(alg)


@pytest.mark.parametrize("text", ["0,0,21)", "(0,0,2)", "(0,0,11)", "(0,0,21", "(0,0,21)x", "(0,+21)", "(0,0,01)"])
def test_syntax_errors(text):
    with pytest.raises(NotationSyntaxError):
        parse(text)


def test_index_out_of_range_reports_position():
    with pytest.raises(NotationSyntaxError) as info:
        parse("(0,0,24)")
    assert info.value.position == 5


def test_load_algebra_accepts_json():
    alg = parse(D4P, name="d4p")
    again = load_algebra(json.dumps(alg.to_json()))
    assert again == alg
    assert load_algebra("(0,21)") == parse("(0,21)")
