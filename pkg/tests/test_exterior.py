import pytest
import sympy
from hypothesis import given, settings, strategies as st

from src.library.exterior import (
    Form,
    Metric,
    basis_form,
    codifferential,
    differential,
    hodge_star,
    j_action,
    one_form,
    pullback,
    wedge,
)
from src.library.hermitian import standard_complex_structure
from src.library.notation import parse

coefficients = st.integers(-6, 6)
covectors = st.lists(coefficients, min_size=4, max_size=4)


def e(*indices):
    return basis_form(4, *indices)


def test_basis_form_sign():
    assert basis_form(4, 2, 1) == -e(1, 2)
    assert basis_form(4, 1, 1).is_zero()


def test_rejects_unsorted_index():
    with pytest.raises(ValueError):
        Form(4, 2, {(2, 1): 1})


@settings(max_examples=30, deadline=None)
@given(covectors, covectors)
def test_one_forms_anticommute(u, v):
    a, b = one_form(u), one_form(v)
    assert wedge(a, b) == -wedge(b, a)
    assert wedge(a, a).is_zero()


def test_differential_on_aff_r():
    alg = parse("(0,21)")
    assert differential(alg, basis_form(2, 2)) == -basis_form(2, 1, 2)


@settings(max_examples=20, deadline=None)
@given(covectors)
def test_d_squared_vanishes(u):
    alg = parse("(0,0,21,31)")
    assert differential(alg, differential(alg, one_form(u))).is_zero()


def test_evaluate_and_contract():
    assert e(1, 2).evaluate([[1, 0, 0, 0], [0, 1, 0, 0]]) == 1
    assert e(1, 2).evaluate([[0, 1, 0, 0], [1, 0, 0, 0]]) == -1
    assert e(1, 2).contract([1, 0, 0, 0]) == e(2)


def test_subs_and_free_symbols():
    t = sympy.Symbol("t")
    form = e(1, 2) * t + e(3, 4)
    assert form.free_symbols() == {t}
    assert form.subs({t: 0}) == e(3, 4)


def test_hodge_star_identity_metric():
    m = Metric.identity(4)
    assert hodge_star(m, e(1, 2)) == e(3, 4)
    assert hodge_star(m, hodge_star(m, e(1, 3))) == e(1, 3)


def test_hodge_star_scaled_metric():
    m = Metric([[4, 0, 0, 0], [0, 4, 0, 0], [0, 0, 4, 0], [0, 0, 0, 4]])
    assert hodge_star(m, e(1, 2)) == e(3, 4)
    assert hodge_star(m, e(1)) == e(2, 3, 4) * 4


def test_codifferential_of_function_is_zero():
    alg = parse("(0,0,21,0)")
    assert codifferential(alg, Metric.identity(4), Form(4, 0, {(): 5})).is_zero()


def test_pullback_identity_and_j_action():
    J = standard_complex_structure(4)
    assert pullback(sympy.eye(4), e(1, 3)) == e(1, 3)
    assert j_action(J, e(1)) == e(2)
    assert j_action(J, e(2)) == -e(1)
    assert j_action(J, e(1, 2)) == e(1, 2)
