import pytest
import sympy

from src.library.exceptions import (
    AmbiguousIdentificationError,
    InadmissibleParametersError,
    UnrecognizedAlgebraError,
)
from src.library.identification import (
    AlgebraId,
    abelian_id,
    construct,
    identify,
    identify_subspace,
    in_r4_region,
)
from src.library.lie_structure import LieAlgebra, unimodular_kernel
from src.library.notation import parse

half = sympy.Rational(1, 2)


@pytest.mark.parametrize(
    "text, expected",
    [
        ("(0,21)", AlgebraId("aff_R")),
        ("(0,0,21)", AlgebraId("h3")),
        ("(0,0,12)", AlgebraId("h3")),
        ("(0,21,-31)", AlgebraId("r3_lambda", (-1,))),
        ("(0,21,0)", AlgebraId("r3_lambda", (0,))),
        ("(0,0,21)xR", AlgebraId("R_x_h3")),
        ("(0,21,0)xR", AlgebraId("R_x_r3_lambda", (0,))),
        ("(0,21,-31)xR", AlgebraId("R_x_r3_lambda", (-1,))),
        ("(0,21,0,43)", AlgebraId("aff_R_x_aff_R")),
        ("(0,21,-31,32)", AlgebraId("d4")),
    ],
)
def test_identify(text, expected):
    assert identify(parse(text)).same_as(expected)


def test_identify_json():
    assert identify(parse("(0,21,-31)")).to_json() == {"id": "r3_lambda", "lambda": "-1"}
    assert identify(LieAlgebra.abelian(4)).to_json() == {"id": "R^n", "n": "4"}
    assert str(AlgebraId("r4_mu_lambda", (-half, -half))) == "r4_mu_lambda(-1/2, -1/2)"


@pytest.mark.parametrize(
    "alg_id",
    [
        AlgebraId("n4"),
        AlgebraId("r4"),
        AlgebraId("aff_C"),
        AlgebraId("h4"),
        AlgebraId("d4_lambda", (2,)),
        AlgebraId("d4_lambda", (half,)),
        AlgebraId("d4p_lambda", (1,)),
        AlgebraId("r3p_lambda", (half,)),
        AlgebraId("r4_mu_lambda", (-half, -half)),
        AlgebraId("r4p_mu_lambda", (2, -1)),
        AlgebraId("R_x_r3p_lambda", (0,)),
    ],
)
def test_construct_then_identify(alg_id):
    assert identify(construct(alg_id)).same_as(alg_id)


def test_parameters_are_needed():
    alg = parse("(0,21,lambda31)")
    with pytest.raises(AmbiguousIdentificationError):
        identify(alg)
    assert identify(alg, {"lambda": "1/3"}).same_as(AlgebraId("r3_lambda", (sympy.Rational(1, 3),)))


def test_eigenvalue_ratio_is_normalised():
    # ad E1 has eigenvalues 1 and 3 on the derived algebra
    assert identify(parse("(0,21,3.31)")).same_as(AlgebraId("r3_lambda", (sympy.Rational(1, 3),)))


def test_unrecognized():
    with pytest.raises(UnrecognizedAlgebraError):
        identify(parse("(23,31,12)"))
    with pytest.raises(UnrecognizedAlgebraError):
        identify(LieAlgebra.abelian(5))
    with pytest.raises(UnrecognizedAlgebraError):
        construct(AlgebraId("no_such_family"))


@pytest.mark.parametrize(
    "alg_id",
    [
        AlgebraId("r3_lambda", (2,)),
        AlgebraId("r3p_lambda", (-1,)),
        AlgebraId("d4_lambda", (sympy.Rational(1, 4),)),
        AlgebraId("r4p_mu_lambda", (0, 1)),
        AlgebraId("r4_mu_lambda", (-1, 1)),
        AlgebraId("h3", (1,)),
    ],
)
def test_inadmissible_parameters(alg_id):
    with pytest.raises(InadmissibleParametersError):
        construct(alg_id)


def test_r4_region():
    assert not in_r4_region(-1, 1)
    assert in_r4_region(-1, -half)
    assert not in_r4_region(half, sympy.Rational(1, 3))
    assert not in_r4_region(0, half)


def test_unimodular_kernel_of_aff_c():
    alg = construct(AlgebraId("aff_C"))
    assert identify_subspace(alg, unimodular_kernel(alg)).same_as(AlgebraId("r3p_lambda", (0,)))


def test_abelian_id():
    assert identify(LieAlgebra.abelian(3)).same_as(abelian_id(3))
