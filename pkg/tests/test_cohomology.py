import pytest

from src.library.cohomology import BettiVector, betti, differential_matrix, euler_check, generic_betti
from src.library.exceptions import ParametricEvaluationError
from src.library.lie_structure import LieAlgebra
from src.library.notation import parse


@pytest.mark.parametrize(
    "text, expected",
    [
        ("(0,21)", (1, 0)),
        ("(0,0,21)", (2, 2, 1)),
        ("(0,0,21)xR", (3, 4, 3, 1)),
        ("(0,21,0)", (2, 1, 0)),
        ("(0,21,0)xR", (3, 3, 1, 0)),
        ("(0,21,-31)", (1, 1, 1)),
        ("(0,21,0,43)", (2, 1, 0, 0)),
    ],
)
def test_betti_numbers(text, expected):
    bv = betti(parse(text))
    assert bv.reduced == expected
    assert bv[0] == 1
    assert euler_check(bv)


def test_abelian_betti_are_binomials():
    assert betti(LieAlgebra.abelian(4)) == (1, 4, 6, 4, 1)


def test_parameters_must_be_fixed():
    alg = parse("(0,21,lambda31)")
    with pytest.raises(ParametricEvaluationError):
        betti(alg)
    assert betti(alg, {"lambda": -1}).reduced == (1, 1, 1)
    assert betti(alg, {"lambda": "1/2"}).reduced == (1, 0, 0)


def test_generic_betti_on_numeric_algebra():
    bv, consistent = generic_betti(parse("(0,0,21)"), samples=5, seed=1)
    assert consistent
    assert bv.reduced == (2, 2, 1)


def test_generic_betti_is_seeded():
    alg = parse("(0,lambda21+31,-21+lambda31)")
    assert generic_betti(alg, 3, 7) == generic_betti(alg, 3, 7)


def test_differential_matrix_shape():
    matrix = differential_matrix(parse("(0,0,21)"), 1)
    assert matrix.shape == (3, 3)
    assert matrix.rank() == 1


def test_euler_check():
    assert euler_check(BettiVector((1, 2, 2, 1)))
    assert not euler_check(BettiVector((1, 2, 0, 0, 0)))
    assert euler_check(BettiVector((1,)))
