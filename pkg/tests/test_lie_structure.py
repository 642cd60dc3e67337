import pytest
import sympy

from src.library.exceptions import NotAnIdealError, NotSolvableError, ParametricEvaluationError
from src.library.exterior import basis_form, zero_form
from src.library.lie_structure import (
    LieAlgebra,
    Subspace,
    bracket,
    center,
    chi,
    derived_algebra,
    derived_center,
    is_filtration_compatible,
    is_lie_algebra,
    is_nilpotent,
    is_solvable,
    is_unimodular,
    jacobi_check,
    product_with_line,
    quotient,
    refined_filtration,
    structure_constants,
    unimodular_kernel,
)
from src.library.notation import parse

H3 = parse("(0,0,21)")
AFF = parse("(0,21)")
D4 = parse("(0,21,-31,32)")


def test_bracket_from_differential():
    assert bracket(AFF, [1, 0], [0, 1]) == [0, 1]
    assert bracket(H3, [1, 0, 0], [0, 1, 0]) == [0, 0, 1]
    assert structure_constants(H3) == {(1, 2, 3): 1}


def test_from_structure_constants_matches_notation():
    assert LieAlgebra.from_structure_constants(3, {(1, 2, 3): 1}) == H3
    assert LieAlgebra.from_structure_constants(3, {(2, 1, 3): -1}) == H3


def test_jacobi():
    assert jacobi_check(H3) == []
    assert is_lie_algebra(D4)
    broken = LieAlgebra([zero_form(4, 2), zero_form(4, 2), basis_form(4, 1, 2), basis_form(4, 3, 4)])
    assert not is_lie_algebra(broken)
    assert jacobi_check(broken)


def test_heisenberg_structure():
    assert derived_algebra(H3).same_as(Subspace(3, [(0, 0, 1)]))
    assert center(H3).same_as(Subspace(3, [(0, 0, 1)]))
    assert is_nilpotent(H3)
    assert not is_nilpotent(AFF)
    assert is_solvable(AFF)


def test_su2_is_not_solvable():
    su2 = parse("(23,31,12)")
    assert is_lie_algebra(su2)
    assert not is_solvable(su2)
    with pytest.raises(NotSolvableError):
        refined_filtration(su2)


def test_unimodular():
    assert chi(AFF) == [1, 0]
    assert not is_unimodular(AFF)
    assert is_unimodular(H3)
    assert is_unimodular(D4)
    assert unimodular_kernel(parse("(0,21,0,43)")).dim == 3


def test_symbolic_trace_needs_a_point():
    alg = parse("(0,21,lambda31)")
    with pytest.raises(ParametricEvaluationError):
        is_unimodular(alg)
    with pytest.raises(ParametricEvaluationError):
        unimodular_kernel(alg)
    assert is_unimodular(alg, {"lambda": -1})
    assert not is_unimodular(alg, {"lambda": 1})
    assert not is_unimodular(parse("(0,21,lambda31,0)"), {"lambda": 1})
    assert is_unimodular(parse("(0,21,lambda31,-41)"), {"lambda": 0})


def test_parametric_operations_need_a_point():
    alg = parse("(0,21,lambda31)")
    with pytest.raises(ParametricEvaluationError):
        center(alg)
    assert center(alg, {"lambda": 1}).dim == 0


def test_quotient_by_center():
    q = quotient(H3, center(H3))
    assert q.dim == 2
    assert all(f.is_zero() for f in q.d_basis)
    with pytest.raises(NotAnIdealError):
        quotient(H3, Subspace(3, [(1, 0, 0)]))


def test_derived_center_of_d4():
    z = derived_center(D4)
    assert z.dim == 1
    assert z.contains([0, 0, 0, 1])


def test_product_with_line():
    alg = product_with_line(H3)
    assert alg.dim == 4
    assert alg.d_basis[3].is_zero()
    assert center(alg).dim == 2


def test_refined_filtration():
    chain = refined_filtration(H3)
    assert [v.dim for v in chain] == [1, 2, 3]
    assert is_filtration_compatible(H3, chain)
    assert not is_filtration_compatible(H3, [Subspace(3, [(0, 0, 1)])])


def test_json_round_trip_keeps_name():
    alg = parse("(0,lambda21+31,-21+lambda31)", name="r3p")
    again = LieAlgebra.from_json(alg.to_json())
    assert again == alg
    assert again.name == "r3p"
    assert again.free_symbols() == {sympy.Symbol("lambda")}
