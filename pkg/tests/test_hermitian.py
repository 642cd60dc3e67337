import pytest
import sympy

from src.library.exceptions import IncompatibleStructureError, NotAdInvariantError
from src.library.exterior import Metric, basis_form, zero_form
from src.library.hermitian import (
    COMPLEX_CONDITIONS,
    HermitianStructure,
    biinvariant_torsion,
    bismut_torsion,
    fundamental_form,
    generic_case,
    generic_condition_polys,
    is_integrable,
    is_kahler,
    is_skt,
    kahler_condition_check,
    kahler_polys,
    lee_coclosed,
    lee_form,
    listed_corrections,
    reference_conditions,
    tilted_affaff_structure,
    standard_complex_structure,
)
from src.library.lie_structure import LieAlgebra
from src.library.misc import StructuralCase
from src.library.notation import parse
from src.library.scalars import is_zero, normalize, parse_scalar, poly_linear_membership, substitute

T = sympy.Symbol("t")


def e(*indices):
    return basis_form(4, *indices)


def test_standard_complex_structure():
    J = standard_complex_structure(4)
    assert J * J == -sympy.eye(4)
    assert J[1, 0] == 1
    with pytest.raises(IncompatibleStructureError):
        standard_complex_structure(3)


def test_compatibility_is_enforced():
    alg = LieAlgebra.abelian(4)
    J = standard_complex_structure(4)
    with pytest.raises(IncompatibleStructureError):
        HermitianStructure(alg, J, Metric([[1, 0, 0, 0], [0, 2, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]))
    with pytest.raises(IncompatibleStructureError):
        HermitianStructure(alg, sympy.eye(4), Metric.identity(4))


def test_fundamental_form_of_standard_structure():
    h = HermitianStructure.standard(LieAlgebra.abelian(4))
    assert fundamental_form(h) == e(1, 2) + e(3, 4)


def test_from_fundamental_form_recovers_metric():
    h = HermitianStructure.from_fundamental_form(LieAlgebra.abelian(4), standard_complex_structure(4), e(1, 2) + e(3, 4))
    assert h.g.is_identity()


def test_integrability():
    J = standard_complex_structure(4)
    assert is_integrable(parse("(0,0,0,21)"), J)
    assert not is_integrable(LieAlgebra([zero_form(4, 2)] * 3 + [e(1, 3)]), J)


def test_product_of_heisenberg_with_line_is_skt_not_kahler():
    h = HermitianStructure.standard(parse("(0,0,0,21)"))
    assert is_skt(h).holds
    assert not is_kahler(h).holds
    assert not bismut_torsion(h).is_zero()


def test_tilted_affaff_structure():
    h = tilted_affaff_structure()
    assert is_integrable(h.alg, h.J)
    dc = is_skt(h)
    assert not dc.holds
    assert is_zero(dc.residual - 2 * T)
    assert is_skt(h, {"t": 0}).holds
    assert is_kahler(h, {"t": 0}).holds
    assert not is_skt(h, {"t": "1/2"}).holds


def test_lee_form_vanishes_on_kahler_structure():
    h = tilted_affaff_structure(0)
    assert lee_form(h).is_zero()
    assert lee_coclosed(h).holds


def test_json_round_trip():
    h = tilted_affaff_structure("1/3")
    again = HermitianStructure.from_json(h.alg, h.to_json())
    assert again.J == h.J
    assert again.g.entries == h.g.entries


def test_generic_cases_use_standard_complex_structure():
    for case in StructuralCase:
        generic = generic_case(case)
        assert generic.alg.dim == 4
        assert generic.structure.J == standard_complex_structure(4)


def test_complex_kahler_polys():
    expected = {parse_scalar(s) for s in ("-u1", "y1", "y2 + u3", "v2 - z1")}
    assert set(kahler_polys("complex")) == expected


def test_linear_conditions_follow_from_integrability():
    conditions = generic_condition_polys(StructuralCase.COMPLEX)
    for target in COMPLEX_CONDITIONS[:2]:
        assert poly_linear_membership(target, conditions.integrability, 1)


def test_reference_conditions_lengths():
    assert len(reference_conditions("complex")) == 11
    assert len(reference_conditions(StructuralCase.REAL)) == 14


def test_kahler_condition_check():
    check = kahler_condition_check("complex", {"x1": 1, "y2": "-1/2", "u3": "1/2", "v1": 1})
    assert check.kahler and check.listed and check.agrees
    assert not kahler_condition_check("complex", {"u1": 1}).kahler


def test_biinvariant_torsion():
    su2 = parse("(23,31,12)")
    result = biinvariant_torsion(su2, Metric.identity(3))
    assert result.closed
    assert result.torsion == basis_form(3, 1, 2, 3)
    with pytest.raises(NotAdInvariantError):
        biinvariant_torsion(parse("(0,21)"), Metric.identity(2))


def test_real_skt_residual_on_x2_z2_v2():
    # only d(Ja) = x2(ab + JaJb), db = z2 ab, d(Jb) = v2 bJb: dc = (x2² + t x2 z2 + z2²) e1234
    others = {str(s): 0 for s in generic_case("real").variables if str(s) not in ("x2", "z2", "v2", "t")}
    residual = substitute(generic_condition_polys("real").skt, others)
    x2, z2 = sympy.symbols("x2 z2")
    ratio = normalize(residual / (x2**2 + T * x2 * z2 + z2**2))
    assert ratio.is_number and ratio != 0


def test_listed_real_skt_quantity_is_corrected():
    (fix,) = listed_corrections(StructuralCase.REAL)
    assert fix.index == 13
    assert is_zero(fix.difference - parse_scalar("t*x2*(v2 - z2)"))
    assert reference_conditions("real")[13] == fix.corrected
    assert reference_conditions("real", corrected=False)[13] == fix.printed
    assert listed_corrections("complex") == ()


def test_lee_coclosed_fails_off_skt():
    h = tilted_affaff_structure("1/2")
    assert is_integrable(h.alg, h.J)
    assert not is_skt(h).holds
    assert not lee_coclosed(h).holds
