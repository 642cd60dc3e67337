import pytest
import sympy

from src.core import verification
from src.core.catalog import build_family
from src.core.config_manager import VerificationSettings
from src.core.verification import (
    family_report,
    generic_assignment,
    listed_unimodular,
    negative_killing_metric,
    su2_x_R,
    verify_algebra_tables,
    verify_all_families,
    verify_compact_torsion,
    verify_conditions,
    verify_family,
    verify_hermitian,
    verify_tilted_affaff,
    verify_table4,
)
from src.library.hermitian import HermitianStructure, StructureCheck
from src.library.identification import AlgebraId, abelian_id
from src.library.misc import StructuralCase
from src.library.notation import parse
from src.library.scalars import is_zero, parse_scalar

R = sympy.Rational


@pytest.fixture
def settings():
    return VerificationSettings(
        samples_per_family=2,
        lee_samples_per_family=2,
        sample_seed=4,
        table4_lambda_points=(R(1, 3),),
        generic_betti_samples=1,
    )


def _named(assignment):
    return {str(k): v for k, v in assignment.items() if v != 0}


def test_generic_assignment_complex_case():
    inst = build_family("oneDim_nilpotent", {"u1": 1})
    assert _named(generic_assignment(inst)) == {"u1": 1}
    inst = build_family("h3_d42", {"x1": 1, "y1": 0, "u1": 0})
    assert _named(generic_assignment(inst)) == {"x1": 1, "y2": R(-1, 2), "u3": R(1, 2), "v1": 1}


def test_generic_assignment_real_case_reads_metric():
    inst = build_family("realKernel_affaff", {"ell": 1, "t": R(1, 3), "m": R(1, 2)})
    assignment = {str(k): v for k, v in generic_assignment(inst).items()}
    assert assignment["t"] == R(1, 3)


def test_generic_assignment_abelian():
    assert not _named(generic_assignment(build_family("abelian")))


def test_numeric_family_passes(settings):
    report = verify_family(build_family("oneDim_nilpotent", {"u1": 1}), settings)
    assert report.passed, report.failures()
    verdicts = report.units["oneDim_nilpotent"]["verdicts"]
    assert set(verdicts) == {"jacobi", "integrable", "skt", "conditions", "identified", "kahler_iff", "lee_equivalence"}


def test_lee_equivalence_catches_a_constant_lee_test(settings, monkeypatch):
    monkeypatch.setattr(verification, "lee_coclosed", lambda h, point=None: StructureCheck(True, []))
    report = verify_family(build_family("oneDim_nilpotent", {"u1": 1}), settings)
    assert not report.units["oneDim_nilpotent"]["verdicts"]["lee_equivalence"]


def test_h3_family_checks_quotient(settings):
    report = verify_family(build_family("h3_d42", {"x1": 1, "y1": 0, "u1": 0}), settings)
    assert report.passed, report.failures()
    assert report.units["h3_d42"]["verdicts"]["quotient"]


def test_symbolic_family_is_sampled(settings):
    report = family_report("complexKernel", None, settings)
    assert report.passed, report.failures()
    assert report.units["complexKernel"]["details"]["samples"] == 2


def test_family_report_unknown_family(settings):
    with pytest.raises(ValueError):
        family_report("no_such_family", None, settings)


@pytest.mark.slow
def test_all_families_pass(settings):
    report = verify_all_families(settings)
    assert report.passed, report.failures()


def test_tilted_affaff():
    report = verify_tilted_affaff()
    assert report.passed, report.failures()
    assert report.units["aff_R_x_aff_R"]["details"]["dc"] == "2*t"


def test_compact_torsion():
    report = verify_compact_torsion()
    assert report.passed, report.failures()


def test_negative_killing_metric():
    assert negative_killing_metric(su2_x_R()).entries == 2 * sympy.eye(4)


def test_verify_hermitian():
    h = HermitianStructure.standard(parse("(0,0,0,21)", name="R_x_h3"))
    report = verify_hermitian(h)
    assert report.passed, report.failures()
    assert report.units["R_x_h3"]["details"]["skt"] is True
    assert report.units["R_x_h3"]["details"]["kahler"] is False


def test_table4(settings):
    report = verify_table4(settings)
    assert report.passed, report.failures()
    assert "d4p_lambda(lambda=1/3)" in report.units
    assert report.units["R4"]["verdicts"]["torsion_vanishes"]
    assert report.units["d4"]["details"]["moduli"]["verified"] is False


@pytest.mark.slow
@pytest.mark.parametrize("case", list(StructuralCase))
def test_condition_lists_agree(case):
    report = verify_conditions(case, 3)
    assert report.passed, report.failures()
    if case == StructuralCase.REAL:
        difference = parse_scalar(report.units["real/listed/13"]["details"]["printed_minus_used"])
        assert is_zero(difference - parse_scalar("t*x2*(v2 - z2)"))
        assert report.units["real/listed/13"]["verdicts"] == {"in_computed_span": True}


@pytest.mark.slow
def test_algebra_tables(settings):
    report = verify_algebra_tables(settings)
    assert report.passed, report.failures()
    assert "product/R_x_aff_R" in report.units


@pytest.mark.parametrize(
    "alg_id, expected",
    [
        (abelian_id(4), True),
        (AlgebraId("d4"), True),
        (AlgebraId("aff_C"), False),
        (AlgebraId("R_x_r3_lambda", (-1,)), True),
        (AlgebraId("R_x_r3_lambda", (0,)), False),
        (AlgebraId("r4_mu_lambda", (R(-2, 3), R(-1, 3))), True),
        (AlgebraId("r4_mu_lambda", (R(-1, 3), R(-2, 3))), False),
        (AlgebraId("r4p_mu_lambda", (2, -1)), True),
        (AlgebraId("d4p_lambda", (1,)), False),
    ],
)
def test_listed_unimodular(alg_id, expected):
    assert listed_unimodular(alg_id) == expected
