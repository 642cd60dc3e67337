import numpy as np
import pytest
import sympy

from src.core.catalog import (
    FAMILY_IDS,
    TABLE4,
    admits_skt,
    build_family,
    circle_point,
    non_skt_list,
    sample_family,
    sample_table_id,
    table4_row,
    witness_quotient_id,
)
from src.library.exceptions import InadmissibleParametersError
from src.library.identification import AlgebraId, in_r4_region
from src.library.lie_structure import is_lie_algebra

R = sympy.Rational


def test_circle_point():
    assert circle_point(R(1, 2)) == (R(3, 5), R(4, 5))
    assert circle_point(R(1, 2), sign=-1) == (R(3, 5), R(-4, 5))
    assert circle_point(0) == (1, 0)


def test_numeric_instance():
    inst = build_family("oneDim_nilpotent", {"u1": 1})
    assert inst.is_numeric
    assert inst.claimed_id.same_as(AlgebraId("R_x_h3"))
    assert inst.kahler_expected is False
    assert inst.alg.name == "oneDim_nilpotent(u1=1)"
    assert inst.structure.g.is_identity()


def test_symbolic_instance():
    inst = build_family("oneDim_nilpotent")
    assert not inst.is_numeric
    assert inst.claimed_id is None
    assert inst.kahler_expected is None
    assert inst.at({"u1": 2}).claimed_id.same_as(AlgebraId("R_x_h3"))


def test_derived_parameters():
    inst = build_family("oneDim_r30", {"u3": 2, "w1": 1})
    assert inst.params["u1"] == 4
    assert inst.kahler_expected is False
    assert build_family("oneDim_r30", {"u3": 0, "w1": 3}).kahler_expected is True


def test_rejected_parameters():
    with pytest.raises(InadmissibleParametersError):
        build_family("oneDim_nilpotent", {"u1": 0})
    with pytest.raises(InadmissibleParametersError):
        build_family("oneDim_nilpotent", {"x1": 1})
    with pytest.raises(InadmissibleParametersError):
        build_family("realKernel_affaff", {"ell": 1, "t": 1, "m": R(1, 2)})
    with pytest.raises(ValueError):
        build_family("no_such_family")


def test_circle_parameters():
    inst = build_family("h3_final", {"k": 1, "z3": 1, "m": R(1, 2)})
    assert (inst.params["q"], inst.params["r"]) == (R(3, 5), R(4, 5))
    affaff = build_family("realKernel_affaff", {"ell": 1, "t": 0, "m": R(1, 2)})
    assert (affaff.params["sigma"], affaff.params["tau"]) == (R(3, 5), R(-4, 5))
    with pytest.raises(InadmissibleParametersError):
        build_family("h3_final", {"k": 1, "z3": 1, "q": R(3, 5)})
    with pytest.raises(InadmissibleParametersError):
        build_family("h3_final", {"k": 1, "z3": 1, "q": 1, "r": 1})
    with pytest.raises(InadmissibleParametersError):
        build_family("h3_final", {"k": 1, "z3": 1, "q": R(3, 5), "r": R(4, 5), "m": 2})


def test_metric_parameter():
    tilted = build_family("realKernel_affaff", {"ell": 1, "t": R(1, 2), "m": R(1, 2)})
    assert not tilted.structure.g.is_identity()
    assert tilted.structure.g.is_positive_definite()
    flat = build_family("realKernel_affaff", {"ell": 1, "t": 0, "m": R(1, 2)})
    assert flat.structure.g.is_identity()


@pytest.mark.parametrize("family_id", FAMILY_IDS)
def test_samples_are_lie_algebras(family_id):
    rng = np.random.default_rng(3)
    inst = sample_family(family_id, rng)
    assert inst.is_numeric
    assert is_lie_algebra(inst.alg)
    assert inst.claimed_id is not None


def test_sampling_is_seeded():
    first = sample_family("h3_final", np.random.default_rng(11))
    second = sample_family("h3_final", np.random.default_rng(11))
    assert first.params == second.params
    fixed = sample_family("h3_d42", np.random.default_rng(11), {"x1": 5})
    assert fixed.params["x1"] == 5


def test_table4_rows():
    labels = [row.label for row in TABLE4]
    assert len(labels) == 13
    assert len(set(labels)) == 13
    assert table4_row("d4_2").betti == (1, 1, 1, 0)
    with pytest.raises(ValueError):
        table4_row("missing")


def test_admits_skt():
    assert admits_skt(AlgebraId("aff_C")) is False
    assert admits_skt(AlgebraId("d4")) is True
    assert admits_skt(AlgebraId("d4_lambda", (3,))) is False
    assert admits_skt(AlgebraId("d4_lambda", (2,))) is True
    assert admits_skt(AlgebraId("r4p_mu_lambda", (2, -1))) is True
    assert admits_skt(AlgebraId("r4p_mu_lambda", (1, 0))) is True
    assert admits_skt(AlgebraId("n4")) is None


def test_non_skt_samples_satisfy_their_constraint():
    for entry in non_skt_list():
        assert entry.samples
        for alg_id in entry.samples:
            assert entry.contains(alg_id)
            assert admits_skt(alg_id) is False


def test_witness_quotient_id():
    inst = build_family("h3_d42", {"x1": 1, "y1": 0, "u1": 0})
    assert witness_quotient_id(inst).same_as(AlgebraId("r3_lambda", (R(-1, 2),)))
    assert witness_quotient_id(build_family("oneDim_nilpotent", {"u1": 1})) is None


def test_sample_table_id():
    rng = np.random.default_rng(5)
    mu, lam = sample_table_id("r4_mu_lambda", rng).params
    assert in_r4_region(mu, lam)
    assert sample_table_id("h3", rng) == AlgebraId("h3")


def test_instance_json():
    data = build_family("h3_d42", {"x1": 1, "y1": 0, "u1": 0}).to_json()
    assert data["family"] == "h3_d42"
    assert data["params"]["x1"] == "1"
    assert data["claimed"] == {"id": "d4_lambda", "lambda": "2"}
