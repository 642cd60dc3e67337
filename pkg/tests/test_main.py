import json

import pytest

from src.library.config.config import CONFIG_FILE_NAME
from src.main import build_parser, run


def test_classify_json(capsys):
    assert run(["--json", "classify", "(0,21,-31)"]) == 0
    assert json.loads(capsys.readouterr().out) == {"id": "r3_lambda", "lambda": "-1"}


def test_classify_at_point(capsys):
    assert run(["classify", "(0,21,lambda31)", "--at", "lambda=1/3"]) == 0
    assert capsys.readouterr().out.strip() == "r3_lambda(1/3)"


def test_betti(capsys):
    assert run(["betti", "(0,0,21)xR"]) == 0
    assert capsys.readouterr().out.strip() == "(3, 4, 3, 1)"


def test_betti_json(capsys):
    assert run(["--json", "betti", "(0,21,-31)"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data == {"betti": [1, 1, 1], "consistent": True, "euler_check": True}


def test_parse_round_trip(capsys):
    assert run(["parse", "(0,0,−12)"]) == 0
    assert capsys.readouterr().out.startswith("(0,0,21)")


def test_syntax_error_exits_2(capsys):
    assert run(["classify", "(0,0,2)"]) == 2


def test_check_failing_jacobi(capsys):
    assert run(["check", "(0,0,21,43)"]) == 1
    assert run(["check", "(0,0,21)"]) == 0


def test_skt_verify_family():
    assert run(["skt-verify", "--family", "oneDim_nilpotent", "--param", "u1=1"]) == 0


def test_malformed_param_exits_2():
    assert run(["skt-verify", "--family", "oneDim_nilpotent", "--param", "u1"]) == 2


def test_inadmissible_param_exits_2():
    assert run(["skt-verify", "--family", "oneDim_nilpotent", "--param", "u1=0"]) == 2


def test_json_output_is_stable(capsys):
    run(["--json", "skt-verify", "--family", "h3_d42", "--param", "x1=1", "y1=0", "u1=0"])
    first = capsys.readouterr().out
    run(["--json", "skt-verify", "--family", "h3_d42", "--param", "x1=1", "y1=0", "u1=0"])
    assert capsys.readouterr().out == first
    assert json.loads(first)["passed"] is True


def test_hermitian_file(tmp_path, capsys):
    path = tmp_path / "h.json"
    identity = [["1" if i == j else "0" for j in range(4)] for i in range(4)]
    J = [["0", "-1", "0", "0"], ["1", "0", "0", "0"], ["0", "0", "0", "-1"], ["0", "0", "1", "0"]]
    path.write_text(json.dumps({"J": J, "g": identity}))
    assert run(["--json", "skt-verify", "--hermitian", str(path), "(0,0,0,21)"]) == 0
    unit = json.loads(capsys.readouterr().out)["units"]["(0,0,0,21)"]
    assert unit["details"]["skt"] is True


def test_search_abelian(capsys):
    assert run(["--json", "--seed", "5", "search", "(0,0,0,0)", "--restarts", "2"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["verdict"] == "found"
    assert data["seed"] == 5


def test_search_needs_an_algebra():
    assert run(["search"]) == 2


def test_compact_torsion():
    assert run(["compact-torsion"]) == 0


def test_init_config(tmp_path, monkeypatch, capsys):
    monkeypatch.chdir(tmp_path)
    assert run(["init-config"]) == 0
    assert (tmp_path / CONFIG_FILE_NAME).exists()


def test_missing_config_file(tmp_path):
    with pytest.raises(SystemExit) as info:
        run(["--config", str(tmp_path / "none.yaml"), "parse", "(0,21)"])
    assert info.value.code == 2


def test_unknown_family_is_a_usage_error():
    with pytest.raises(SystemExit) as info:
        build_parser().parse_args(["skt-verify", "--family", "nope"])
    assert info.value.code == 2
