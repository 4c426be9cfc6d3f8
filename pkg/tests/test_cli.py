"""The cyk command line: exit codes, report schema and determinism."""

import json

import pytest

from cyk.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, (json.loads(out.out) if out.out.strip() else None), out.err


def test_periods(capsys):
    code, rep, _ = run(capsys, "periods", "--lambda", "0,1,4")
    assert code == 0 and rep["schema"] == "cyk/1" and rep["ok"]
    assert rep["tol"] == 1e-10 and rep["seed"] == 0
    re, im = rep["result"]["Z"][0][0]
    assert abs(re) < 1e-12 and abs(im - 1.2792615711710067) < 1e-10


def test_theta(capsys):
    code, rep, _ = run(capsys, "theta", "--Z", "[[[0, 1]]]")
    assert code == 0
    assert rep["result"]["value"][0] == pytest.approx(1.0864348112133082, abs=1e-13)
    code, rep, _ = run(capsys, "theta", "--Z", "[[[0, 1]]]", "--char", "1,1")
    assert code == 0 and abs(complex(*rep["result"]["value"])) < 1e-12


def test_abel(capsys):
    code, rep, _ = run(capsys, "abel", "--lambda", "0,1,4", "--points", "0.3+0.2j:1;0.3+0.2j:-1")
    assert code == 0 and rep["result"]["distance_to_zero"] < 1e-10


def test_domain_commands(capsys):
    assert run(capsys, "domain", "check", "--Z", "0.5")[0] == 0
    code, rep, _ = run(capsys, "domain", "check", "--Z", "[[1, 0], [0, 1]]")
    assert code == 1 and not rep["result"]["contains"]
    code, rep, _ = run(capsys, "domain", "act", "--M", "[[1, 0], [0, 1]]", "--Z", "0.25")
    assert code == 0 and rep["result"]["Z"][0][0] == [0.25, 0.0]
    code, rep, _ = run(capsys, "domain", "embed", "--M", "[[1, 0], [0, 1]]")
    assert code == 0 and rep["result"]["S"] == [[1.0, 0.0, 0.0, 0.0], [0.0, 1.0, 0.0, 0.0],
                                                 [0.0, 0.0, 1.0, 0.0], [0.0, 0.0, 0.0, 1.0]]
    assert run(capsys, "domain", "act", "--Z", "0.5")[0] == 2


def test_wp(capsys, tmp_path):
    path = tmp_path / "tau.json"
    path.write_text("[[0.1, 0.05], [0.05, -0.08]]")
    report = tmp_path / "wp_report.json"
    code, rep, _ = run(capsys, "wp", "--g", "2", "--tau", str(path), "--report", str(report))
    assert code == 0 and rep is None
    data = json.loads(report.read_text())
    assert data["ok"] and {"potential", "metric", "third_order_max", "nabla_R_max"} <= set(data["result"])


def test_wp_near_boundary(capsys):
    code, rep, _ = run(capsys, "wp", "--g", "1", "--tau", "0.99")
    assert code == 1 and rep["error"]["code"] == "StepTooLarge"


def test_cover(capsys):
    code, rep, _ = run(capsys, "cover", "--g", "3", "--lambda", "0,1,2,3,4,5,6")
    assert code == 0
    res = rep["result"]
    assert res["pairwise_flats"] == 28 and res["order_N"] == 24 and res["index_N"] == 2
    assert res["hodge"] == {"middle": [1, 9, 9, 1], "b2": 29, "b2_flag": None}
    code, rep, _ = run(capsys, "cover", "--g", "2", "--lambda", "0,1/3,i,2,-1/2")
    assert code == 0 and rep["result"]["general_position"]


@pytest.mark.parametrize("argv,code_name", [
    (["periods", "--lambda", "0,1"], "EvenCount"),
    (["periods", "--lambda", "0,1,1"], "DuplicateBranchPoint"),
    (["theta", "--Z", "[[1, 2"], "InvalidInput"),
    (["cover", "--g", "1", "--lambda", "0,x,1"], "InvalidInput"),
])
def test_input_errors_exit_2(capsys, argv, code_name):
    code, rep, _ = run(capsys, *argv)
    assert code == 2 and rep["error"]["code"] == code_name


@pytest.mark.parametrize("argv", [["periods", "--lambda", "0,1,4", "--tol", "1"], ["bogus"], []])
def test_argument_errors_exit_2(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_reports_are_deterministic(tmp_path, capsys):
    texts = []
    for k in range(2):
        path = tmp_path / f"r{k}.json"
        assert main(["cover", "--g", "2", "--seed", "3", "--report", str(path)]) == 0
        texts.append(path.read_bytes())
    capsys.readouterr()
    assert texts[0] == texts[1]


@pytest.mark.slow
def test_verify_all(tmp_path, capsys):
    texts = []
    for k in range(2):
        path = tmp_path / f"v{k}.json"
        code = main(["verify-all", "--g", "2", "--seed", "7", "--report", str(path)])
        err = capsys.readouterr().err
        texts.append(path.read_bytes())
    lines = [ln for ln in err.splitlines() if ln.startswith("[")]
    assert len(lines) == 11
    report = json.loads(texts[0])
    assert [c["number"] for c in report["result"]["criteria"]] == list(range(1, 12))
    assert code == (0 if report["ok"] else 1)
    assert texts[0] == texts[1]
