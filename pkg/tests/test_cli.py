import json
import subprocess
import sys

import pytest

from liberator import cli
from liberator.solver import InvariantViolation


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, (json.loads(out) if out.strip() else None), err


def test_classify(capsys):
    code, report, _ = run(capsys, "classify", "--matrix", "1,0,0,2", "--maxdeg", "4")
    assert code == 0
    assert report["case"]["label"] == "QuantumPlane"
    assert report["resonance"] == [[1, 1], [3, 0]]


def test_classify_irrational_is_usage_error(capsys):
    code, _, err = run(capsys, "classify", "--matrix", "0,1,2,0")
    assert code == 1 and "generic-ratio" in err


def test_liberate_wigner(capsys):
    code, report, _ = run(capsys, "liberate", "--matrix", "1,0,0,-1", "--ansatz", "resonance",
                          "--maxdeg", "6", "--order", "3")
    assert code == 0
    assert report["result"]["status"] == "SolutionSpace"
    assert report["result"]["dimension"] == 4
    syms = sorted(s["relations"]["[X,Y]"]["symmetric"] for s in report["solutions"])
    assert len(syms) == 4


def test_liberate_report_schema(capsys):
    code, report, _ = run(capsys, "liberate", "--quad", "1,1,1,2,2,2", "--ansatz", "quadratic",
                          "--hamiltonian")
    assert code == 0
    assert {"input", "case", "solutions", "hamiltonian", "discrepancies"} <= set(report)
    (sol,) = report["solutions"]
    assert {"relations", "proportions", "pbw", "flow_order"} <= set(sol)
    assert report["hamiltonian"]["status"] == "Hamiltonian"


def test_require_solution(capsys):
    code, report, _ = run(capsys, "liberate", "--matrix", "1,1,0,1", "--ansatz", "linear",
                          "--require-solution")
    assert code == 2 and report["result"]["status"] == "NoSolution"
    code, _, _ = run(capsys, "liberate", "--matrix", "1,1,0,1", "--ansatz", "quadratic",
                     "--require-solution")
    assert code == 0


def test_flow_verify(capsys):
    code, report, _ = run(capsys, "flow-verify", "--rel", "[X,Y]=1+{X,Y}", "--matrix", "1,0,0,-1",
                          "--order", "8")
    assert code == 0 and report["preserved"] is True and report["order"] == 8
    code, report, _ = run(capsys, "flow-verify", "--rel", "[X,Y]=1", "--matrix", "1,0,0,1")
    assert report["preserved"] is False and report["witness"]["t_order"] == 1


def test_hamiltonian_command(capsys):
    code, report, _ = run(capsys, "hamiltonian", "--matrix", "1,0,0,-1", "--rel", "[X,Y]=1",
                          "--maxdeg", "2")
    assert code == 0 and report["hamiltonian"]["h"] == "-sym(X,Y)"


def test_dynamics_text_and_file(capsys, tmp_path):
    path = tmp_path / "dyn.txt"
    path.write_text("dX/dt = X\ndY/dt = -Y\n")
    code, report, _ = run(capsys, "flow-verify", "--dynamics", f"@{path}", "--rel", "[X,Y]=1")
    assert code == 0 and report["preserved"]


@pytest.mark.parametrize("argv", [
    ["liberate"],
    ["liberate", "--matrix", "1,2,3"],
    ["liberate", "--matrix", "1,0,0,1", "--quad", "1,1,1,1,1,1"],
    ["flow-verify", "--matrix", "1,0,0,1"],
    ["flow-verify", "--dynamics", "dX/dt = X^-1; dY/dt = Y", "--rel", "[X,Y]=1"],
    ["nonsense"],
    ["liberate", "--matrix", "1,0,0,1", "--ansatz", "cubic"],
])
def test_usage_errors(capsys, argv):
    with pytest.raises(SystemExit) as info:
        raise SystemExit(cli.main(argv))
    assert info.value.code == 1


def test_invariant_violation_exit(capsys, monkeypatch):
    def broken(*args, **kwargs):
        raise InvariantViolation("planted")

    monkeypatch.setattr(cli, "liberate", broken)
    code, _, err = run(capsys, "liberate", "--matrix", "1,0,0,2")
    assert code == 3 and "planted" in err


def test_env_maxdeg(capsys, monkeypatch):
    monkeypatch.setenv("LIBERATOR_MAXDEG", "3")
    code, report, _ = run(capsys, "classify", "--matrix", "1,0,0,-1")
    assert report["resonance"] == [[0, 0], [1, 1]]
    monkeypatch.setenv("LIBERATOR_MAXDEG", "many")
    code, _, _ = run(capsys, "classify", "--matrix", "1,0,0,-1")
    assert code == 1


def test_generic_ratio(capsys):
    code, report, _ = run(capsys, "liberate", "--generic-ratio", "--maxdeg", "5")
    assert code == 0
    assert report["result"]["dimension"] == 1
    assert report["solutions"][0]["relations"]["[X,Y]"]["sorted"] == "X Y"


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "liberator.cli", "classify", "--matrix", "3,0,0,3"],
                          capture_output=True, text=True, check=True)
    assert json.loads(proc.stdout)["case"]["label"] == "Quadratic"
