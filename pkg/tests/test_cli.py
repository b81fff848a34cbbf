import json
import subprocess
import sys
from pathlib import Path

import pytest

from disclab import __version__
from disclab.cli import main
from disclab.poly import parse
from goldens import CUBIC_DISC, QUADRATIC_RES

JOBS = Path(__file__).resolve().parent.parent / "jobs"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out.strip(), err.strip()


def same_up_to_sign(text, golden, names):
    p, q = parse(text, names), parse(golden, names)
    return p == q or p == q.scale(-1)


def test_disc(capsys):
    code, out, _ = run(capsys, "disc", "--poly", "a*x1^3+b*x1^2*x2+c*x1*x2^2+d*x2^3",
                       "--vars", "x1,x2", "--coeff-vars", "a,b,c,d")
    assert code == 0 and same_up_to_sign(out, CUBIC_DISC, list("abcd"))


def test_res(capsys):
    code, out, _ = run(capsys, "res", "--poly", "a*x1^2+b*x1*x2+c*x2^2",
                       "--poly", "d*x1^2+e*x1*x2+f*x2^2", "--vars", "x1,x2",
                       "--coeff-vars", "a,b,c,d,e,f")
    assert code == 0 and same_up_to_sign(out, QUADRATIC_RES, list("abcdef"))


@pytest.mark.parametrize("argv,expected", [
    (["--num-vars", "3", "--degrees", "4"], "27"),
    (["--num-vars", "3", "--degrees", "2,2", "--k", "0"], "6"),
    (["--group-dims", "3,3", "--degrees", "2,2"], "129"),
])
def test_degree(capsys, argv, expected):
    code, out, _ = run(capsys, "degree", *argv)
    assert (code, out) == (0, expected)


def test_eliminate_writes_artifacts(capsys, tmp_path):
    code, out, _ = run(capsys, "eliminate", "--job", str(JOBS / "circle_quadratic.json"),
                       "--out", str(tmp_path))
    assert code == 0
    phi = parse(out.splitlines()[1], list("abcd"))
    assert phi.degree() == 6
    manifest = json.loads((tmp_path / "manifest.json").read_text())
    assert manifest["version"] == __version__
    assert manifest["invocation"][:2] == ["disclab", "eliminate"]
    assert "seed" in manifest and manifest["elapsed_seconds"] >= 0
    result = json.loads((tmp_path / "result.json").read_text())
    assert result["systems"][0]["label"] == "kkt"


def test_quadratic_critical_job(capsys):
    code, out, _ = run(capsys, "eliminate", "--job", str(JOBS / "quadratic_critical.json"))
    assert code == 0 and same_up_to_sign(out.splitlines()[1], "b^2-4*c", ["b", "c"])


def test_scan(capsys, tmp_path):
    code, out, _ = run(capsys, "scan", "--poly", "x1^4+x2^4", "--vars", "x1,x2", "--starts", "8",
                       "--seed", "3", "--out", str(tmp_path))
    assert code == 0 and float(out) == pytest.approx(0.5, abs=1e-8)
    assert json.loads((tmp_path / "manifest.json").read_text())["seed"] == 3
    code, out, _ = run(capsys, "scan", "--poly", "x1^6+x2^6+x3^6-a*x1^2*x2^4", "--vars", "x1,x2,x3",
                       "--params", "a=-1", "--mode", "classify", "--starts", "8")
    assert code == 0 and out.startswith("Interior")


def test_copositive(capsys):
    code, out, _ = run(capsys, "copositive", "--matrix", str(JOBS / "copositive_2x2.json"),
                       "--at", "a=-1.1")
    assert code == 0 and out.startswith("Exterior")
    code, out, _ = run(capsys, "copositive", "--matrix", str(JOBS / "copositive_2x2.json"))
    assert code == 0 and same_up_to_sign(out, "a^2-1", ["a"])


def test_curve(capsys, tmp_path):
    code, out, _ = run(capsys, "curve", "--poly", "a^2+b^2-1", "--resolution", "64",
                       "--out", str(tmp_path))
    assert code == 0 and out.endswith("1 components")
    assert (tmp_path / "grid.csv").read_text().startswith("a,b,sign\n")
    assert (tmp_path / "curve.svg").exists()
    assert set(json.loads((tmp_path / "manifest.json").read_text())["files"]) == {
        "result.json", "grid.csv", "curve.svg"}


def test_domain_error_exit_code(capsys):
    code, _, err = run(capsys, "disc", "--poly", "x1^", "--vars", "x1,x2")
    assert code == 1 and json.loads(err)["error"] == "PolySyntaxError"
    code, _, err = run(capsys, "degree", "--num-vars", "3", "--degrees", "1,1")
    assert code == 1 and json.loads(err)["error"] == "AllDegreesOne"


def test_budget_exit_code(capsys, monkeypatch):
    monkeypatch.setenv("DISCLAB_BUDGET", "10")
    code, _, err = run(capsys, "eliminate", "--job", str(JOBS / "circle_quadratic.json"))
    assert code == 2 and json.loads(err)["error"] == "BudgetExceeded"


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "disclab.cli", "degree", "--num-vars", "2",
                           "--degrees", "4"], capture_output=True, text=True, check=True)
    assert proc.stdout.strip() == "6"
