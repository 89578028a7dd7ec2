import json
import subprocess
import sys
from importlib.resources import files

import pytest

from bderange.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_table_golden_file(capsys):
    golden = files("bderange").joinpath("data/derangement_b_table.txt").read_text()
    code, out, _ = run(capsys, "table", "derangement_b", "10")
    assert code == 0
    assert out == golden


@pytest.mark.parametrize(
    "argv,lines",
    [
        (("table", "derangement_b", "3"), ["q", "4q+q^2", "8q+20q^2+q^3"]),
        (("table", "derangement_b", "0"), ["1"]),
        (("table", "eulerian_b", "1"), ["1", "1+q"]),
        (("table", "derangement_a", "--n-max", "4"), ["1", "0", "q", "q+q^2", "q+7q^2+q^3"]),
    ],
)
def test_table_text(capsys, argv, lines):
    code, out, _ = run(capsys, *argv)
    assert code == 0 and out.splitlines() == lines


def test_table_json_uses_decimal_strings(capsys):
    code, out, _ = run(capsys, "table", "derangement_b", "60", "--format", "json")
    data = json.loads(out)
    assert code == 0
    big = data[60]["coeffs"]
    assert all(isinstance(c, str) for c in big)
    assert int(max(big, key=int)) > 2**64


def test_table_csv(capsys):
    code, out, _ = run(capsys, "table", "eulerian_b", "2", "--format", "csv")
    assert out.splitlines()[0] == "n,k,value"
    assert "2,1,6" in out.splitlines()


@pytest.mark.parametrize(
    "argv",
    [
        ("table", "derangement_b", "201"),
        ("table", "nonsense", "3"),
        ("decompose", "1,1"),
        ("decompose", "3,x"),
        ("verify", "nosuchsuite"),
        ("roots", "--n", "500"),
        ("normality", "--n", "10,abc"),
        ("moments", "--n", "0"),
        (),
    ],
)
def test_usage_errors_exit_2(argv):
    # argparse exits via SystemExit(2); the rest return 2
    try:
        code = main(list(argv))
    except SystemExit as exc:
        code = exc.code
    assert code == 2


def test_verify_json_report(capsys):
    code, out, _ = run(capsys, "verify", "spiral", "50", "--format", "json")
    report = json.loads(out)
    assert code == 0 and report["passed"]
    assert report["suites"][0]["suite"] == "spiral"


def test_verify_failure_exits_1(capsys, monkeypatch):
    from bderange import verify

    def broken(n_max):
        r = verify.SuiteReport("spiral", n_max)
        r.add("deliberately failing", False)
        return r

    monkeypatch.setitem(verify.SUITES, "spiral", broken)
    code, out, _ = run(capsys, "verify", "spiral")
    assert code == 1 and "FAIL" in out


def test_decompose_worked_example(capsys):
    code, out, _ = run(capsys, "decompose", "3,-5,4,2,9,-6,8,7,-1")
    assert code == 0
    assert "V o U:       (7 8)(-5 9)(-1 2)(3 4)(-6)" in out
    assert "weight:      q^5" in out
    code, out, _ = run(capsys, "decompose", "3,-5,4,2,9,-6,8,7,-1", "--listing", "magnitude")
    assert "V o U:       (7 8)(-6)(-5 9)(-1 2)(3 4)" in out


def test_decompose_leading_bar(capsys):
    code, out, _ = run(capsys, "decompose", "-1,-2", "--format", "json")
    data = json.loads(out)
    assert code == 0
    assert data["p_decomposition"] == [[-1], [-2]]
    assert data["weight_exponent"] == data["exc_b"] == 2


def test_decompose_with_fixed_points(capsys):
    code, out, _ = run(capsys, "decompose", "1,2")
    assert code == 0
    assert "cycles:      (2)(1)" in out
    assert "not a derangement" in out
    assert "V o U" not in out


def test_moments(capsys):
    code, out, _ = run(capsys, "moments", "3", "--format", "json")
    assert json.loads(out)["mean_exact"] == {"num": "51", "den": "29"}
    code, out, _ = run(capsys, "moments", "--n", "20")
    assert "1/16" in out


def test_normality_decreasing(capsys):
    code, out, _ = run(capsys, "normality", "20,50,100", "--format", "json")
    d = [float(r["sup_cdf_distance"]) for r in json.loads(out)]
    assert code == 0 and d == sorted(d, reverse=True) and len(set(d)) == 3


def test_roots(capsys):
    code, out, _ = run(capsys, "roots", "3", "--format", "json")
    data = json.loads(out)
    assert code == 0
    assert data["multiplicity_at_zero"] == 1
    assert len(data["intervals"]) == 2
    assert all(float(iv["hi"]["num"]) <= 0 for iv in data["intervals"])


def test_egf(capsys):
    code, out, _ = run(capsys, "egf", "--order", "10")
    assert code == 0 and "PASS" in out


def test_out_path(tmp_path, capsys):
    target = tmp_path / "t.txt"
    code, out, _ = run(capsys, "table", "derangement_b", "2", "--out", str(target))
    assert code == 0 and out == ""
    assert target.read_text() == "q\n4q+q^2\n"


def test_deterministic_subprocess_output():
    argv = [sys.executable, "-m", "bderange", "verify", "all", "--format", "json"]
    first = subprocess.run(argv, capture_output=True, check=True).stdout
    second = subprocess.run(argv, capture_output=True, check=True).stdout
    assert first == second
    assert json.loads(first)["passed"]
