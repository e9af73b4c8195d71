import subprocess
import sys
from pathlib import Path

import pytest

from coposit.cli import main
from coposit.io import write_tensor
from coposit.tensor import SymTensor

TENSORS = Path(__file__).parent / "fixtures" / "tensors"
FIXTURES = Path(__file__).parent / "fixtures"


def run(capsys, *argv):
    try:
        code = main([str(a) for a in argv])
    except SystemExit as exc:
        # argparse usage errors leave through SystemExit
        code = exc.code
    out, err = capsys.readouterr()
    return code, out, err


def field(out, name):
    for line in out.splitlines():
        if line.startswith(name + ":"):
            return line.split(":", 1)[1].strip()
    raise KeyError(name)


def test_check_necessity_tensor(capsys):
    code, out, _ = run(capsys, "check", TENSORS / "strict_all_mixed_neg_t2233_neg.json", "--oracle")
    assert code == 1
    assert field(out, "method") == "Thm3.4(necessity)"
    assert field(out, "certificate").startswith("x=(")
    assert field(out, "oracle_min").startswith("-")


def test_check_two_mixed_negative_tensor(capsys):
    code, out, _ = run(capsys, "check", TENSORS / "strict_two_mixed_neg.json", "--oracle")
    assert code == 1
    assert field(out, "verdict") == "NOT_COPOSITIVE"
    assert field(out, "oracle_min") == "-337/90000"


def test_check_all_ones_strict(capsys):
    code, out, _ = run(capsys, "check", TENSORS / "all_ones_dim3.json", "--strict")
    assert code == 0
    assert field(out, "method") == "Thm3.4(1)"
    assert field(out, "verdict") == "STRICTLY_COPOSITIVE"


def test_check_copositive_not_strict(capsys):
    path = TENSORS / "cop_all_iiij_neg.json"
    code, out, _ = run(capsys, "check", path)
    assert code == 0 and field(out, "strictness") == "undetermined"
    code, out, _ = run(capsys, "check", path, "--strict")
    assert code == 2
    code, out, _ = run(capsys, "check", path, "--strict", "--oracle")
    assert code == 1
    assert field(out, "method") == "oracle"
    assert field(out, "strictness") == "not strict"
    assert field(out, "oracle_min") == "0"


def test_check_decimal_file(capsys):
    code, out, _ = run(capsys, "check", TENSORS / "decimal_entries.json", "--strict")
    assert code == 0
    assert field(out, "method") == "Cor2.2(1)"


def test_check_bad_index(capsys):
    code, _, err = run(capsys, "check", TENSORS / "bad_index.json")
    assert code == 3
    assert "error" in err


def test_check_missing_file(capsys, tmp_path):
    code, _, err = run(capsys, "check", tmp_path / "none.json")
    assert code == 3 and "cannot read" in err


def test_check_unknown_outcome_is_2(capsys, tmp_path):
    # zero diagonal: outside every criterion
    path = tmp_path / "t.json"
    write_tensor(SymTensor.constant(4, 3, 1).replace({(1, 1, 1, 1): 0}), path)
    code, out, _ = run(capsys, "check", path)
    assert code == 2 and field(out, "verdict") == "UNKNOWN"
    code, out, _ = run(capsys, "check", path, "--oracle")
    assert code == 0 and field(out, "method") == "oracle"


def test_check_is_deterministic(capsys):
    a = run(capsys, "check", TENSORS / "strict_two_mixed_neg.json", "--oracle")
    b = run(capsys, "check", TENSORS / "strict_two_mixed_neg.json", "--oracle")
    assert a == b


def test_check_time_flag(capsys):
    _, out, _ = run(capsys, "check", TENSORS / "all_ones_dim3.json", "--time")
    assert field(out, "elapsed").endswith("s")


def test_minimize_zero_minimum(capsys):
    code, out, _ = run(capsys, "minimize", TENSORS / "cop_all_iiij_neg.json")
    assert code == 0
    assert field(out, "min") == "0"
    assert field(out, "argmin") == "0,1/2,1/2"
    assert field(out, "exact") == "yes"


def test_minimize_all_ones(capsys):
    _, out, _ = run(capsys, "minimize", TENSORS / "all_ones_dim3.json", "--no-refine")
    assert field(out, "min") == "1"
    assert "refined_min" not in out


def test_minimize_counterexample(capsys):
    _, out, _ = run(capsys, "minimize", TENSORS / "strict_two_mixed_neg.json", "--denominator", 120)
    assert float(field(out, "refined_min")) <= -2.0e-3
    assert field(out, "grid") == "120"


@pytest.mark.parametrize("bad", [["--denominator", "0"], ["--denominator", "x"], ["--tol", "-1"]])
def test_bad_numeric_flags(capsys, bad):
    code, _, _ = run(capsys, "check", TENSORS / "all_ones_dim3.json", *bad)
    assert code == 3


def test_enumerate_strict(capsys, tmp_path):
    out_path = tmp_path / "strict.txt"
    code, out, _ = run(capsys, "enumerate", "--family", "strict", "--out", out_path)
    assert code == 0
    assert "64 rows, 64 agree, 0 disagree" in out
    assert out_path.read_text() == (FIXTURES / "strict_family.txt").read_text()


def test_enumerate_bogus(capsys):
    code, _, _ = run(capsys, "enumerate", "--family", "bogus")
    assert code == 3


def test_inequalities_smoke(capsys):
    code, out, _ = run(capsys, "inequalities", "--samples", 10)
    lines = out.splitlines()
    assert len(lines) == 15
    # the stated equality case of T314_f is wrong, so that line fails
    failing = [ln.split()[0] for ln in lines[:-1] if ln.endswith("FAIL")]
    assert failing == ["T314_f"]
    assert lines[-1].startswith("13/14 pass")
    assert code == 1


def test_inequalities_report_is_seeded(capsys):
    a = run(capsys, "inequalities", "--samples", 200, "--seed", 5)
    b = run(capsys, "inequalities", "--samples", 200, "--seed", 5)
    assert a == b


def test_usage_errors_exit_3(capsys):
    assert run(capsys)[0] == 3
    assert run(capsys, "frobnicate")[0] == 3


def test_console_entry_point(tmp_path):
    r = subprocess.run(
        [sys.executable, "-m", "coposit", "check", str(TENSORS / "all_ones_dim3.json"), "--strict"],
        capture_output=True,
        text=True,
    )
    assert r.returncode == 0
    assert "STRICTLY_COPOSITIVE" in r.stdout
