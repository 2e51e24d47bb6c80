import json
import subprocess
import sys

import pytest

from zastava.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_compute(capsys):
    code, out, _ = run(capsys, "compute", "--pi", "1,1", "--cap", "3", "--seed", "7")
    assert code == 0 and len(json.loads(out)["terms"]) == 4
    assert run(capsys, "compute", "--pi", "1,1", "--cap", "3", "--seed", "7")[1] == out


def test_compute_bad_pi(capsys):
    code, _, err = run(capsys, "compute", "--pi", "2,1")
    assert code == 2 and "weakly increasing" in err
    assert run(capsys, "compute", "--pi", "a,b")[0] == 2


def test_compute_csv(capsys):
    code, out, _ = run(capsys, "compute", "--pi", "1,1,1", "--cap", "1", "--format", "csv")
    assert code == 0 and out.splitlines()[:2] == ["d,value", "0-0,1"]


def test_verify_suite(capsys):
    code, out, _ = run(capsys, "verify", "--pi", "1,2", "--cap", "2", "--checks", "relations,shapovalov,whittaker,sl2")
    assert code == 0 and json.loads(out)["ok"]


def test_verify_mutate(capsys):
    code, out, _ = run(capsys, "verify", "--checks", "relations", "--mutate", "b", "--cap", "1")
    assert code == 1
    assert json.loads(out)["checks"][0]["witness"]["relation"] == "b"


def test_verify_sl2(capsys):
    code, out, _ = run(capsys, "verify", "--checks", "sl2", "--pi", "1,1", "--cap", "5")
    assert code == 0 and json.loads(out)["checks"][0]["detail"]["orientation"] == "x2-x1"


def test_verify_usage(capsys):
    assert run(capsys, "verify", "--checks", "nope")[0] == 2
    assert run(capsys, "verify", "--checks", "sl2", "--trials", "0")[0] == 2
    assert run(capsys, "bogus")[0] == 2


def test_virasoro(capsys):
    code, _, err = run(capsys, "virasoro", "--a", "0", "--eps1", "1", "--eps2", "-1", "--cap", "4")
    assert code == 3 and "degenerate Gram at level 1" in err
    code, out, _ = run(capsys, "virasoro", "--delta", "3/8", "--c", "-2", "--cap", "3")
    assert code == 0 and len(json.loads(out)["levels"]) == 4
    code, out, _ = run(capsys, "virasoro", "--a", "1", "--eps1", "1", "--eps2", "-1", "--cap", "1")
    data = json.loads(out)
    assert code == 0 and [l["norm"] for l in data["levels"]] == ["1", "1/2"]
    assert data["dictionary"]["check"] is True
    assert [l["norm_signed"] for l in data["levels"]] == ["1", "-1/2"]


def test_virasoro_usage(capsys):
    assert run(capsys, "virasoro", "--cap", "1")[0] == 2
    assert run(capsys, "virasoro", "--delta", "1", "--a", "1")[0] == 2
    assert run(capsys, "virasoro", "--delta", "1")[0] == 2
    assert run(capsys, "virasoro", "--delta", "x", "--c", "1")[0] == 2


def test_agt_dict(capsys):
    code, out, _ = run(capsys, "agt-dict", "--a", "0", "--eps1", "1", "--eps2", "-1")
    data = json.loads(out)
    assert code == 0 and data["ok"] and data["chi"] == "-1" and data["k"] == "-1"
    assert run(capsys, "agt-dict", "--a", "1", "--eps1", "1", "--eps2", "0")[0] == 2


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "zastava", "compute", "--pi", "1,1", "--cap", "1"], capture_output=True, text=True
    )
    assert proc.returncode == 0 and json.loads(proc.stdout)["pi"] == [1, 1]


def test_negative_rational_arguments(capsys):
    code, out, _ = run(capsys, "virasoro", "--a", "2/7", "--eps1", "3/5", "--eps2", "-4/3", "--cap", "1")
    assert code == 0 and json.loads(out)["dictionary"]["check"] is True
    assert run(capsys, "virasoro", "--delta", "-5/11", "--c", "-2", "--cap", "1")[0] == 0
