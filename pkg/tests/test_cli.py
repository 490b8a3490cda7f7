import json
import subprocess
import sys
from fractions import Fraction as F

import pytest

from lgmoon import __version__
from lgmoon.cli import main, parse_complex, parse_t
from lgmoon.precision import PrecisionPolicy


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv)
    rec = json.loads(out)
    assert set(rec) == {"command", "inputs", "result", "version"}
    assert rec["version"] == __version__
    return code, rec


def test_expand_rho(capsys):
    code, rec = run_json(capsys, "expand", "rho", "9")
    assert code == 0
    assert rec["result"]["coefficients"][9] == "1920024/35"
    assert [F(x) for x in rec["result"]["coefficients"][:7]] == [0, 0, 0, 13824, 0, 0, -39744]


def test_expand_i_and_gap(capsys):
    _, rec = run_json(capsys, "expand", "i", "6")
    assert rec["result"]["coefficients"][6] == "1594112/5"
    _, rec = run_json(capsys, "expand", "rho", "2")
    assert rec["result"]["coefficients"] == ["0", "0", "0"]


def test_expand_csv(capsys):
    code, out = run(capsys, "expand", "i", "4", "--format", "csv")
    assert code == 0
    assert out.splitlines() == ["index,value", "0,1728", "1,0", "2,20736", "3,0", "4,105984"]


def test_expand_usage_errors(capsys):
    assert main(["expand", "rho", "501"]) == 2
    with pytest.raises(SystemExit) as exc:
        main(["expand", "tau", "3"])
    assert exc.value.code == 2


def test_flatcoord_series_and_value(capsys):
    _, rec = run_json(capsys, "flatcoord", "rho", "4")
    assert rec["result"]["coefficients"] == ["0", "1", "0", "0", "-1/6"]
    _, rec = run_json(capsys, "flatcoord", "i", "--eval", "1/3", "--terms", "1000", "--digits", "50")
    val = rec["result"]["value"]
    assert val["digits"] == 50 and val["re"].startswith("0.3830612321")
    _, rec = run_json(capsys, "flatcoord", "rho", "--eval", "0.5", "--terms", "1000")
    assert rec["result"]["value"]["re"].startswith("0.490175")


def test_flatcoord_out_of_domain(capsys):
    assert main(["flatcoord", "i", "--eval", "0.5"]) == 3


def test_verify_commands(capsys):
    code, rec = run_json(capsys, "verify", "rho", "sqrt3-1")
    assert code == 0 and rec["result"]["passed"]
    assert rec["result"]["rhs"]["re"].startswith("1728.0")
    code, rec = run_json(capsys, "verify", "i", "1/3")
    assert code == 0 and rec["result"]["rhs"] == "1906624/225"
    code, rec = run_json(capsys, "verify", "i", "0")
    assert code == 0 and rec["result"]["rhs"] == "1728"


def test_verify_exit_codes(capsys):
    assert main(["verify", "i", "0.6"]) == 3
    assert main(["verify", "i", "one third"]) == 2
    assert main(["verify", "i", "1/4", "--tol", "0"]) == 1


def test_suite_exact(capsys):
    code, rec = run_json(capsys, "suite", "--which", "exact")
    assert code == 0 and rec["result"]["passed"]
    names = [c["name"] for c in rec["result"]["checks"]]
    assert "rho identity to order 60" in names and "i identity to order 40" in names


def test_suite_inversion(capsys):
    code, rec = run_json(capsys, "suite", "--which", "inversion")
    assert code == 0 and all(c["passed"] for c in rec["result"]["checks"])


@pytest.mark.parametrize("tau,prefix", [("0.5+0.5i", "1728.0"), ("1.4243556206i", "8473.884"), ("i", "1728.0")])
def test_jeval(capsys, tau, prefix):
    code, rec = run_json(capsys, "jeval", tau)
    assert code == 0 and rec["result"]["value"]["re"].startswith(prefix)


def test_jeval_lower_half_plane(capsys):
    assert main(["jeval", "0.5-0.5i"]) == 3


def test_deterministic_output(capsys):
    _, a = run(capsys, "verify", "rho", "1/2")
    _, b = run(capsys, "verify", "rho", "1/2")
    assert a == b


def test_json_rationals_round_trip(capsys):
    _, rec = run_json(capsys, "expand", "i", "12")
    from lgmoon.modular import elliptic_expansion_i

    assert [F(x) for x in rec["result"]["coefficients"]] == list(elliptic_expansion_i(12).coeffs)


def test_digits_env(monkeypatch, capsys):
    monkeypatch.setenv("MOON_DIGITS", "30")
    _, rec = run_json(capsys, "jeval", "i")
    assert rec["inputs"]["digits"] == 30 and rec["result"]["value"]["digits"] == 30


def test_parsers():
    assert parse_t("0.25") == F(1, 4)
    assert parse_t("SQRT3-1") == "sqrt3-1"
    p = PrecisionPolicy()
    z = parse_complex("-0.5-i", p)
    assert (z.real, z.imag) == (-0.5, -1)
    assert parse_complex("2i", p).imag == 2


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "lgmoon", "expand", "rho", "3"],
                         capture_output=True, text=True, check=True).stdout
    assert json.loads(out)["result"]["coefficients"][3] == "13824"


def test_suite_seed_is_echoed_and_reproducible(capsys):
    _, a = run_json(capsys, "suite", "--which", "inversion", "--seed", "7")
    _, b = run_json(capsys, "suite", "--which", "inversion", "--seed", "7")
    assert a["inputs"]["seed"] == 7 and a == b
