import math
import os
import subprocess

import pytest

import sqgain


def test_version():
    assert sqgain.__version__ == "0.1.0"


def test_closed_form_matches_oracle():
    c = sqgain.compare_with_oracle(2.0, 0.1, 2)
    assert c.within_tolerance()
    assert abs(c.var_closed - c.var_oracle) < 1e-12
    assert abs(sqgain.variance(0, 2, 2.0, 0.1) - c.var_closed) == 0.0


def test_optimizer():
    r = sqgain.minimize_over_B(2.0, sqgain.Branch(k=2))
    assert r.gain_dB > 2.0
    assert math.isclose(r.squeeze_out_dB, r.gain_dB + 2.0, rel_tol=1e-12)
    lo = sqgain.default_b_range().lo
    assert math.isclose(lo, 1 / 0.99**2 - 1)
    w = sqgain.gain_width(sqgain.Branch(k=2))
    assert 4.5 < w < 5.5


def test_coefficients_normalized():
    c = sqgain.coefficients(1, 3, 3.0, 0.2, 120)
    assert abs(sum(x * x for x in c) - 1.0) < 1e-12


def test_errors_map_to_python():
    with pytest.raises(ValueError):
        sqgain.squeeze_from_db(-1.0)
    with pytest.raises(ValueError):
        sqgain.variance_eta(3, 2.0, 0.1, 0.9)


def test_run_matches_cli():
    code, out, err = sqgain.run("sweep", k=[2], s="0.5:1.5:0.5")
    assert code == 0
    rows = [line for line in out.splitlines() if not line.startswith("#")]
    assert rows[0].startswith("S_dB,k,")
    assert len(rows) == 4
    cli = os.environ.get("SQGAIN_CLI")
    if cli:
        res = subprocess.run([cli, "sweep", "--k", "2", "--s", "0.5:1.5:0.5"],
                             capture_output=True, text=True, check=True)
        assert res.stdout == out


def test_run_usage_error():
    code, _, err = sqgain.run("sweep", s="5:1:0.1")
    assert code == 2
    assert "usage error" in err
