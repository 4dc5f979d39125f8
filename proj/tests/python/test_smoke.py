import math

import pytest

import walters_thermo as wt


def test_zero_potential():
    f = wt.Potential.builtin("zero")
    assert wt.pressure(f, 1.0)["pressure"] == pytest.approx(math.log(2), abs=1e-12)
    h = wt.h_values(f, 3.0, q_max=5)
    assert max(abs(v) for v in h["log_alpha"] + h["log_beta"]) < 1e-12
    logs = wt.cylinder_log(f, 2.0, ["0", "01", "110"])
    assert [math.exp(v) for v in logs] == pytest.approx([0.5, 0.25, 0.125], abs=1e-12)


def test_constant_shift():
    f = wt.Potential.builtin("constant:-0.3")
    assert wt.pressure(f, 10.0)["pressure"] == pytest.approx(math.log(2) - 3.0, abs=1e-10)


def test_example():
    f = wt.Potential.builtin("example1")
    assert wt.compute_A(f) == (-3.5, "A1")
    h = wt.h_values(f, 5.0)
    assert h["log_beta_inf"] == pytest.approx(-2.5, rel=1e-8)
    assert h["max_residual"] < 1e-9
    g = wt.gibbs(f, 5.0)
    assert math.exp(g["log_mu0"]) == pytest.approx(0.5, abs=1e-10)


def test_selection_and_mirror():
    f = wt.Potential.builtin("thm2")
    v = wt.select_measure(f)
    assert v["verdict"] == "Delta1"
    assert wt.select_measure(f.mirrored())["verdict"] == "Delta0"
    assert wt.compute_A(f)[0] == pytest.approx(-4.0, abs=1e-12)


def test_oracle_close_to_pressure():
    f = wt.Potential.builtin("example1")
    p = wt.pressure(f, 1.0)["pressure"]
    small = wt.oracle(f, 1.0, 4)
    big = wt.oracle(f, 1.0, 10, words=["0", "1"])
    assert abs(big["log_lambda"] - p) <= abs(small["log_lambda"] - p)
    assert sum(math.exp(v) for v in big["cylinder_log"]) == pytest.approx(1.0, abs=1e-12)
    with pytest.raises(wt.ValidationError):
        wt.oracle(f, 1.0, 4, extension="sideways")


def test_json_round_trip(tmp_path):
    f = wt.Potential.builtin("symmetric")
    path = tmp_path / "f.json"
    path.write_text(f.to_json())
    g = wt.load(str(path))
    assert wt.pressure(g, 2.0)["pressure"] == wt.pressure(f, 2.0)["pressure"]
    with pytest.raises(wt.ValidationError):
        wt.Potential.from_json("{not json")


def test_limit_report():
    r = wt.limit_report(wt.Potential.builtin("example1"), q_cap=3)
    assert r["A_case"] == "A1"


def test_numerical_error():
    with pytest.raises(wt.NumericalError):
        wt.pressure(wt.Potential.builtin("thm2"), 400.0)
