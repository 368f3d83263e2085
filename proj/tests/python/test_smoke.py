# SPDX-License-Identifier: Apache-2.0
import math

import numpy as np
import pytest

import string_sausage as ss


def small_params():
    p = ss.ModelParams()
    p.d = 2
    p.K = 16
    p.M = 48
    p.dt = 0.05
    p.T = 0.5
    p.tail_tolerance = 0.01
    return p


def test_simulate_shape_and_reproducibility():
    p = small_params()
    a = ss.simulate(p, seed=3)
    b = ss.simulate(p, seed=3)
    assert a.shape == (p.steps() + 1, p.M, p.d)
    assert np.array_equal(a, b)
    assert np.all(a[0] == 0.0)


def test_variance_series_value():
    assert ss.variance_series("u", 1.0, K=100000) == pytest.approx(1.0 + 1.0 / 12.0, abs=1e-5)
    assert ss.variance_series("N2", 1.0, 0.5, 0.0, K=64) == pytest.approx(
        2.0 * math.exp(-4.0 * math.pi**2) / math.pi**2, rel=1e-12
    )


def test_survival_without_traps():
    p = small_params()
    p.nu = 0.0
    e = ss.annealed_survival(p, 100, "hard_direct", seed=1)
    assert e.p_hat == 1.0
    assert e.method == "hard_direct"


def test_scaling_transform():
    p = ss.ModelParams()
    p.J, p.T, p.nu, p.a = 4.0, 32.0, 1.0, 0.8
    s = ss.scaling_transform(p)
    assert s["T"] == pytest.approx(2.0)
    assert s["nu"] == pytest.approx(4.0)
    assert s["a"] == pytest.approx(0.4)


def test_sausage_single_disk():
    v, half = ss.sausage_volume(np.zeros((1, 2)), 0.5, method="voxel", voxel=0.01)
    assert abs(v - math.pi / 4) <= half


def test_exponent_fit_exact():
    T = [1, 2, 4, 8, 16]
    gamma, lo, hi = ss.exponent_fit(T, [7.0 * math.sqrt(t) for t in T])
    assert gamma == pytest.approx(0.5, abs=1e-9)


def test_run_config_and_errors():
    csv, summary = ss.run_config(
        "experiment = survival\nnu = 0\nK = 16\nM = 48\ndt = 0.05\ntail_tolerance = 0.01\nT = 0.5\nn = 100\nseed = 4\n"
    )
    assert csv.splitlines()[0] == "experiment,d,J,nu,a,T,method,estimate,stderr,n,seed,resolution_tag"
    assert "p_hat" in summary or "rows" in summary
    with pytest.raises(ss.ConfigError):
        ss.run_config("experiment = survival\n")
