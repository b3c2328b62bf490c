import math

import mpmath
import numpy as np
import pytest

import zetalab


def test_zeta_against_mpmath():
    for sigma, t in [(2.0, 0.0), (0.5, 14.134725141734693), (0.75, 50.0), (0.5, 1000.0)]:
        got = zetalab.eval_zeta(sigma, t)
        ref = complex(mpmath.zeta(mpmath.mpc(sigma, t)))
        assert abs(got["value"] - ref) <= got["err"] + 1e-12


def test_hardy_z_is_real():
    z = zetalab.hardy_z(100.0)
    assert abs(z["value"].imag) < 1e-8
    assert abs(abs(z["value"]) - abs(zetalab.eval_zeta(0.5, 100.0)["value"])) < 1e-9


def test_batch_matches_direct():
    values = zetalab.zsum_batch(100.0, 1000.0, 0.5, 200)
    assert isinstance(values, np.ndarray)
    direct = np.array([zetalab.zsum_direct(100.0, 1000.0 + 0.5 * k) for k in range(200)])
    assert np.max(np.abs(values - direct) / np.abs(direct)) < 1e-9


def test_cutoff_and_mellin():
    phi = zetalab.SmoothCutoff(8.0)
    assert phi(0.5) == 1.0 and phi(0.0) == 0.0
    v = zetalab.mellin_transform(phi, 1 + 0j)
    assert 1 - 2 / 8 <= v["value"].real <= 1


def test_moment_and_bounds():
    q = zetalab.integrate_moment(1.0, 1000.0, 1.0)
    assert abs(q["value"] - 1000.0) < 1e-6
    assert zetalab.g_func(2.0, math.exp(100.0)) == pytest.approx(0.5)
    assert zetalab.main_rhs(1.0, 500.0, 7.0) == pytest.approx(3500.0)


def test_perron_identity():
    c = zetalab.contour_decomposition(10.5, 5.0)
    v = zetalab.truncated_vertical(10.5, 5.0)
    assert abs(c["total"] - v["value"]) <= 3 * (c["err"] + v["err"])


def test_errors_are_typed():
    with pytest.raises(zetalab.DomainError):
        zetalab.eval_zeta(1.0, 0.0)
    with pytest.raises(zetalab.ParameterError):
        zetalab.SmoothCutoff(1.5)
    with pytest.raises(zetalab.Error):
        zetalab.zsum_direct(1e9, 1.0)


def test_scaling_and_verify_records():
    r = zetalab.run_scaling(2.5, [1000.0, 2000.0, 4000.0], "1")
    assert len(r["results"]) == 3
    assert "fit_slope" in r["summary"]
    v = zetalab.run_verify("fast")
    assert v["failure"] is None
    assert all(row["passed"] for row in v["results"])
