import math

import numpy as np
import pytest

from zepl import oracle


# --- quadrature ---------------------------------------------------------------

def test_quad_exponential():
    q = oracle.quad_seminfinite(lambda r: np.exp(-r), 1e-10)
    assert q.converged
    assert q.value == pytest.approx(1.0, rel=1e-10)


def test_quad_gaussian_moment():
    q = oracle.quad_seminfinite(lambda r: r**2 * np.exp(-(r**2)), 1e-12)
    assert q.converged
    assert q.value == pytest.approx(math.sqrt(math.pi) / 4.0, rel=1e-11)


def test_quad_divergent_flags():
    q = oracle.quad_seminfinite(lambda r: 1.0 / r, 1e-8)
    assert not q.converged
    assert "truncated" in q.note or "budget" in q.note


def test_quad_tol_validated():
    for bad in (1e-14, 1e-5, 0.0):
        with pytest.raises(ValueError):
            oracle.quad_seminfinite(lambda r: np.exp(-r), bad)


def test_quad_self_consistency_on_tol_halving():
    f = lambda r: r**3 * np.exp(-1.7 * r)
    coarse = oracle.quad_seminfinite(f, 1e-8)
    fine = oracle.quad_seminfinite(f, 5e-9)
    assert abs(coarse.value - fine.value) <= coarse.error + fine.error


def test_quad_shifted_scale():
    # mass far from r ~ 1 must still be found by the window expansion
    q = oracle.quad_seminfinite(lambda r: np.exp(-((np.log(r) - 15.0) ** 2)), 1e-9)
    assert q.converged
    assert q.value == pytest.approx(math.sqrt(math.pi) * math.exp(15.0 + 0.25), rel=1e-8)


# --- radial integration ---------------------------------------------------------

def test_free_particle_log_derivative():
    ode = oracle.RadialODE(q=lambda r, c: 0.0, r_inner=1e-3, r_outer=10.0,
                           origin_exponent=1.0, match_radius=1.0)
    traj = oracle.integrate_radial(ode, 0.0, "outward")
    assert traj.log_deriv == pytest.approx(1.0, abs=1e-8)
    assert np.all(np.diff(traj.r) > 0)


def test_inward_direction_and_renormalization():
    # u'' = u with decaying outer start: u ~ e^(-r), log-derivative -1
    ode = oracle.RadialODE(q=lambda r, c: 1.0, r_inner=0.1, r_outer=60.0,
                           origin_exponent=1.0, match_radius=1.0)
    traj = oracle.integrate_radial(ode, 0.0, "inward")
    assert traj.log_deriv == pytest.approx(-1.0, rel=1e-6)
    assert np.isfinite(traj.u).all()


def test_direction_validated():
    ode = oracle.RadialODE(q=lambda r, c: 0.0, r_inner=1e-3, r_outer=10.0)
    with pytest.raises(ValueError):
        oracle.integrate_radial(ode, 0.0, "sideways")


# --- coupling shooting -----------------------------------------------------------

def test_mismatch_brackets_each_root():
    ode = oracle.build_powerlaw_ode(1.5, 1.0, 1)
    d0 = 7.0 / 16.0
    lo = oracle.coupling_mismatch(ode, d0 - 0.02)[0]
    hi = oracle.coupling_mismatch(ode, d0 + 0.02)[0]
    at = oracle.coupling_mismatch(ode, d0)[0]
    assert lo * hi < 0
    assert abs(at) < 1e-7


def test_shoot_coupling_l0():
    res = oracle.shoot_coupling(1.5, 1.0, 0, count=2)
    predicted = [(2 * n + 3) / 16.0 for n in range(2)]
    assert len(res.values) == 2
    for got, want in zip(res.values, predicted):
        assert got == pytest.approx(want, rel=1e-6)
    assert res.node_counts == [0, 1]
    assert res.values == sorted(res.values)


def test_shoot_coupling_below_branch():
    res = oracle.shoot_coupling(-1.5, 1.0, 1, count=2)
    predicted = [(2 * n + 4) / 4.0 for n in range(2)]
    for got, want in zip(res.values, predicted):
        assert got == pytest.approx(want, rel=1e-6)
    assert res.node_counts == [0, 1]


def test_shoot_coupling_count_capped():
    with pytest.raises(ValueError):
        oracle.shoot_coupling(1.5, 1.0, 1, count=7)


# --- spectral shooting -----------------------------------------------------------

def test_shoot_energy_quartic_plus_linear():
    res = oracle.shoot_energy_bender(1, count=2)
    assert res.values[0] == pytest.approx(4.0, rel=1e-6)
    assert res.values[1] == pytest.approx(10.0, rel=1e-6)
    assert res.node_counts == [0, 1]


def test_shoot_energy_validation():
    with pytest.raises(ValueError):
        oracle.shoot_energy_bender(2, count=2)
    with pytest.raises(ValueError):
        oracle.shoot_energy_bender(0, count=9)
