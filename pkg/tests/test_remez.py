import math

import numpy as np
import pytest

from heatscope.eigenbasis import enumerate_modes, mode_matrix
from heatscope.errors import ContractError, DomainError
from heatscope.pointsets import explicit, omega_alpha, uniform_grid
from heatscope.remez import (
    bernstein_bounds,
    choose_ell0,
    constant_bounds,
    lagrange_interp,
    remez_verify,
)


def test_choose_ell0_constant_one():
    assert choose_ell0(constant_bounds(1.0), 10) == 2


def test_choose_ell0_zero_bounds():
    assert choose_ell0(constant_bounds(0.0), 10) == 1


def test_choose_ell0_bernstein_scan_oracle():
    bounds = bernstein_bounds(10)
    got = choose_ell0(bounds, 400)
    # direct scan of (pi*10)^l / l! <= 1/2
    expect = next(
        ell
        for ell in range(1, 400)
        if ell * math.log(10 * math.pi) - math.lgamma(ell + 1) <= math.log(0.5)
    )
    assert got == expect
    assert abs(got - math.e * math.pi * 10) < 8  # roughly e*pi*K


def test_choose_ell0_none_when_out_of_reach():
    assert choose_ell0(bernstein_bounds(50), 5) is None


def test_lagrange_linear():
    assert lagrange_interp([0.0, 1.0], [0.0, 1.0], 0.5) == pytest.approx(0.5)


def test_lagrange_reproduces_low_degree_polynomials():
    rng = np.random.default_rng(31)
    nodes = np.array([0.1, 0.55, 0.9])
    p = lambda x: x**2 - x
    vals = p(nodes)
    for x in rng.uniform(0, 1, size=100):
        assert lagrange_interp(nodes, vals, float(x)) == pytest.approx(p(x), abs=1e-10)


def test_lagrange_remainder_bound_for_sine():
    nodes = np.array([0.1, 0.5, 0.9])
    vals = np.sin(math.pi * nodes)
    x = 0.3
    got = lagrange_interp(nodes, vals, x)
    true = math.sin(math.pi * x)
    bound = (math.pi**3 / math.factorial(3)) * abs(np.prod(x - nodes))
    assert abs(got - true) <= bound


def test_lagrange_coincident_nodes():
    with pytest.raises(DomainError):
        lagrange_interp([0.2, 0.2, 0.5], [1, 2, 3], 0.3)


def test_remez_single_mode_on_uniform_points():
    sl = enumerate_modes(1, 1.0, 1.0)  # only k = 1
    cert = remez_verify(sl, [1.0], uniform_grid(9), grid_size=4001)
    assert cert.holds
    assert cert.ell0 == choose_ell0(bernstein_bounds(1), 600)


def test_remez_zero_function():
    sl = enumerate_modes(1, 4.0, 1.0)
    cert = remez_verify(sl, [0.0, 0.0], uniform_grid(16), grid_size=2001)
    assert cert.holds and cert.lhs == 0.0 and cert.rhs == 0.0


def test_remez_monte_carlo_soundness():
    # frequencies k <= 4, so l0 = 33 fits inside a 40-point observation set
    sl = enumerate_modes(1, 20.0, 1.0)
    assert sl.max_index == 4
    obs = omega_alpha(1.0, 40)
    rng = np.random.default_rng(97)
    cert0 = remez_verify(sl, rng.standard_normal(len(sl)), obs, grid_size=4001)
    for _ in range(199):
        c = rng.standard_normal(len(sl))
        cert = remez_verify(sl, c, obs, grid_size=4001, gamma_estimate=None)
        assert cert.holds
    assert cert0.ell0 == 33


def test_remez_observation_too_small():
    sl = enumerate_modes(1, 20.0, 1.0)
    with pytest.raises(ContractError, match="33"):
        remez_verify(sl, np.ones(len(sl)), uniform_grid(10))


def test_remez_factor_monotone_under_set_growth():
    sl = enumerate_modes(1, 1.0, 1.0)  # l0 = 8
    rng = np.random.default_rng(11)
    base = np.sort(rng.uniform(0, 1, size=10))
    bigger = np.sort(np.concatenate([base, rng.uniform(0, 1, size=6)]))
    c = [1.0]
    cert_small = remez_verify(sl, c, explicit(base), grid_size=2001)
    cert_big = remez_verify(sl, c, explicit(bigger), grid_size=2001)
    # enlarging E never decreases gamma, hence never increases the factor
    assert cert_big.log_gamma >= cert_small.log_gamma - 1e-12
    assert cert_big.log_factor <= cert_small.log_factor + 1e-12


def test_remez_grid_supremum_is_certified():
    # the resolution-corrected lhs really dominates a much finer grid max
    sl = enumerate_modes(1, 20.0, 1.0)
    rng = np.random.default_rng(3)
    c = rng.standard_normal(len(sl))
    cert = remez_verify(sl, c, omega_alpha(1.0, 40), grid_size=2001)
    fine = np.linspace(0, 1, 200_001)
    true_sup = float(np.max(np.abs(mode_matrix(sl, fine[:, None]) @ c)))
    assert true_sup <= cert.lhs_upper * (1 + 1e-12)
