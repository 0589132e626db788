import itertools
import math

import numpy as np
import pytest

from heatscope.errors import ContractError, DomainError, ResourceError
from heatscope.pointsets import (
    PointSet,
    cantor,
    explicit,
    gamma_exact,
    gamma_first_k,
    gamma_greedy_leja,
    gamma_growth_fit,
    gamma_objective,
    generate,
    hausdorff_content_upper,
    loglog_exponent,
    omega_alpha,
    omega_exp,
    product,
    singleton,
    uniform_grid,
)


# ---------------------------------------------------------------- generators


def test_omega_alpha_example():
    pts = omega_alpha(1.0, 3).coords
    assert pts.tolist() == [1.0, 0.5, 1.0 / 3.0]


def test_omega_exp_example():
    assert omega_exp(3).coords.tolist() == [0.5, 0.25, 0.125]


def test_product_example():
    p = product(singleton(0.3), omega_exp(2))
    assert p.dimension == 2
    assert p.points.tolist() == [[0.3, 0.5], [0.3, 0.25]]


def test_uniform_grid_interior():
    g = uniform_grid(9)
    assert g.coords.tolist() == pytest.approx([j / 10 for j in range(1, 10)])
    g2 = uniform_grid(3, dimension=2)
    assert len(g2) == 9 and g2.dimension == 2


def test_cantor_endpoints():
    c = cantor(1)
    assert c.coords.tolist() == pytest.approx([0.0, 1 / 3, 2 / 3, 1.0])
    assert len(cantor(4)) == 2 ** 5


def test_generate_dispatch_and_errors():
    d = {"kind": "product", "a": {"kind": "singleton", "x0": 0.3}, "b": {"kind": "omega_exp", "count": 2}}
    assert generate(d).points.tolist() == [[0.3, 0.5], [0.3, 0.25]]
    with pytest.raises(DomainError):
        generate({"kind": "nope"})
    with pytest.raises(DomainError):
        omega_alpha(0.0, 5)
    with pytest.raises(DomainError):
        singleton(1.0)


def test_pointset_validation():
    with pytest.raises(DomainError):
        explicit([0.1, 0.1])
    with pytest.raises(DomainError):
        explicit([0.5, 1.5])


# ------------------------------------------------------------------- gamma_k


def test_gamma_exact_examples():
    e01 = explicit([0.0, 1.0])
    g = gamma_exact(e01, 2)
    assert g.value == pytest.approx(1.0) and g.witness_indices == (0, 1)

    e3 = explicit([0.0, 0.5, 1.0])
    g3 = gamma_exact(e3, 3)
    assert g3.value == pytest.approx(0.25) and g3.witness_indices == (0, 1, 2)
    g2 = gamma_exact(e3, 2)
    assert g2.value == pytest.approx(1.0) and g2.witness_indices == (0, 2)


def test_gamma_budget():
    big = explicit(np.linspace(0, 1, 40))
    with pytest.raises(ResourceError, match="greedy"):
        gamma_exact(big, 20, subset_budget=1000)


def test_gamma_greedy_examples():
    assert gamma_greedy_leja(explicit([0.0, 1.0]), 2).value == pytest.approx(1.0)
    assert gamma_greedy_leja(explicit([0.0, 0.5, 1.0]), 3).value == pytest.approx(0.25)
    e = omega_alpha(1.0, 12)
    assert gamma_greedy_leja(e, 4).log_value <= gamma_exact(e, 4).log_value + 1e-12


def test_gamma_greedy_never_beats_exact_and_ties_small_sets():
    rng = np.random.default_rng(123)
    for _ in range(40):
        m = int(rng.integers(2, 11))
        pts = np.sort(rng.uniform(0, 1, size=m))
        while np.unique(pts).size < m:
            pts = np.sort(rng.uniform(0, 1, size=m))
        e = explicit(pts)
        k = int(rng.integers(2, min(m, 5) + 1))
        ge = gamma_exact(e, k)
        gg = gamma_greedy_leja(e, k)
        assert gg.log_value <= ge.log_value + 1e-12
        if m <= 3:
            assert gg.log_value == pytest.approx(ge.log_value, abs=1e-12)


def test_gamma2_is_diameter():
    rng = np.random.default_rng(5)
    for _ in range(50):
        m = int(rng.integers(2, 9))
        pts = rng.uniform(0, 1, size=m)
        while np.unique(pts).size < m:
            pts = rng.uniform(0, 1, size=m)
        e = explicit(pts)
        assert gamma_exact(e, 2).value == pytest.approx(pts.max() - pts.min(), abs=1e-12)


def test_gamma_translation_and_dilation():
    rng = np.random.default_rng(17)
    for _ in range(10):
        pts = np.sort(rng.uniform(0.0, 0.4, size=7))
        while np.unique(pts).size < 7:
            pts = np.sort(rng.uniform(0.0, 0.4, size=7))
        k = 4
        base = gamma_exact(explicit(pts), k)
        shifted = gamma_exact(explicit(pts + 0.5), k)
        assert shifted.log_value == pytest.approx(base.log_value, abs=1e-10)
        lam = 0.37
        scaled = gamma_exact(explicit(pts * lam), k)
        assert scaled.log_value == pytest.approx(base.log_value + (k - 1) * math.log(lam), abs=1e-10)


def test_gamma_witness_reproduces_value():
    rng = np.random.default_rng(29)
    for _ in range(10):
        pts = rng.uniform(0, 1, size=10)
        while np.unique(pts).size < 10:
            pts = rng.uniform(0, 1, size=10)
        e = explicit(pts)
        for est in (gamma_exact(e, 4), gamma_greedy_leja(e, 5), gamma_first_k(e, 4)):
            assert gamma_objective(est.witness) == pytest.approx(est.log_value, abs=1e-12)


def test_gamma_greedy_matches_exact_on_omega_exp():
    e = omega_exp(14)
    for k in (3, 5, 8):
        assert gamma_greedy_leja(e, k).log_value == pytest.approx(
            gamma_exact(e, k).log_value, abs=1e-12
        )


# ------------------------------------------------------------------ fitting


def test_growth_fit_requires_three_points():
    with pytest.raises(ContractError):
        gamma_growth_fit(omega_alpha(1.0, 20), [4, 5], law="k_log_k")


def test_growth_fit_omega_exp_k_squared_law():
    e = omega_exp(16)
    fit = gamma_growth_fit(e, range(3, 13), law="k_squared", method="exact")
    assert fit.slope < 0
    # |log gamma_k| / k^2 bounded above and below along the sweep
    ratios = [-lv / k**2 for k, lv in zip(fit.ks, fit.log_values)]
    assert 0.1 < min(ratios) and max(ratios) < 1.0


def test_growth_fit_uniform_full_set_matches_direct_product():
    m = 9
    e = uniform_grid(m)
    fit_est = gamma_exact(e, m)
    # closed-form objective recomputed from the full uniform configuration
    direct = gamma_objective(e.coords)
    assert fit_est.log_value == pytest.approx(direct, abs=1e-12)


def test_loglog_exponent_on_dyadic_family():
    e = omega_exp(14)
    ks = list(range(4, 11))
    logs = [gamma_exact(e, k).log_value for k in ks]
    q = loglog_exponent(ks, logs)
    assert 1.7 < q < 2.3


# ---------------------------------------------------------------- hausdorff


def test_hausdorff_singleton_and_two_points():
    s = singleton(0.5)
    assert hausdorff_content_upper(s, 0.7, 0.125) == pytest.approx(0.125**0.7)
    two = explicit([0.1, 0.9])
    assert hausdorff_content_upper(two, 0.5, 0.1) == pytest.approx(2 * 0.1**0.5)


def minimal_interval_cover(xs, r):
    """Exhaustive DP oracle: fewest closed intervals of length 2r covering xs."""
    xs = np.sort(xs)
    n = xs.size
    best = {n: 0}

    def solve(i):
        if i in best:
            return best[i]
        j = i
        while j < n and xs[j] <= xs[i] + 2 * r:
            j += 1
        best[i] = 1 + solve(j)
        return best[i]

    return solve(0)


def test_hausdorff_greedy_matches_interval_oracle():
    e = omega_exp(20)
    for r in (1 / 64, 1 / 128, 1 / 32):
        got = hausdorff_content_upper(e, 0.5, r)
        oracle = minimal_interval_cover(e.coords, r) * r**0.5
        assert got == pytest.approx(oracle, abs=0)


def test_hausdorff_no_increase_when_halving_r():
    e = omega_exp(20)
    v64 = hausdorff_content_upper(e, 0.5, 1 / 64)
    v128 = hausdorff_content_upper(e, 0.5, 1 / 128)
    assert v128 <= v64 + 1e-15


def test_hausdorff_2d_upper_bound_sane():
    g = uniform_grid(4, dimension=2)
    # one ball of radius 1 covers everything
    assert hausdorff_content_upper(g, 1.0, 1.0) == pytest.approx(1.0)
    with pytest.raises(DomainError):
        hausdorff_content_upper(g, -1.0, 0.5)
    with pytest.raises(DomainError):
        hausdorff_content_upper(g, 0.5, 2.0)
