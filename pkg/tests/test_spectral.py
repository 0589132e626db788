import math

import numpy as np
import pytest

from heatscope.eigenbasis import enumerate_modes
from heatscope.errors import ContractError
from heatscope.pointsets import explicit, product, singleton, uniform_grid
from heatscope.spectral import (
    SpectralFit,
    eval_matrix,
    fit_growth,
    nullspace_witness,
    product_compose_check,
    spectral_constant,
)

SQRT2 = math.sqrt(2.0)


def test_eval_matrix_examples():
    sl = enumerate_modes(1, 1.0, 1.0)
    assert eval_matrix(sl, singleton(0.5)) == pytest.approx(np.array([[SQRT2]]))
    sl2 = enumerate_modes(2, 2.0, 1.0)
    assert eval_matrix(sl2, singleton((0.5, 0.5))) == pytest.approx(np.array([[2.0]]))
    sl12 = enumerate_modes(1, 4.0, 1.0)
    got = eval_matrix(sl12, singleton(1.0 / 3.0))
    expect = [[SQRT2 * math.sin(math.pi / 3), SQRT2 * math.sin(2 * math.pi / 3)]]
    assert got == pytest.approx(np.array(expect))


def test_eval_matrix_dimension_mismatch():
    sl = enumerate_modes(2, 5.0, 1.0)
    with pytest.raises(ContractError):
        eval_matrix(sl, singleton(0.5))


def test_spectral_constant_single_mode_point():
    sl = enumerate_modes(1, 1.0, 1.0)
    sc = spectral_constant(sl, singleton(0.5))
    assert sc.status == "finite"
    assert sc.lower == pytest.approx(1 / SQRT2, rel=1e-9)
    assert sc.upper == pytest.approx(1 / SQRT2, rel=1e-12)


def test_spectral_constant_rank_deficient():
    sl = enumerate_modes(1, 9.0, 1.0)  # three modes, one point
    sc = spectral_constant(sl, singleton(0.37))
    assert sc.is_infinite and math.isinf(sc.lower)
    matrix = eval_matrix(sl, singleton(0.37))
    assert np.max(np.abs(matrix @ sc.witness)) <= 1e-10


def test_spectral_constant_two_by_two_closed_form():
    sl = enumerate_modes(1, 4.0, 1.0)  # k = 1, 2
    obs = explicit([0.25, 0.75])
    sc = spectral_constant(sl, obs)
    # E = [[1, sqrt2], [1, -sqrt2]]: sigma = (2, sqrt2); min sup-norm = 1 at e1
    assert sc.sigma_min == pytest.approx(SQRT2, rel=1e-12)
    assert sc.upper == pytest.approx(1.0, rel=1e-12)
    assert 0.995 <= sc.lower <= sc.upper * (1 + 1e-9)
    matrix = eval_matrix(sl, obs)
    assert sc.witness_ratio(matrix) == pytest.approx(sc.lower, rel=1e-10)


def sphere_grid(n, v_extra, count=4000):
    if n == 1:
        pts = np.array([[1.0], [-1.0]])
    elif n == 2:
        th = np.linspace(0, 2 * math.pi, count, endpoint=False)
        pts = np.stack([np.cos(th), np.sin(th)], axis=1)
    else:
        i = np.arange(count, dtype=float)
        phi = math.pi * (3.0 - math.sqrt(5.0)) * i
        z = 1.0 - 2.0 * (i + 0.5) / count
        r = np.sqrt(1.0 - z**2)
        pts = np.stack([r * np.cos(phi), r * np.sin(phi), z], axis=1)
    pts = np.vstack([pts, v_extra[None, :], -v_extra[None, :]])
    return pts / np.linalg.norm(pts, axis=1, keepdims=True)


def test_bracket_validity_small_dimensions():
    rng = np.random.default_rng(71)
    for _ in range(30):
        n = int(rng.integers(1, 4))
        m = int(rng.integers(n, n + 4))
        matrix = rng.standard_normal((m, n))
        _, svals, vt = np.linalg.svd(matrix)
        smin = svals[-1]
        grid = sphere_grid(n, vt[-1])
        min_inf = float(np.min(np.max(np.abs(grid @ matrix.T), axis=1)))
        assert smin / math.sqrt(m) - 1e-9 <= min_inf <= smin + 1e-9


def test_nullspace_witness_diagonal_eigenfunction():
    # eigenvalue 5 on the square: the antisymmetric combination vanishes on the diagonal
    sl = enumerate_modes(2, 5.0, 1.0)
    diag_pts = explicit([[0.3, 0.3], [0.7, 0.7]])
    w = nullspace_witness(sl, diag_pts)
    assert w is not None
    idx = {m.index: j for j, m in enumerate(sl.modes)}
    j12, j21 = idx[(1, 2)], idx[(2, 1)]
    # supported on the eigenvalue-5 eigenspace, antisymmetric up to sign
    assert abs(w[j12] + w[j21]) <= 1e-10
    assert abs(abs(w[j12]) - 1 / SQRT2) <= 1e-10
    others = [j for j in range(len(sl)) if j not in (j12, j21)]
    assert np.max(np.abs(w[others])) <= 1e-12 if others else True
    # vanishes along the whole diagonal
    ts = np.linspace(0.01, 0.99, 100)
    diag = np.stack([ts, ts], axis=1)
    from heatscope.eigenbasis import mode_matrix

    vals = mode_matrix(sl, diag) @ w
    assert np.max(np.abs(vals)) <= 1e-12


def test_nullspace_witness_rank_argument():
    rng = np.random.default_rng(13)
    sl = enumerate_modes(1, 25.0, 1.0)  # 5 modes
    pts = np.sort(rng.uniform(0.05, 0.95, size=4))
    w = nullspace_witness(sl, explicit(pts))
    assert w is not None
    matrix = eval_matrix(sl, explicit(pts))
    assert np.max(np.abs(matrix @ w)) <= 1e-10
    assert np.linalg.norm(w) == pytest.approx(1.0, abs=1e-12)


def test_nullspace_witness_eigenspace_r50():
    sl = enumerate_modes(2, 50.0, 1.0)
    rng = np.random.default_rng(2024)
    pts = rng.uniform(0.1, 0.9, size=(2, 2))
    w = nullspace_witness(sl, explicit(pts))
    assert w is not None
    matrix = eval_matrix(sl, explicit(pts))
    assert np.max(np.abs(matrix @ w)) <= 1e-10
    support = {sl.modes[j].sum_squares for j in np.nonzero(np.abs(w) > 1e-12)[0]}
    assert support == {50}


def test_nullspace_witness_none_for_generic_overdetermined():
    sl = enumerate_modes(1, 4.0, 1.0)
    w = nullspace_witness(sl, explicit([0.21, 0.52, 0.77]))
    assert w is None


def test_fit_growth_recovers_synthetic_law():
    lams = np.linspace(1.0, 30.0, 12)
    samples = [(lam, 2.0 * math.exp(2.0 * math.sqrt(lam))) for lam in lams]
    fit = fit_growth(samples)
    assert fit.beta == pytest.approx(0.5, abs=1e-9)
    assert fit.growth_constant == pytest.approx(2.0, rel=1e-6)
    assert fit.prefactor == pytest.approx(2.0, rel=1e-6)


def test_fit_growth_flat_data():
    samples = [(float(lam), 3.0) for lam in (1, 2, 4, 8)]
    fit = fit_growth(samples)
    assert fit.beta == pytest.approx(0.01)
    assert fit.residual <= 1e-9
    assert fit.growth_constant == pytest.approx(0.0, abs=1e-9)


def test_fit_growth_contract_errors():
    with pytest.raises(ContractError):
        fit_growth([(1.0, 2.0), (2.0, 3.0)])
    with pytest.raises(ContractError):
        fit_growth([(2.0, 2.0), (1.0, 3.0), (3.0, 4.0)])
    with pytest.raises(ContractError):
        fit_growth([(1.0, 2.0), (2.0, math.inf), (3.0, 4.0)])


def test_monotone_lower_bound_under_added_points():
    sl = enumerate_modes(1, 9.0, 1.0)
    obs = explicit([0.2, 0.5, 0.8])
    sc = spectral_constant(sl, obs)
    bigger = explicit([0.2, 0.35, 0.5, 0.8])
    mat_big = eval_matrix(sl, bigger)
    # same witness, more rows: the sup over rows can only grow
    assert sc.witness_ratio(mat_big) <= sc.lower + 1e-15


def test_witness_ratio_scale_invariant():
    sl = enumerate_modes(1, 9.0, 1.0)
    obs = explicit([0.2, 0.5, 0.8])
    sc = spectral_constant(sl, obs)
    matrix = eval_matrix(sl, obs)
    c = sc.witness
    base = np.linalg.norm(c) / np.max(np.abs(matrix @ c))
    for j in (1, 3, -2):
        lam = 2.0**j
        scaled = np.linalg.norm(lam * c) / np.max(np.abs(matrix @ (lam * c)))
        assert scaled == base  # exact: powers of two only move exponents


def make_fit(beta):
    return SpectralFit(
        cutoffs=(1.0, 2.0, 4.0),
        constants=(1.0, 1.0, 1.0),
        beta=beta,
        growth_constant=1.0,
        log_prefactor=0.0,
        residual=0.0,
    )


def test_product_compose_single_mode_factors():
    obs = uniform_grid(9)
    prod_slice = enumerate_modes(2, 2.0, 1.0)  # only mode (1,1)
    fit = make_fit(0.5)
    chk = product_compose_check(prod_slice, obs, obs, fit, fit)
    assert not chk.inherited_infinite
    assert chk.holds
    # with one mode per factor the product lower bound factorizes exactly
    assert chk.measured.lower == pytest.approx(chk.factor1.lower * chk.factor2.lower, rel=1e-9)


def test_product_compose_beta_mismatch():
    obs = uniform_grid(9)
    prod_slice = enumerate_modes(2, 2.0, 1.0)
    with pytest.raises(ContractError):
        product_compose_check(prod_slice, obs, obs, make_fit(0.5), make_fit(0.7))


def test_product_compose_inherits_nullspace():
    # factor with one observation point but several modes is rank deficient
    obs1 = singleton(0.37)
    obs2 = uniform_grid(9)
    prod_slice = enumerate_modes(2, 10.0, 1.0)
    fit = make_fit(0.5)
    chk = product_compose_check(prod_slice, obs1, obs2, fit, fit)
    assert chk.inherited_infinite
    assert math.isinf(chk.log_composed)
    assert chk.measured.is_infinite
