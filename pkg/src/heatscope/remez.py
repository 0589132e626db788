"""Sup-norm recovery of band-limited sine combinations from small sets.

A function whose derivatives satisfy sup |f^(l)| <= M_l sup |f| with
M_l0 / l0! <= 1/2 for some l0 obeys

    sup_[0,1] |f| <= (4 l0 / gamma_l0(E)) * sup_E |f|

for any E in [0,1].  The certificate below instantiates this with the
Bernstein rule M_l = (pi K)^l, valid for combinations of sin(pi k x)
with k <= K via the odd 2-periodic extension.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .eigenbasis import SpectrumSlice, mode_matrix
from .errors import ContractError, DomainError, ResourceError
from .pointsets import (
    DEFAULT_SUBSET_BUDGET,
    GammaEstimate,
    PointSet,
    gamma_exact,
    gamma_greedy_leja,
    gamma_objective,
)

BERNSTEIN_CONSTANT = math.pi


@dataclass(frozen=True)
class DerivBoundSeq:
    """Derivative-bound rule l -> M_l, stored as log M_l to avoid overflow."""

    log_m: Callable[[int], float]
    label: str

    def log_bound(self, ell: int) -> float:
        if ell < 0:
            raise DomainError(f"derivative order must be >= 0, got {ell}")
        return float(self.log_m(ell))


def bernstein_bounds(max_frequency: int, constant: float = BERNSTEIN_CONSTANT) -> DerivBoundSeq:
    """M_l = (constant * K)^l for sine combinations with mode index <= K."""
    if max_frequency < 0:
        raise DomainError(f"max_frequency must be >= 0, got {max_frequency}")
    if constant <= 0:
        raise DomainError(f"constant must be > 0, got {constant}")
    rate = constant * max_frequency
    log_rate = math.log(rate) if rate > 0 else -math.inf

    def log_m(ell: int) -> float:
        if ell == 0:
            return 0.0
        return ell * log_rate

    return DerivBoundSeq(log_m=log_m, label=f"bernstein(K={max_frequency}, C={constant:g})")


def constant_bounds(value: float) -> DerivBoundSeq:
    """M_l identically equal to ``value`` (testing convenience)."""
    if value < 0:
        raise DomainError(f"value must be >= 0, got {value}")
    log_v = math.log(value) if value > 0 else -math.inf
    return DerivBoundSeq(log_m=lambda ell: log_v, label=f"constant({value:g})")


def choose_ell0(bounds: DerivBoundSeq, ell_max: int) -> Optional[int]:
    """Smallest l0 in [1, ell_max] with M_l0 / l0! <= 1/2, or None."""
    if ell_max < 1:
        raise DomainError(f"ell_max must be >= 1, got {ell_max}")
    # cushion keeps exact boundary cases like M_2/2! = 1/2 admissible in log space
    target = math.log(0.5) + 1e-12
    for ell in range(1, ell_max + 1):
        if bounds.log_bound(ell) - math.lgamma(ell + 1) <= target:
            return ell
    return None


def lagrange_interp(nodes, values, x):
    """Value at x of the unique polynomial through (nodes, values).

    Direct Lagrange form; nodes must be pairwise distinct.  ``x`` may be a
    scalar or an array.
    """
    ns = np.asarray(nodes, dtype=float).ravel()
    vs = np.asarray(values, dtype=float).ravel()
    if ns.size != vs.size or ns.size < 1:
        raise ContractError(f"nodes and values must align, got {ns.size} vs {vs.size}")
    if np.unique(ns).size != ns.size:
        raise DomainError("interpolation nodes must be pairwise distinct")
    xs = np.atleast_1d(np.asarray(x, dtype=float))
    diff = xs[:, None] - ns[None, :]  # (m, k)
    out = np.zeros(xs.shape[0])
    for i in range(ns.size):
        li = np.ones(xs.shape[0])
        for j in range(ns.size):
            if j == i:
                continue
            li *= diff[:, j] / (ns[i] - ns[j])
        out += vs[i] * li
    return float(out[0]) if np.isscalar(x) or np.asarray(x).ndim == 0 else out


@dataclass(frozen=True)
class RemezCertificate:
    """Verified instance of the interpolation inequality for one function.

    ``lhs`` is the grid supremum, ``lhs_upper`` the certified sup-norm upper
    bound after the Bernstein resolution correction, ``log_rhs`` the log of
    factor * sup_E |f| (the linear ``rhs`` may overflow to inf).
    """

    ell0: int
    nodes: np.ndarray
    log_gamma: float
    log_factor: float
    lhs: float
    lhs_upper: float
    log_rhs: float
    holds: bool
    sup_on_set: float
    grid_size: int
    max_frequency: int
    bernstein_constant: float
    gamma_method: str

    @property
    def gamma_value(self) -> float:
        return math.exp(self.log_gamma)

    @property
    def factor(self) -> float:
        try:
            return math.exp(self.log_factor)
        except OverflowError:
            return math.inf

    @property
    def rhs(self) -> float:
        if self.sup_on_set == 0.0:
            return 0.0
        try:
            return math.exp(self.log_rhs)
        except OverflowError:
            return math.inf


def remez_verify(
    spectrum: SpectrumSlice,
    coefs,
    observation: PointSet,
    grid_size: int = 10_000,
    *,
    ell_max: int = 600,
    bernstein_constant: float = BERNSTEIN_CONSTANT,
    gamma_estimate: Optional[GammaEstimate] = None,
    subset_budget: int = DEFAULT_SUBSET_BUDGET,
    slack: float = 1e-9,
) -> RemezCertificate:
    """Build and check the certificate for f = sum_j coefs[j] mode_j.

    The node set is the gamma_l0 witness of ``observation`` (exact when the
    subset budget allows, greedy otherwise, or a caller-supplied estimate).
    The grid supremum is corrected by the Bernstein resolution factor
    1/(1 - pi K h / 2) so that ``holds`` certifies the true sup norm.
    """
    if spectrum.dimension != 1:
        raise ContractError("remez_verify requires a one-dimensional slice")
    if observation.dimension != 1:
        raise ContractError("remez_verify requires a one-dimensional observation set")
    c = np.asarray(coefs, dtype=float)
    if c.shape != (len(spectrum),):
        raise ContractError(f"coefficient vector has shape {c.shape}, slice has {len(spectrum)} modes")
    if grid_size < 2:
        raise DomainError(f"grid_size must be >= 2, got {grid_size}")

    k_max = spectrum.max_index
    bounds = bernstein_bounds(k_max, bernstein_constant)
    ell0 = choose_ell0(bounds, ell_max)
    if ell0 is None:
        raise ResourceError(f"no admissible l0 found up to ell_max = {ell_max}; raise ell_max")
    m = len(observation)
    if m < ell0:
        raise ContractError(
            f"observation set has {m} points but the rule requires at least {ell0} nodes"
        )

    if gamma_estimate is not None:
        if gamma_estimate.k != ell0:
            raise ContractError(
                f"supplied gamma estimate has k = {gamma_estimate.k}, required l0 = {ell0}"
            )
        gam = gamma_estimate
    elif math.comb(m, ell0) <= subset_budget:
        gam = gamma_exact(observation, ell0, subset_budget=subset_budget)
    else:
        gam = gamma_greedy_leja(observation, ell0)
    # the factor must be recomputable from the nodes alone
    log_gamma = gamma_objective(gam.witness)

    grid = np.linspace(0.0, 1.0, grid_size)
    fvals = mode_matrix(spectrum, grid[:, None]) @ c
    lhs = float(np.max(np.abs(fvals)))
    h = 1.0 / (grid_size - 1)
    resolution = bernstein_constant * k_max * h / 2.0
    if resolution >= 1.0:
        raise ContractError(
            f"grid of {grid_size} points cannot resolve frequencies up to {k_max}"
        )
    lhs_upper = lhs / (1.0 - resolution)

    sup_on_set = float(np.max(np.abs(mode_matrix(spectrum, observation.points) @ c)))
    log_factor = math.log(4.0 * ell0) - log_gamma
    if sup_on_set > 0.0:
        log_rhs = log_factor + math.log(sup_on_set)
        holds = lhs_upper == 0.0 or math.log(lhs_upper) <= log_rhs + math.log1p(slack)
    else:
        log_rhs = -math.inf
        holds = lhs_upper <= slack
    return RemezCertificate(
        ell0=ell0,
        nodes=gam.witness,
        log_gamma=log_gamma,
        log_factor=log_factor,
        lhs=lhs,
        lhs_upper=lhs_upper,
        log_rhs=log_rhs,
        holds=holds,
        sup_on_set=sup_on_set,
        grid_size=grid_size,
        max_frequency=k_max,
        bernstein_constant=bernstein_constant,
        gamma_method=gam.method,
    )
