"""Observation point sets and the transfinite-diameter quantity gamma_k.

gamma_k(E) is the largest, over k-point subsets of E, of the smallest
product of distances from one chosen point to the others.  All products
are handled in log space: the interesting families decay like C^{-k^2},
far below double-precision range.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import ContractError, DomainError, ResourceError

DEFAULT_SUBSET_BUDGET = 5_000_000


@dataclass(frozen=True)
class PointSet:
    """A finite set of points in the closed unit box, with generator provenance."""

    points: np.ndarray
    generator: str = "explicit"
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=float)
        if pts.ndim == 1:
            pts = pts[:, None]
        if pts.ndim != 2 or pts.shape[0] < 1:
            raise ContractError(f"points must form a nonempty (m, n) array, got shape {pts.shape}")
        if np.any(pts < 0.0) or np.any(pts > 1.0):
            raise DomainError("all points must lie in the closed unit box")
        rows = {tuple(row) for row in pts}
        if len(rows) != pts.shape[0]:
            raise DomainError("duplicate points are not allowed")
        pts = pts.copy()
        pts.flags.writeable = False
        object.__setattr__(self, "points", pts)

    @property
    def dimension(self) -> int:
        return self.points.shape[1]

    def __len__(self) -> int:
        return self.points.shape[0]

    @property
    def coords(self) -> np.ndarray:
        """One-dimensional coordinates; only valid when dimension == 1."""
        if self.dimension != 1:
            raise ContractError(f"coords requires a 1-d set, this one has dimension {self.dimension}")
        return self.points[:, 0]


def omega_alpha(alpha: float, count: int) -> PointSet:
    """First ``count`` members of the power family {i^-alpha : i = 1, 2, ...}."""
    if alpha <= 0:
        raise DomainError(f"alpha must be > 0, got {alpha}")
    if count < 1:
        raise DomainError(f"count must be >= 1, got {count}")
    pts = np.array([float(i) ** -alpha for i in range(1, count + 1)])
    return PointSet(pts, generator="omega_alpha", params={"alpha": alpha, "count": count})


def omega_exp(count: int) -> PointSet:
    """First ``count`` members of the dyadic family {2^-k : k = 1, 2, ...}."""
    if count < 1:
        raise DomainError(f"count must be >= 1, got {count}")
    pts = np.array([2.0**-k for k in range(1, count + 1)])
    return PointSet(pts, generator="omega_exp", params={"count": count})


def singleton(x0) -> PointSet:
    """A single interior point (scalar or coordinate tuple)."""
    pt = np.atleast_1d(np.asarray(x0, dtype=float))
    if np.any(pt <= 0.0) or np.any(pt >= 1.0):
        raise DomainError(f"singleton point must lie strictly inside the box, got {pt.tolist()}")
    return PointSet(pt[None, :], generator="singleton", params={"x0": pt.tolist()})


def uniform_grid(per_axis: int, dimension: int = 1) -> PointSet:
    """Interior uniform grid {j/(per_axis+1)} per axis, tensored over axes."""
    if per_axis < 1:
        raise DomainError(f"per_axis must be >= 1, got {per_axis}")
    if dimension < 1:
        raise DomainError(f"dimension must be >= 1, got {dimension}")
    axis = np.arange(1, per_axis + 1) / (per_axis + 1)
    pts = np.array(list(itertools.product(axis, repeat=dimension)))
    return PointSet(pts, generator="uniform_grid", params={"per_axis": per_axis, "dimension": dimension})


def cantor(level: int, ratio: float = 1.0 / 3.0) -> PointSet:
    """Endpoints of the level-``level`` intervals of a middle-excluded Cantor construction."""
    if level < 0:
        raise DomainError(f"level must be >= 0, got {level}")
    if not 0.0 < ratio < 0.5:
        raise DomainError(f"ratio must be in (0, 1/2), got {ratio}")
    intervals = [(0.0, 1.0)]
    for _ in range(level):
        nxt = []
        for a, b in intervals:
            w = (b - a) * ratio
            nxt.append((a, a + w))
            nxt.append((b - w, b))
        intervals = nxt
    pts = sorted({e for iv in intervals for e in iv})
    return PointSet(np.array(pts), generator="cantor", params={"level": level, "ratio": ratio})


def product(a: PointSet, b: PointSet) -> PointSet:
    """Cartesian product: every pair (x, y) with x in a, y in b."""
    rows = np.array([np.concatenate([x, y]) for x in a.points for y in b.points])
    return PointSet(
        rows,
        generator="product",
        params={"a": {"generator": a.generator, **a.params}, "b": {"generator": b.generator, **b.params}},
    )


def explicit(points) -> PointSet:
    return PointSet(np.asarray(points, dtype=float), generator="explicit")


def generate(descriptor: dict) -> PointSet:
    """Build a PointSet from a CLI-style generator descriptor."""
    if not isinstance(descriptor, dict) or "kind" not in descriptor:
        raise DomainError("generator descriptor must be a mapping with a 'kind' field")
    kind = descriptor["kind"]
    if kind == "omega_alpha":
        return omega_alpha(descriptor["alpha"], descriptor["count"])
    if kind == "omega_exp":
        return omega_exp(descriptor["count"])
    if kind == "singleton":
        return singleton(descriptor["x0"])
    if kind == "uniform_grid":
        return uniform_grid(descriptor["per_axis"], descriptor.get("dimension", 1))
    if kind == "cantor":
        return cantor(descriptor["level"], descriptor.get("ratio", 1.0 / 3.0))
    if kind == "product":
        return product(generate(descriptor["a"]), generate(descriptor["b"]))
    if kind == "explicit":
        return explicit(descriptor["points"])
    raise DomainError(f"unknown generator kind {kind!r}")


@dataclass(frozen=True)
class GammaEstimate:
    """gamma_k estimate: log value plus the witness subset that attains it.

    ``value`` is the linear-scale number; it underflows to 0.0 when the log
    value is below double range, in which case ``log_value`` stays exact.
    """

    k: int
    log_value: float
    witness_indices: tuple[int, ...]
    witness: np.ndarray
    method: str

    @property
    def value(self) -> float:
        return math.exp(self.log_value)


def _log_gap_matrix(coords: np.ndarray) -> np.ndarray:
    d = np.abs(coords[:, None] - coords[None, :])
    with np.errstate(divide="ignore"):
        ld = np.log(d)
    np.fill_diagonal(ld, 0.0)  # diagonal excluded from row sums
    return ld


def gamma_objective(coords: np.ndarray) -> float:
    """log of min_i prod_{j != i} |x_i - x_j| for the given witness points."""
    coords = np.asarray(coords, dtype=float).ravel()
    if coords.size < 2:
        raise ContractError("gamma objective needs at least two points")
    ld = _log_gap_matrix(coords)
    return float(np.min(ld.sum(axis=1)))


def _require_1d(pointset: PointSet) -> np.ndarray:
    if pointset.dimension != 1:
        raise ContractError("gamma_k is only defined for one-dimensional point sets here")
    return pointset.coords


def gamma_exact(pointset: PointSet, k: int, subset_budget: int = DEFAULT_SUBSET_BUDGET) -> GammaEstimate:
    """Exact gamma_k by exhaustive search over all k-subsets.

    Ties are broken toward the lexicographically smallest witness index set
    (combinations are visited in lexicographic order and only strict
    improvements are kept).
    """
    coords = _require_1d(pointset)
    m = coords.size
    if not 2 <= k <= m:
        raise ContractError(f"need 2 <= k <= |E| = {m}, got k = {k}")
    n_subsets = math.comb(m, k)
    if n_subsets > subset_budget:
        raise ResourceError(
            f"{n_subsets} subsets exceed the budget of {subset_budget}; use gamma_greedy_leja"
        )
    ld = _log_gap_matrix(coords)
    best_val = -math.inf
    best_idx: tuple[int, ...] = ()
    chunk = 8192
    combo_iter = itertools.combinations(range(m), k)
    while True:
        block = list(itertools.islice(combo_iter, chunk))
        if not block:
            break
        idx = np.array(block, dtype=np.intp)  # (B, k), lexicographic order
        sub = ld[idx[:, :, None], idx[:, None, :]]
        vals = sub.sum(axis=2).min(axis=1)
        j = int(np.argmax(vals))
        if vals[j] > best_val:
            best_val = float(vals[j])
            best_idx = tuple(int(t) for t in block[j])
    return GammaEstimate(
        k=k,
        log_value=best_val,
        witness_indices=best_idx,
        witness=coords[list(best_idx)].copy(),
        method="exact",
    )


def gamma_greedy_leja(pointset: PointSet, k: int) -> GammaEstimate:
    """Leja-style greedy gamma_k: start from a diameter pair, then repeatedly
    add the point that maximizes the resulting min-product.

    The value never exceeds gamma_exact. Ties are broken toward smaller
    coordinates for determinism.
    """
    coords = _require_1d(pointset)
    m = coords.size
    if not 2 <= k <= m:
        raise ContractError(f"need 2 <= k <= |E| = {m}, got k = {k}")
    ld = _log_gap_matrix(coords)

    # diameter-realizing seed pair, ties toward smallest coordinates
    d = np.abs(coords[:, None] - coords[None, :])
    dmax = d.max()
    pairs = np.argwhere(d >= dmax)
    keyed = sorted(
        (tuple(sorted((coords[i], coords[j]))), int(min(i, j)), int(max(i, j)))
        for i, j in pairs
        if i < j
    )
    _, i0, j0 = keyed[0]
    selected = [i0, j0]
    row_sums = ld[selected][:, selected].sum(axis=1)  # within-witness sums

    while len(selected) < k:
        mask = np.ones(m, dtype=bool)
        mask[selected] = False
        cand = np.nonzero(mask)[0]
        cols = ld[np.ix_(selected, cand)]  # (s, c)
        with_new = np.minimum((row_sums[:, None] + cols).min(axis=0), cols.sum(axis=0))
        best = with_new.max()
        ties = cand[with_new >= best]
        c_star = int(ties[np.argmin(coords[ties])])
        row_sums = row_sums + ld[selected, c_star]
        row_sums = np.append(row_sums, ld[c_star, selected].sum())
        selected.append(c_star)

    order = tuple(sorted(selected))
    return GammaEstimate(
        k=k,
        log_value=float(np.min(row_sums)),
        witness_indices=order,
        witness=coords[list(order)].copy(),
        method="greedy_leja",
    )


def gamma_first_k(pointset: PointSet, k: int) -> GammaEstimate:
    """gamma objective of the first k family members, in generator order.

    This is the witness used by the lower-bound argument for the power
    families; it is a valid (generally suboptimal) gamma_k witness.
    """
    coords = _require_1d(pointset)
    if not 2 <= k <= coords.size:
        raise ContractError(f"need 2 <= k <= |E| = {coords.size}, got k = {k}")
    idx = tuple(range(k))
    return GammaEstimate(
        k=k,
        log_value=gamma_objective(coords[:k]),
        witness_indices=idx,
        witness=coords[:k].copy(),
        method="first_k",
    )


_GAMMA_METHODS = {
    "greedy": gamma_greedy_leja,
    "exact": gamma_exact,
    "first_k": gamma_first_k,
}


def gamma_estimate(pointset: PointSet, k: int, method: str = "greedy") -> GammaEstimate:
    """Dispatch to one of the gamma_k methods by name."""
    if method not in _GAMMA_METHODS:
        raise DomainError(f"unknown gamma method {method!r}")
    return _GAMMA_METHODS[method](pointset, k)


@dataclass(frozen=True)
class GammaGrowthFit:
    law: str
    method: str
    ks: tuple[int, ...]
    log_values: tuple[float, ...]
    slope: float
    intercept: float
    residual: float


def gamma_growth_fit(
    pointset: PointSet,
    ks,
    law: str = "k_log_k",
    method: str = "greedy",
) -> GammaGrowthFit:
    """Least-squares slope of log gamma_k against k*log(k) or k^2."""
    ks = tuple(int(k) for k in ks)
    if len(ks) < 3:
        raise ContractError(f"need at least 3 sample points, got {len(ks)}")
    if law not in ("k_log_k", "k_squared"):
        raise DomainError(f"unknown law {law!r}")
    if method not in _GAMMA_METHODS:
        raise DomainError(f"unknown gamma method {method!r}")
    est = _GAMMA_METHODS[method]
    logs = np.array([est(pointset, k).log_value for k in ks])
    karr = np.array(ks, dtype=float)
    x = karr * np.log(karr) if law == "k_log_k" else karr**2
    design = np.vstack([np.ones_like(x), x]).T
    coef, *_ = np.linalg.lstsq(design, logs, rcond=None)
    resid = float(np.linalg.norm(logs - design @ coef))
    return GammaGrowthFit(
        law=law,
        method=method,
        ks=ks,
        log_values=tuple(float(v) for v in logs),
        slope=float(coef[1]),
        intercept=float(coef[0]),
        residual=resid,
    )


def loglog_exponent(ks, log_values) -> float:
    """Slope of log(-log gamma_k) against log k.

    This estimates the exponent q in gamma_k ~ exp(-c k^q); q = 2 for the
    dyadic family, q = 1 for families with positive capacity.
    """
    karr = np.asarray(ks, dtype=float)
    logs = np.asarray(log_values, dtype=float)
    if karr.size < 3:
        raise ContractError("need at least 3 sample points")
    if np.any(logs >= 0.0):
        raise ContractError("loglog exponent requires gamma_k < 1 throughout")
    x = np.log(karr)
    y = np.log(-logs)
    design = np.vstack([np.ones_like(x), x]).T
    coef, *_ = np.linalg.lstsq(design, y, rcond=None)
    return float(coef[1])


def hausdorff_content_upper(pointset: PointSet, s: float, r: float) -> float:
    """Upper bound on the s-Hausdorff content by a greedy radius-r ball cover.

    One dimension uses the left-to-right interval sweep (optimal there);
    higher dimensions use greedy max-coverage with balls centered at points.
    Returns (ball count) * r^s.
    """
    if s <= 0:
        raise DomainError(f"s must be > 0, got {s}")
    if not 0.0 < r <= 1.0:
        raise DomainError(f"r must be in (0, 1], got {r}")
    pts = pointset.points
    if pointset.dimension == 1:
        xs = np.sort(pts[:, 0])
        count = 0
        i = 0
        while i < xs.size:
            hi = xs[i] + 2.0 * r
            count += 1
            while i < xs.size and xs[i] <= hi:
                i += 1
        return count * r**s
    covered = np.zeros(len(pointset), dtype=bool)
    count = 0
    d2 = ((pts[:, None, :] - pts[None, :, :]) ** 2).sum(axis=2)
    within = d2 <= r * r
    while not covered.all():
        gains = (within & ~covered[None, :]).sum(axis=1)
        center = int(np.argmax(gains))  # argmax takes the smallest index on ties
        covered |= within[center]
        count += 1
    return count * r**s
