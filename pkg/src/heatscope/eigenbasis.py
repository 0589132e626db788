"""Dirichlet sine eigenbasis of the Laplacian on the unit box (0,1)^n.

Modes are indexed by tuples of positive integers (k_1, ..., k_n) with
eigenvalue scale * (k_1^2 + ... + k_n^2) and eigenfunction
prod_i sqrt(2) sin(pi k_i x_i), which is L2-normalized on the box.
The default scale pi^2 gives the true Dirichlet eigenvalues; scale=1
reproduces the bare sum-of-squares spectrum.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import cached_property
from typing import Optional, Sequence

import numpy as np

from .errors import ContractError, DomainError, ResourceError

DEFAULT_SCALE = math.pi**2
DEFAULT_MODE_LIMIT = 100_000


@dataclass(frozen=True)
class EigenMode:
    """One tensor-product sine mode: multi-index plus its eigenvalue."""

    index: tuple[int, ...]
    eigenvalue: float

    def __post_init__(self):
        if len(self.index) < 1 or any(k < 1 for k in self.index):
            raise DomainError(f"multi-index must have components >= 1, got {self.index}")

    @property
    def sum_squares(self) -> int:
        return sum(k * k for k in self.index)


@dataclass(frozen=True)
class SpectrumSlice:
    """All modes of (0,1)^n with eigenvalue <= cutoff, sorted by (eigenvalue, index)."""

    dimension: int
    cutoff: float
    scale: float
    modes: tuple[EigenMode, ...]

    def __len__(self) -> int:
        return len(self.modes)

    @cached_property
    def eigenvalues(self) -> np.ndarray:
        out = np.array([m.eigenvalue for m in self.modes], dtype=float)
        out.flags.writeable = False
        return out

    @cached_property
    def indices(self) -> np.ndarray:
        if not self.modes:
            out = np.zeros((0, self.dimension), dtype=np.int64)
        else:
            out = np.array([m.index for m in self.modes], dtype=np.int64)
        out.flags.writeable = False
        return out

    @property
    def max_index(self) -> int:
        """Largest single component over all mode indices (0 for an empty slice)."""
        if not self.modes:
            return 0
        return int(self.indices.max())


def enumerate_modes(
    dimension: int,
    cutoff: float,
    scale: float = DEFAULT_SCALE,
    max_modes: int = DEFAULT_MODE_LIMIT,
) -> SpectrumSlice:
    """Enumerate every mode with scale * sum(k_i^2) <= cutoff.

    Raises ResourceError when the count would exceed ``max_modes``; modes are
    never silently truncated.
    """
    if dimension < 1:
        raise DomainError(f"dimension must be >= 1, got {dimension}")
    if cutoff <= 0:
        raise DomainError(f"cutoff must be > 0, got {cutoff}")
    if scale <= 0:
        raise DomainError(f"scale must be > 0, got {scale}")

    # +1 guards against the floor of cutoff/scale rounding down at the boundary.
    k_hi = math.isqrt(int(cutoff / scale)) + 1
    found: list[tuple[int, tuple[int, ...]]] = []
    for idx in itertools.product(range(1, k_hi + 1), repeat=dimension):
        ss = sum(k * k for k in idx)
        if scale * ss <= cutoff:
            found.append((ss, idx))
            if len(found) > max_modes:
                raise ResourceError(
                    f"mode count exceeds the configured limit of {max_modes} "
                    f"(dimension={dimension}, cutoff={cutoff}, scale={scale})"
                )
    found.sort()
    modes = tuple(EigenMode(index=idx, eigenvalue=scale * ss) for ss, idx in found)
    return SpectrumSlice(dimension=dimension, cutoff=float(cutoff), scale=float(scale), modes=modes)


def _as_point(x, dimension: int) -> np.ndarray:
    pt = np.atleast_1d(np.asarray(x, dtype=float))
    if pt.shape != (dimension,):
        raise ContractError(f"point has shape {pt.shape}, expected ({dimension},)")
    if np.any(pt < 0.0) or np.any(pt > 1.0):
        raise DomainError(f"point {pt.tolist()} lies outside the closed unit box")
    return pt


def eval_mode(mode: EigenMode, x) -> float:
    """Evaluate prod_i sqrt(2) sin(pi k_i x_i) at a point of the closed box."""
    pt = _as_point(x, len(mode.index))
    ks = np.asarray(mode.index, dtype=float)
    return float(np.prod(math.sqrt(2.0) * np.sin(math.pi * ks * pt)))


def mode_matrix(spectrum: SpectrumSlice, points: np.ndarray) -> np.ndarray:
    """Matrix of mode values: entry (i, j) = mode_j evaluated at points[i].

    ``points`` has shape (m, n). Rows follow the point order, columns the
    slice order.
    """
    pts = np.asarray(points, dtype=float)
    if pts.ndim == 1:
        pts = pts[:, None]
    if pts.shape[1] != spectrum.dimension:
        raise ContractError(
            f"points have dimension {pts.shape[1]}, slice has dimension {spectrum.dimension}"
        )
    if np.any(pts < 0.0) or np.any(pts > 1.0):
        raise DomainError("some points lie outside the closed unit box")
    m = pts.shape[0]
    n_modes = len(spectrum)
    out = np.full((m, n_modes), 2.0 ** (spectrum.dimension / 2.0))
    idx = spectrum.indices
    for axis in range(spectrum.dimension):
        out *= np.sin(math.pi * pts[:, axis, None] * idx[None, :, axis])
    return out


def eval_combination(spectrum: SpectrumSlice, coefs: Sequence[float], x) -> float:
    """Evaluate sum_j coefs[j] * mode_j(x)."""
    c = np.asarray(coefs, dtype=float)
    if c.shape != (len(spectrum),):
        raise ContractError(
            f"coefficient vector has length {c.shape}, slice has {len(spectrum)} modes"
        )
    pt = _as_point(x, spectrum.dimension)
    if len(spectrum) == 0:
        return 0.0
    return float(mode_matrix(spectrum, pt[None, :])[0] @ c)


def multiplicity(dimension: int, r: int) -> int:
    """Count ordered tuples of positive integers with sum of squares exactly r.

    Pure exhaustive recursion; this is the oracle the faster table is checked
    against.
    """
    if r < 1:
        raise DomainError(f"r must be >= 1, got {r}")
    if dimension < 1:
        raise DomainError(f"dimension must be >= 1, got {dimension}")

    def count(n: int, rem: int) -> int:
        if n == 1:
            s = math.isqrt(rem)
            return 1 if s >= 1 and s * s == rem else 0
        total = 0
        k = 1
        while k * k <= rem - (n - 1):
            total += count(n - 1, rem - k * k)
            k += 1
        return total

    return count(dimension, r)


def multiplicity_table(dimension: int, r_max: int) -> np.ndarray:
    """Vector of multiplicities for r = 0..r_max, built by convolution."""
    if r_max < 1:
        raise DomainError(f"r_max must be >= 1, got {r_max}")
    if dimension < 1:
        raise DomainError(f"dimension must be >= 1, got {dimension}")
    squares = np.zeros(r_max + 1, dtype=np.int64)
    for k in range(1, math.isqrt(r_max) + 1):
        squares[k * k] = 1
    table = squares.copy()
    for _ in range(dimension - 1):
        nxt = np.zeros(r_max + 1, dtype=np.int64)
        for k in range(1, math.isqrt(r_max) + 1):
            nxt[k * k :] += table[: r_max + 1 - k * k]
        table = nxt
    return table


def find_high_multiplicity(dimension: int, target: int, r_max: int) -> Optional[int]:
    """Smallest r <= r_max whose multiplicity reaches ``target``, or None."""
    if target < 1:
        raise DomainError(f"target must be >= 1, got {target}")
    if r_max < 1:
        return None
    table = multiplicity_table(dimension, r_max)
    hits = np.nonzero(table >= target)[0]
    return int(hits[0]) if hits.size else None
