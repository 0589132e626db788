"""Arithmetic diagnostics for single-point observation on (0,1).

How observable a point x0 is hinges on how far the multiples k*x0 stay
from integers: the nodal gap g(K) = min_{k<=K} |sin(pi k x0)| measures the
distance of x0 from the nodal sets of the first K modes.  Continued
fractions (computed in high precision, the only place the package leaves
doubles) expose the rational approximation structure behind the profile.

The classifier at the end is a heuristic annotation only; no mathematical
claim is derived from it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

import mpmath
import numpy as np

from .errors import ContractError, DomainError

DEFAULT_PRECISION_BITS = 192
MAX_DEPTH = 40


@dataclass(frozen=True)
class CFExpansion:
    """Continued fraction [0; a_1, a_2, ...] of a number in (0,1)."""

    x0: float
    quotients: tuple[int, ...]
    convergents: tuple[tuple[int, int], ...]
    truncated: bool
    terminated: bool
    precision_bits: int


def continued_fraction(
    x0: Union[float, str, Fraction, mpmath.mpf],
    depth: int,
    precision_bits: int = DEFAULT_PRECISION_BITS,
) -> CFExpansion:
    """Partial quotients of x0 by the Gauss map in >= 128-bit arithmetic.

    ``x0`` may be a float, an mpmath number, a Fraction, or a string: either
    an exact rational like "1/3" or an expression such as "(sqrt(5)-1)/2"
    evaluated at working precision.  Rationals run in exact integer
    arithmetic and terminate; irrational inputs stop early with
    ``truncated`` = True once further quotients would outrun the input
    precision.
    """
    if not 1 <= depth <= MAX_DEPTH:
        raise DomainError(f"depth must be in [1, {MAX_DEPTH}], got {depth}")
    precision_bits = max(precision_bits, 128)

    rational = _as_rational(x0)
    if rational is not None:
        if not 0 < rational < 1:
            raise DomainError(f"x0 must be in (0,1), got {rational}")
        return _rational_expansion(rational, depth, precision_bits)

    with mpmath.workprec(precision_bits):
        value = _parse_expr(x0) if isinstance(x0, str) else mpmath.mpf(x0)
        if not 0 < value < 1:
            raise DomainError(f"x0 must be in (0,1), got {mpmath.nstr(value)}")
        # quotients beyond the input resolution are meaningless
        if isinstance(x0, float):
            resolution = mpmath.mpf(2) ** -52
        else:
            resolution = mpmath.mpf(2) ** (-(precision_bits - 8))

        quotients: list[int] = []
        convergents: list[tuple[int, int]] = []
        p_prev, q_prev = 1, 0
        p_cur, q_cur = 0, 1
        frac = value
        truncated = False
        terminated = False
        for _ in range(depth):
            inv = 1 / frac
            a = int(mpmath.floor(inv))
            rem = inv - a
            p_cur, p_prev = a * p_cur + p_prev, p_cur
            q_cur, q_prev = a * q_cur + q_prev, q_cur
            quotients.append(a)
            convergents.append((p_cur, q_cur))
            if rem == 0:
                terminated = True
                break
            err = abs(value - mpmath.mpf(p_cur) / q_cur)
            if err <= resolution:
                truncated = True
                break
            frac = rem
        x0_float = float(value)
    return CFExpansion(
        x0=x0_float,
        quotients=tuple(quotients),
        convergents=tuple(convergents),
        truncated=truncated,
        terminated=terminated,
        precision_bits=precision_bits,
    )


def _as_rational(x0) -> Optional[Fraction]:
    if isinstance(x0, Fraction):
        return x0
    if isinstance(x0, str):
        parts = x0.split("/")
        if len(parts) == 2:
            try:
                return Fraction(int(parts[0].strip()), int(parts[1].strip()))
            except ValueError:
                return None
    return None


def _rational_expansion(value: Fraction, depth: int, precision_bits: int) -> CFExpansion:
    quotients: list[int] = []
    convergents: list[tuple[int, int]] = []
    p_prev, q_prev = 1, 0
    p_cur, q_cur = 0, 1
    num, den = value.numerator, value.denominator
    for _ in range(depth):
        if num == 0:
            break
        a, rem = divmod(den, num)
        p_cur, p_prev = a * p_cur + p_prev, p_cur
        q_cur, q_prev = a * q_cur + q_prev, q_cur
        quotients.append(a)
        convergents.append((p_cur, q_cur))
        den, num = num, rem
    return CFExpansion(
        x0=float(value),
        quotients=tuple(quotients),
        convergents=tuple(convergents),
        truncated=False,
        terminated=num == 0,
        precision_bits=precision_bits,
    )


def _parse_expr(text: str) -> mpmath.mpf:
    """Evaluate a small arithmetic expression with sqrt at working precision."""
    allowed = {"sqrt": mpmath.sqrt, "mpf": mpmath.mpf, "pi": mpmath.pi, "e": mpmath.e}
    try:
        return mpmath.mpf(eval(text, {"__builtins__": {}}, allowed))  # noqa: S307
    except Exception as exc:
        raise DomainError(f"cannot parse x0 expression {text!r}: {exc}") from exc


@dataclass(frozen=True)
class NodalGapProfile:
    """Running minimum g(K) = min_{k<=K} |sin(pi k x0)| with its drop events."""

    x0: float
    k_max: int
    gaps: np.ndarray  # gaps[K-1] = g(K)
    events: tuple[tuple[int, float], ...]  # (k, new minimum) where the running min drops

    def g(self, k: int) -> float:
        if not 1 <= k <= self.k_max:
            raise DomainError(f"K must be in [1, {self.k_max}], got {k}")
        return float(self.gaps[k - 1])


def nodal_gap_profile(x0: float, k_max: int) -> NodalGapProfile:
    """Exact minimization of |sin(pi k x0)| over k <= K for every K <= k_max.

    The sine magnitude is evaluated through the distance of k*x0 to the
    nearest integer, so rational x0 with denominator <= k_max produce an
    exact zero.
    """
    if k_max < 1:
        raise DomainError(f"k_max must be >= 1, got {k_max}")
    if not 0 < x0 < 1:
        raise DomainError(f"x0 must be in (0,1), got {x0}")
    ks = np.arange(1, k_max + 1, dtype=float)
    frac = ks * x0
    dist = np.abs(frac - np.round(frac))
    vals = np.abs(np.sin(math.pi * dist))
    gaps = np.minimum.accumulate(vals)
    events = [(1, float(vals[0]))]
    for k in range(2, k_max + 1):
        if gaps[k - 1] < gaps[k - 2]:
            events.append((k, float(gaps[k - 1])))
    gaps.flags.writeable = False
    return NodalGapProfile(x0=x0, k_max=k_max, gaps=gaps, events=tuple(events))


@dataclass(frozen=True)
class ClassifyThresholds:
    """Configuration for the heuristic profile classifier (defaults documented).

    badly_min_slope: overall log-log slope above this reads as badly
    approximable.  liouville_slope: a single drop event steeper than this,
    sustained for at least ``sustain_factor`` times its K, reads as a
    Liouville-like masquerade.
    """

    badly_min_slope: float = -1.5
    liouville_slope: float = -3.0
    sustain_factor: float = 10.0


DEFAULT_THRESHOLDS = ClassifyThresholds()

LABELS = ("rational_like", "badly_approximable_like", "liouville_like", "inconclusive")


def classify(profile: NodalGapProfile, thresholds: ClassifyThresholds = DEFAULT_THRESHOLDS) -> str:
    """Heuristic label from the decay of the nodal gap profile.

    Annotates experiment reports only; diophantine type is not decidable
    from floating point data.
    """
    if profile.k_max < 100:
        raise ContractError(f"classification needs k_max >= 100, got {profile.k_max}")
    if profile.gaps[-1] == 0.0:
        return "rational_like"
    events = profile.events
    # local slope of each drop, and how long the new minimum persists
    for i in range(len(events) - 1):
        k0, g0 = events[i]
        k1, g1 = events[i + 1]
        slope = (math.log(g1) - math.log(g0)) / (math.log(k1) - math.log(k0))
        next_k = events[i + 2][0] if i + 2 < len(events) else profile.k_max
        if slope <= thresholds.liouville_slope and next_k >= thresholds.sustain_factor * k1:
            return "liouville_like"
    if len(events) >= 3:
        ks = np.array([k for k, _ in events], dtype=float)
        gs = np.array([g for _, g in events], dtype=float)
        design = np.vstack([np.ones_like(ks), np.log(ks)]).T
        coef, *_ = np.linalg.lstsq(design, np.log(gs), rcond=None)
        if coef[1] >= thresholds.badly_min_slope:
            return "badly_approximable_like"
        return "inconclusive"
    return "inconclusive"
