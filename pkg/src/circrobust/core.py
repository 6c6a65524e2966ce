"""Angle arithmetic, summary statistics and the circular (Fréchet) median.

Angles are radians, stored canonically on [−π, π).  Every function accepts
array-likes of any real angles and canonicalizes them on entry.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateResultant, EmptyDataset, InvalidAngle, NonUniqueMedian

__all__ = [
    "TWO_PI",
    "RHO_MIN",
    "canonicalize",
    "as_angles",
    "arc_distance",
    "signed_offset",
    "resultant",
    "circular_mean",
    "resultant_length",
    "csd",
    "frechet_median",
    "median_objective",
    "circular_quartiles",
    "CircularSummary",
    "summarize",
]

TWO_PI = 2.0 * math.pi
#: Below this mean resultant length the mean direction is treated as undefined.
RHO_MIN = 1e-12


def canonicalize(x):
    """Map angles to [−π, π).

    Values already in range are returned unchanged, so the map is idempotent
    bit for bit.  Both −π and π map to −π.

    Raises
    ------
    InvalidAngle
        If any input is NaN or infinite.
    """
    a = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(a)):
        raise InvalidAngle("angles must be finite")
    inside = (a >= -math.pi) & (a < math.pi)
    w = np.mod(a + math.pi, TWO_PI) - math.pi
    # mod can round up to exactly π for inputs a hair below an odd multiple of π
    w = np.where(w >= math.pi, w - TWO_PI, w)
    out = np.where(inside, a, w)
    return float(out) if out.ndim == 0 else out


def as_angles(x) -> np.ndarray:
    """Validate a sample and return it as a canonical 1-D float array."""
    a = np.atleast_1d(np.asarray(x, dtype=float)).ravel()
    if a.size == 0:
        raise EmptyDataset("no angles supplied")
    return np.atleast_1d(canonicalize(a))


def arc_distance(a, b):
    """Geodesic distance on the unit circle, in [0, π]."""
    d = np.mod(np.abs(np.asarray(a, dtype=float) - np.asarray(b, dtype=float)), TWO_PI)
    out = math.pi - np.abs(math.pi - d)
    return float(out) if np.ndim(out) == 0 else out


def signed_offset(theta, ref):
    """Signed offset ``theta − ref`` wrapped to [−π, π)."""
    return canonicalize(np.asarray(theta, dtype=float) - ref)


def resultant(angles) -> tuple[float, float]:
    """Mean of cos and sin over the sample."""
    a = as_angles(angles)
    return float(np.mean(np.cos(a))), float(np.mean(np.sin(a)))


def resultant_length(angles) -> float:
    """Mean resultant length ρ̂ in [0, 1]."""
    c, s = resultant(angles)
    return min(1.0, math.hypot(c, s))


def circular_mean(angles) -> tuple[float, float]:
    """Mean direction and mean resultant length.

    Returns
    -------
    mean : float
        Mean direction on [−π, π).
    rho : float
        Mean resultant length.

    Raises
    ------
    DegenerateResultant
        If ρ̂ is below ``RHO_MIN``.
    """
    c, s = resultant(angles)
    rho = min(1.0, math.hypot(c, s))
    if rho < RHO_MIN:
        raise DegenerateResultant(f"mean resultant length {rho:.3g} is numerically zero")
    return canonicalize(math.atan2(s, c)), rho


def csd(angles) -> float:
    """Circular standard deviation √(2(1 − ρ̂)), in [0, √2]."""
    return math.sqrt(2.0 * (1.0 - resultant_length(angles)))


def median_objective(angles, m):
    """Sum of arc distances from each sample angle to ``m`` (brute force)."""
    a = as_angles(angles)
    m = np.atleast_1d(np.asarray(m, dtype=float))
    return np.sum(arc_distance(a[None, :], m[:, None]), axis=1)


def _mod2pi(x):
    # np.mod rounds tiny negative inputs up to exactly 2π
    r = np.mod(x, TWO_PI)
    return np.where(r >= TWO_PI, 0.0, r)


class _MedianObjective:
    """O(log n) evaluation of Σ d(θᵢ, m) after an O(n log n) setup."""

    def __init__(self, angles: np.ndarray):
        s = np.sort(_mod2pi(angles))
        self.n = s.size
        self.ext = np.concatenate([s - TWO_PI, s, s + TWO_PI])
        self.cum = np.concatenate([[0.0], np.cumsum(self.ext)])

    def __call__(self, m):
        # m in [0, 2π): points in [m − π, m) lie clockwise, [m, m + π) counterclockwise
        m = np.asarray(m, dtype=float)
        lo = np.searchsorted(self.ext, m - math.pi, "left")
        # exactly n points per turn, even when m ± π rounds onto a sample point
        hi = lo + self.n
        mid = np.clip(np.searchsorted(self.ext, m, "left"), lo, hi)
        s1 = self.cum[mid] - self.cum[lo]
        s2 = self.cum[hi] - self.cum[mid]
        return (mid - lo) * m - s1 + s2 - (hi - mid) * m


def frechet_median(angles) -> float:
    """Circular median: the minimizer of the summed arc distance.

    The objective is piecewise linear with breakpoints at the sample points
    and their antipodes, so only those 2n candidates are evaluated.  When the
    minimum is attained on a single arc the arc midpoint is returned.

    Raises
    ------
    NonUniqueMedian
        If the minimizing set is the whole circle or several disjoint arcs,
        e.g. for equally spaced points.
    """
    a = as_angles(angles)
    obj = _MedianObjective(a)
    cand = np.unique(_mod2pi(np.concatenate([a, a + math.pi])))
    vals = obj(cand)
    best = vals.min()
    tol = 64 * np.finfo(float).eps * max(1.0, a.size) * 3 * math.pi
    tied = cand[vals <= best + tol]
    if tied.size == 1:
        return canonicalize(float(tied[0]))

    # Consecutive tied candidates belong to the same flat arc when the
    # objective is also minimal at their midpoint (it is linear in between).
    k = tied.size
    nxt = np.roll(tied, -1)
    gap = np.mod(nxt - tied, TWO_PI)
    gap[gap == 0] = TWO_PI
    joined = obj(_mod2pi(tied + gap / 2)) <= best + tol
    if joined.all():
        raise NonUniqueMedian("every direction minimizes the summed arc distance")
    if k - joined.sum() > 1:
        raise NonUniqueMedian(f"the median set has {k - joined.sum()} disjoint components")
    # the single break marks the end of the arc; walk from the following candidate
    end = int(np.flatnonzero(~joined)[0])
    start = (end + 1) % k
    length = np.mod(tied[end] - tied[start], TWO_PI)
    return canonicalize(float(tied[start] + length / 2))


def circular_quartiles(angles, median: float | None = None) -> tuple[float, float]:
    """Clockwise and counterclockwise quartile directions around the median.

    The quartiles are the ⌈n/4⌉-th sample points met when walking away from
    the median in each direction.  Points coinciding with the median are
    skipped; a point exactly antipodal counts as clockwise.  When one side
    has fewer than ⌈n/4⌉ points its farthest point is used, or the median
    itself if that side is empty.

    Returns
    -------
    q_low, q_high : float
        Clockwise and counterclockwise quartiles on [−π, π).
    """
    a = as_angles(angles)
    if median is None:
        median = frechet_median(a)
    k = math.ceil(a.size / 4)
    delta = np.atleast_1d(signed_offset(a, median))

    def pick(mask, dist):
        idx = np.flatnonzero(mask)
        if idx.size == 0:
            return canonicalize(median)
        order = idx[np.argsort(dist[idx], kind="stable")]
        return float(a[order[min(k, order.size) - 1]])

    return pick(delta < 0, -delta), pick(delta > 0, delta)


@dataclass(frozen=True)
class CircularSummary:
    n: int
    mean: float | None
    rho: float
    csd: float
    median: float
    q_low: float
    q_high: float


def summarize(angles) -> CircularSummary:
    """Mean, resultant length, CSD, median and quartiles in one pass.

    ``mean`` is ``None`` when the resultant length is numerically zero.
    """
    a = as_angles(angles)
    rho = resultant_length(a)
    try:
        mean = circular_mean(a)[0]
    except DegenerateResultant:
        mean = None
    med = frechet_median(a)
    lo, hi = circular_quartiles(a, med)
    return CircularSummary(a.size, mean, rho, math.sqrt(2 * (1 - rho)), med, lo, hi)
