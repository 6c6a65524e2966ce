"""Sample dispersion estimators and the mapping to concentration parameters.

``cmad``, ``clms`` and ``clts`` are the robust sample measures.  ``estimate``
chains a measure through the consistency map of a family to a κ̂ or σ̂.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .core import TWO_PI, arc_distance, as_angles, csd, frechet_median, resultant_length
from .distributions import SUPREMUM, Dispersion, Family, eta_inverse, param_from_csd
from .errors import DegenerateResultant, Explosion
from .special import bessel_ratio_inv

__all__ = [
    "half_sample_size",
    "Window",
    "cmad",
    "clms",
    "clts",
    "clms_window",
    "clts_window",
    "sample_dispersion",
    "EstimateReport",
    "estimate",
    "mle_vonmises_kappa",
    "classical_wn_sigma",
]


def half_sample_size(n: int) -> int:
    """h = ⌈n/2⌉ + 1, clamped to n (with a warning) for n < 3."""
    h = math.ceil(n / 2) + 1
    if h > n:
        warnings.warn(f"half-sample size {h} exceeds n = {n}; using h = n", RuntimeWarning, stacklevel=3)
        h = n
    return h


@dataclass(frozen=True)
class Window:
    """Optimal arc of h consecutive sample points.

    ``start`` and ``end`` are the first and last sample angles met when
    sweeping counterclockwise; ``index`` is the position of ``start`` in the
    sorted sample.
    """

    value: float
    start: float
    end: float
    index: int
    h: int


def _sorted_ext(angles):
    a = np.sort(as_angles(angles))
    return a, np.concatenate([a, a + TWO_PI])


def cmad(angles) -> float:
    """Circular median absolute deviation: median arc distance to the median."""
    a = as_angles(angles)
    return float(np.median(arc_distance(a, frechet_median(a))))


def clms_window(angles) -> Window:
    """Shortest arc holding h sample points; the value is half its length.

    Ties between equally short arcs go to the lowest start index in the
    sample sorted on [−π, π).
    """
    a, ext = _sorted_ext(angles)
    n = a.size
    h = half_sample_size(n)
    lengths = ext[h - 1:h - 1 + n] - ext[:n]
    i = int(np.argmin(lengths))
    return Window(float(lengths[i] / 2), float(a[i]), float(a[(i + h - 1) % n]), i, h)


def clts_window(angles) -> Window:
    """Run of h consecutive sample points with the smallest CSD.

    Window resultants come from running sums; the winner's CSD is then
    recomputed directly from its points.
    """
    a, ext = _sorted_ext(angles)
    n = a.size
    h = half_sample_size(n)
    cc = np.concatenate([[0.0], np.cumsum(np.cos(ext))])
    ss = np.concatenate([[0.0], np.cumsum(np.sin(ext))])
    c = cc[h:h + n] - cc[:n]
    s = ss[h:h + n] - ss[:n]
    i = int(np.argmax(np.hypot(c, s)))
    pts = ext[i:i + h]
    r = min(1.0, math.hypot(np.sum(np.cos(pts)), np.sum(np.sin(pts))) / h)
    return Window(math.sqrt(2.0 * (1.0 - r)), float(a[i]), float(a[(i + h - 1) % n]), i, h)


def clms(angles) -> float:
    """Circular least median of squares (half the shortest half-sample arc)."""
    return clms_window(angles).value


def clts(angles) -> float:
    """Circular least trimmed squares (smallest CSD over half-sample arcs)."""
    return clts_window(angles).value


def sample_dispersion(angles, kind) -> float:
    """Dispatch on :class:`Dispersion`."""
    kind = Dispersion(kind)
    if kind is Dispersion.CSD:
        return csd(angles)
    return {Dispersion.CMAD: cmad, Dispersion.CLMS: clms, Dispersion.CLTS: clts}[kind](angles)


def mle_vonmises_kappa(angles) -> float:
    """Maximum likelihood κ̂ = A⁻¹(ρ̂) of a von Mises sample.

    Raises
    ------
    Explosion
        If all points coincide (ρ̂ = 1), where the likelihood is unbounded.
    """
    rho = resultant_length(angles)
    if rho >= 1.0:
        raise Explosion("all angles coincide; the von Mises MLE is infinite")
    return bessel_ratio_inv(rho)


def classical_wn_sigma(angles) -> float:
    """Moment estimate σ̂ = √(−2 log ρ̂) of a wrapped normal sample.

    Raises
    ------
    DegenerateResultant
        If ρ̂ is numerically zero.
    """
    rho = resultant_length(angles)
    if rho < 1e-12:
        raise DegenerateResultant("mean resultant length is numerically zero")
    return math.sqrt(max(0.0, -2.0 * math.log(rho)))


@dataclass(frozen=True)
class EstimateReport:
    """Outcome of :func:`estimate`.

    ``status`` is ``"ok"``, ``"explosion"`` (the measure reached its
    supremum, so κ̂ = 0 or σ̂ = ∞) or ``"implosion"`` (a zero measure, so
    κ̂ = ∞ or σ̂ = 0).
    """

    kind: Dispersion
    family: Family
    n: int
    h: int | None
    dispersion: float
    csd: float
    parameter: float
    status: str
    window: Window | None = None

    @property
    def param_name(self) -> str:
        return self.family.param_name


def estimate(angles, kind="clms", family="vm", inverse=None) -> EstimateReport:
    """Estimate κ or σ from a robust (or the classical) dispersion measure.

    Parameters
    ----------
    angles : array_like
        Sample in radians.
    kind : Dispersion or str
        ``"cmad"``, ``"clms"``, ``"clts"`` or ``"csd"``.  The ``"csd"`` kind
        reproduces the von Mises MLE and the classical wrapped normal
        estimate.
    family : Family or str
        ``"vm"`` or ``"wn"``.
    inverse : callable, optional
        Replacement for the exact η⁻¹, e.g. an :class:`EtaTable`.

    Returns
    -------
    EstimateReport
    """
    kind, family = Dispersion(kind), Family(family)
    a = as_angles(angles)
    window = None
    if kind is Dispersion.CLMS:
        window = clms_window(a)
        s = window.value
    elif kind is Dispersion.CLTS:
        window = clts_window(a)
        s = window.value
    else:
        s = sample_dispersion(a, kind)
    h = window.h if window else None

    if s >= SUPREMUM[kind]:
        c, status = math.sqrt(2.0), "explosion"
        param = 0.0 if family is Family.VON_MISES else math.inf
    elif s == 0.0:
        c, status = 0.0, "implosion"
        param = math.inf if family is Family.VON_MISES else 0.0
    else:
        c = float(inverse(s)) if inverse is not None else eta_inverse(family, kind, s)
        status = "ok"
        param = param_from_csd(family, c)
    return EstimateReport(kind, family, a.size, h, s, c, param, status, window)
