"""Modified Bessel functions, the ratio A(κ) = I₁(κ)/I₀(κ) and numerical helpers.

The Bessel evaluations, ``erf``, adaptive quadrature and bracketed root
finding are thin wrappers over :mod:`scipy`.  The wrappers pin down the
domain checks and error types the rest of the package relies on.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy import integrate as _integrate
from scipy import optimize as _optimize
from scipy import special as _sp

from .errors import (
    BesselOverflow,
    DepthExceeded,
    MaxIterExceeded,
    NoSignChange,
    OutOfRange,
)

__all__ = [
    "QuadratureSpec",
    "RootSpec",
    "bessel_i",
    "bessel_i_scaled",
    "bessel_ratio",
    "bessel_ratio_derivative",
    "bessel_ratio_inv",
    "erf",
    "integrate",
    "find_root",
    "derivative",
]


@dataclass(frozen=True)
class QuadratureSpec:
    """Tolerances for :func:`integrate`.

    ``limit`` bounds the number of adaptive subintervals.
    """

    rel_tol: float = 1e-10
    abs_tol: float = 1e-13
    limit: int = 200


@dataclass(frozen=True)
class RootSpec:
    tol: float = 1e-12
    max_iter: int = 200


def _check_x(x):
    x = np.asarray(x, dtype=float)
    if np.any(np.isnan(x)) or np.any(x < 0):
        raise OutOfRange("Bessel argument must be a non-negative real number")
    return x


def _unwrap(out):
    return float(out) if np.ndim(out) == 0 else out


def bessel_i(order: int, x):
    """Modified Bessel function of the first kind, ``I_order(x)``, for x ≥ 0.

    Raises
    ------
    BesselOverflow
        If the result is not representable (roughly x > 713).
    """
    if order < 0 or int(order) != order:
        raise OutOfRange("order must be a non-negative integer")
    x = _check_x(x)
    out = _sp.iv(order, x)
    if np.any(np.isinf(out) & np.isfinite(x)):
        raise BesselOverflow(f"I_{order}(x) overflows; use bessel_i_scaled")
    return _unwrap(out)


def bessel_i_scaled(order: int, x):
    """Exponentially scaled Bessel function ``exp(-x) I_order(x)``."""
    if order < 0 or int(order) != order:
        raise OutOfRange("order must be a non-negative integer")
    return _unwrap(_sp.ive(order, _check_x(x)))


def bessel_ratio(kappa):
    """A(κ) = I₁(κ)/I₀(κ), the mean resultant length of a von Mises law."""
    k = _check_x(kappa)
    return _unwrap(_sp.i1e(k) / _sp.i0e(k))


def bessel_ratio_derivative(kappa):
    """A'(κ) = 1 − A(κ)/κ − A(κ)², with the limit 1/2 at κ = 0."""
    k = _check_x(kappa)
    a = _sp.i1e(k) / _sp.i0e(k)
    with np.errstate(divide="ignore", invalid="ignore"):
        out = np.where(k > 1e-8, 1.0 - a / np.where(k > 0, k, 1.0) - a * a, 0.5 - 3.0 * k * k / 16.0)
    return _unwrap(out)


def bessel_ratio_inv(r: float, spec: RootSpec = RootSpec(max_iter=500)) -> float:
    """Solve A(κ) = r for κ ≥ 0.

    Parameters
    ----------
    r : float
        Target mean resultant length in [0, 1).

    Returns
    -------
    float
        The unique κ with A(κ) = r (0 when r = 0).
    """
    r = float(r)
    if not 0.0 <= r < 1.0:
        raise OutOfRange("A^{-1} is defined on [0, 1)")
    if r == 0.0:
        return 0.0
    # A(κ) ≈ 1 − 1/(2κ) for large κ, so the root lies below 1/(1 − r).
    hi = max(10.0, 2.0 / (1.0 - r))
    # brentq also stops on a relative tolerance of 4 eps, so an absolute
    # tolerance near zero gives full relative accuracy at small κ.
    return find_root(lambda k: bessel_ratio(k) - r, 0.0, hi, RootSpec(1e-300, spec.max_iter))


def erf(x):
    """Error function."""
    return _unwrap(_sp.erf(np.asarray(x, dtype=float)))


def integrate(f: Callable[[float], float], a: float, b: float,
              spec: QuadratureSpec = QuadratureSpec(), points=None) -> float:
    """Adaptive quadrature of ``f`` over [a, b].

    Parameters
    ----------
    f : callable
        Scalar integrand.
    a, b : float
        Integration limits.
    spec : QuadratureSpec
        Tolerances and subdivision budget.
    points : sequence of float, optional
        Interior break points (kinks or jumps of ``f``).

    Raises
    ------
    DepthExceeded
        If the error estimate stays above tolerance after ``spec.limit``
        subdivisions.
    """
    if a == b:
        return 0.0
    if points is not None:
        lo, hi = min(a, b), max(a, b)
        points = [p for p in points if lo < p < hi] or None
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", _integrate.IntegrationWarning)
        val, err = _integrate.quad(f, a, b, epsabs=spec.abs_tol, epsrel=spec.rel_tol,
                                   limit=spec.limit, points=points)
    target = max(spec.abs_tol, spec.rel_tol * abs(val))
    if any(issubclass(w.category, _integrate.IntegrationWarning) for w in caught) and err > 10 * target:
        raise DepthExceeded(f"quadrature error estimate {err:.3g} exceeds tolerance {target:.3g}")
    return float(val)


def find_root(f: Callable[[float], float], lo: float, hi: float,
              spec: RootSpec = RootSpec()) -> float:
    """Brent's method on a sign-changing bracket [lo, hi]."""
    flo, fhi = f(lo), f(hi)
    if flo == 0:
        return float(lo)
    if fhi == 0:
        return float(hi)
    if not (np.isfinite(flo) and np.isfinite(fhi)) or math.copysign(1, flo) == math.copysign(1, fhi):
        raise NoSignChange(f"f({lo}) = {flo} and f({hi}) = {fhi} have the same sign")
    try:
        return float(_optimize.brentq(f, lo, hi, xtol=spec.tol, maxiter=spec.max_iter))
    except RuntimeError as exc:
        raise MaxIterExceeded(str(exc)) from exc


def derivative(f: Callable[[float], float], x: float, step: float | None = None) -> float:
    """Central difference with one Richardson extrapolation step.

    The default step is ``1e-3 * max(|x|, 1e-2)``; the error is O(step⁴).
    """
    h = step if step is not None else 1e-3 * max(abs(x), 1e-2)
    d1 = (f(x + h) - f(x - h)) / (2 * h)
    d2 = (f(x + h / 2) - f(x - h / 2)) / h
    return (4 * d2 - d1) / 3
