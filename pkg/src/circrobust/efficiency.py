"""Asymptotic variances, Fisher information, efficiency and breakdown bounds."""

from __future__ import annotations

import functools
import math

import numpy as np

from .distributions import CircularModel, Dispersion, Family, population_dispersion
from .influence import consistency_slope, influence_function
from .special import QuadratureSpec, bessel_i_scaled, bessel_ratio, derivative, integrate

__all__ = [
    "asymptotic_variance",
    "asymptotic_variance_numeric",
    "parameter_asymptotic_variance",
    "fisher_information",
    "are",
    "are_curve",
    "cmad_breakdown_bound",
]

_FINE = QuadratureSpec(rel_tol=1e-12, abs_tol=1e-15, limit=400)


def asymptotic_variance(model: CircularModel, kind) -> float:
    """Asymptotic variance of √n (Ŝ − S) for a dispersion functional.

    Closed forms: 1/(16 f(q)²) for CMAD and CLMS, Var(cos Θ)/CSD² for the
    CSD, and a three-term expansion of E[IF²] for CLTS.
    """
    kind = Dispersion(kind)
    pop = population_dispersion(model)
    f0 = model.centered()
    q = pop.clms
    if kind in (Dispersion.CMAD, Dispersion.CLMS):
        return 1.0 / (16.0 * f0.pdf(q) ** 2)
    if kind is Dispersion.CSD:
        c2 = float(model.coefficients(np.array([2]))[0])
        return ((1.0 + c2) / 2.0 - pop.rho ** 2) / pop.csd ** 2
    # IF = (K + 2·1{|y|<q}(cos q − cos y)) / S
    s = pop.clts
    k = 1.0 - 0.5 * s * s - math.cos(q)
    pdf = f0._pdf0
    m1 = 2 * integrate(lambda t: (math.cos(q) - math.cos(t)) * float(pdf(t)), 0.0, q, _FINE)
    m2 = 2 * integrate(lambda t: (math.cos(q) - math.cos(t)) ** 2 * float(pdf(t)), 0.0, q, _FINE)
    return (k * k + 4.0 * k * m1 + 4.0 * m2) / (s * s)


def asymptotic_variance_numeric(model: CircularModel, kind) -> float:
    """E[IF²] by quadrature of the influence function itself."""
    f0 = model.centered()
    q = population_dispersion(model).clms

    def g(t):
        return float(influence_function(f0, kind, t)) ** 2 * float(f0._pdf0(t))

    return 2 * integrate(g, 0.0, math.pi, _FINE, points=[q])


def parameter_asymptotic_variance(model: CircularModel, kind) -> float:
    """Asymptotic variance of the κ̂ or σ̂ obtained from ``kind``."""
    return consistency_slope(model, kind) ** 2 * asymptotic_variance(model, kind)


@functools.lru_cache(maxsize=1024)
def _fisher(family: Family, param: float) -> float:
    if family is Family.VON_MISES:
        a = bessel_ratio(param)
        return 0.5 * (1.0 + bessel_i_scaled(2, param) / bessel_i_scaled(0, param)) - a * a

    def score(t):
        return derivative(lambda s: math.log(family.model(s)._pdf0(t)), param)

    def g(t):
        return score(t) ** 2 * float(family.model(param)._pdf0(t))

    return 2 * integrate(g, 0.0, math.pi, _FINE)


def fisher_information(model: CircularModel) -> float:
    """Fisher information for κ (closed form) or σ (numerical score)."""
    return _fisher(model.family, model.param)


def are(model: CircularModel, kind) -> float:
    """Asymptotic efficiency relative to the maximum likelihood estimator."""
    return 1.0 / (fisher_information(model) * parameter_asymptotic_variance(model, kind))


def are_curve(family, kind, params) -> np.ndarray:
    """:func:`are` over a grid of κ or σ values."""
    fam = Family(family)
    return np.array([are(fam.model(float(p)), kind) for p in params])


def cmad_breakdown_bound(model: CircularModel) -> float:
    """Contamination level beyond which CMAD can no longer be bounded.

    Equals 1 − 0.5 / P(|Θ − μ| < π/2): once the contamination exceeds it,
    the half circle around the median can hold less than half the mass.
    """
    c = model.centered()
    p = float(c.arc_probability(-math.pi / 2, math.pi / 2))
    return 1.0 - 0.5 / p
