"""Influence functions of the dispersion functionals.

Closed forms are given for models centred at 0.  ``functional_at`` evaluates
the functionals exactly on a model contaminated by point masses, which gives
an independent finite-difference route to the same curves.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .core import TWO_PI, canonicalize
from .distributions import (
    CircularModel,
    Dispersion,
    Family,
    param_from_csd,
    population_dispersion,
    eta_inverse,
)
from .special import QuadratureSpec, derivative, integrate

__all__ = [
    "influence_function",
    "transformed_influence_function",
    "consistency_slope",
    "gross_error_sensitivity",
    "functional_at",
    "finite_difference_if",
]

_FINE = QuadratureSpec(rel_tol=1e-13, abs_tol=1e-15, limit=400)


def _offsets(model: CircularModel, y):
    return np.abs(canonicalize(np.asarray(y, dtype=float) - model.mu))


def influence_function(model: CircularModel, kind, y):
    """Influence function of a dispersion functional at the model.

    Parameters
    ----------
    model : CircularModel
        Von Mises or wrapped normal model.  Offsets are taken from ``model.mu``.
    kind : Dispersion or str
        Which functional.
    y : array_like
        Contamination positions.
    """
    kind = Dispersion(kind)
    pop = population_dispersion(model)
    ay = _offsets(model, y)
    if kind in (Dispersion.CMAD, Dispersion.CLMS):
        q = pop.clms
        out = np.sign(ay - q) / (4.0 * model.centered().pdf(q))
    elif kind is Dispersion.CLTS:
        q, s = pop.clms, pop.clts
        inner = np.where(ay < q, math.cos(q) - np.cos(ay), 0.0)
        out = (1.0 - 0.5 * s * s - math.cos(q) + 2.0 * inner) / s
    else:
        out = (pop.rho - np.cos(ay)) / pop.csd
    return float(out) if np.ndim(out) == 0 else out


def consistency_slope(model: CircularModel, kind) -> float:
    """dψ/dS: slope of the map from a dispersion value to κ or σ at the model.

    Computed as the reciprocal of dS/dψ, with S as a function of the model
    parameter differentiated by Richardson-extrapolated central differences.
    The CSD case uses A'(κ) or the closed wrapped normal form instead.
    """
    kind = Dispersion(kind)
    fam, psi = model.family, model.param
    if kind is Dispersion.CSD:
        c = model.csd
        if fam is Family.VON_MISES:
            from .special import bessel_ratio_derivative
            return -c / bessel_ratio_derivative(psi)
        rho = model.mean_resultant
        return c / (rho * psi)
    dS = derivative(lambda p: population_dispersion(fam.model(p))[kind], psi)
    return 1.0 / dS


def transformed_influence_function(model: CircularModel, kind, y):
    """Influence function of the κ̂ or σ̂ built from ``kind``."""
    return consistency_slope(model, kind) * influence_function(model, kind, y)


def gross_error_sensitivity(model: CircularModel, kind) -> float:
    """sup |IF| over the circle.

    The IFs are piecewise monotone in |y| with breaks only at the quartile,
    so the supremum is attained at 0, π or one side of the quartile.
    """
    kind = Dispersion(kind)
    q = population_dispersion(model).clms
    pts = np.array([0.0, math.pi, q * (1 - 1e-12), q * (1 + 1e-12)]) + model.mu
    return float(np.max(np.abs(influence_function(model, kind, pts))))


# exact functionals at point-mass contaminated models

@dataclass(frozen=True)
class _Mixture:
    model: CircularModel
    atoms: tuple
    weights: tuple

    @property
    def w0(self) -> float:
        return 1.0 - sum(self.weights)

    def F(self, x):
        return float(self.model._cdf0_ext(x))

    def Finv(self, p: float) -> float:
        k = math.floor(p)
        frac = p - k
        if frac == 0.0:
            return -math.pi + TWO_PI * k
        m = self.model

        def g(t):
            return float(m._cdf0(t)) - frac

        return _bisect(g, -math.pi, math.pi) + TWO_PI * k

    def inside(self, a: float, b: float):
        off = np.mod(np.asarray(self.atoms) - a, TWO_PI)
        span = b - a
        return (off <= span + 1e-14) | (off >= TWO_PI - 1e-14)

    def mass(self, a: float, b: float) -> float:
        m = self.w0 * (self.F(b) - self.F(a))
        if self.atoms:
            m += float(np.sum(np.asarray(self.weights)[self.inside(a, b)]))
        return m


def _bisect(g, lo, hi, iters=200):
    glo = g(lo)
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        if mid in (lo, hi):
            break
        gm = g(mid)
        if (gm > 0) == (glo > 0) and gm != 0:
            lo, glo = mid, gm
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _candidate_arcs(mix: _Mixture):
    """Arcs of mass at least 1/2 that can minimise length or trimmed CSD."""
    n = len(mix.atoms)
    out = []
    for r in range(n + 1):
        for sub in itertools.combinations(range(n), r):
            need = (0.5 - sum(mix.weights[i] for i in sub)) / mix.w0
            ys = [mix.atoms[i] for i in sub]
            if need <= 0:
                if len(ys) == 1:
                    out.append((ys[0], ys[0]))
                elif len(ys) == 2:
                    d = float(np.mod(ys[1] - ys[0], TWO_PI))
                    out.append((ys[0], ys[0] + d))
                    out.append((ys[1], ys[1] + TWO_PI - d))
                continue
            if need > 1:
                continue
            b = mix.Finv(0.5 + need / 2)
            out.append((-b, b))
            for y in ys:
                out.append((y, mix.Finv(mix.F(y) + need)))
                out.append((mix.Finv(mix.F(y) - need), y))
    return [(a, b) for a, b in out if mix.mass(a, b) >= 0.5 - 1e-12]


def _clms(mix):
    return min(b - a for a, b in _candidate_arcs(mix)) / 2


def _conditional_csd(mix: _Mixture, a: float, b: float) -> float:
    pdf = mix.model._pdf0
    cs = mix.w0 * integrate(lambda t: math.cos(t) * float(pdf(canonicalize(t))), a, b, _FINE)
    sn = mix.w0 * integrate(lambda t: math.sin(t) * float(pdf(canonicalize(t))), a, b, _FINE)
    if mix.atoms:
        ins = mix.inside(a, b)
        ys = np.asarray(mix.atoms)[ins]
        ws = np.asarray(mix.weights)[ins]
        cs += float(np.sum(ws * np.cos(ys)))
        sn += float(np.sum(ws * np.sin(ys)))
    r = min(1.0, math.hypot(cs, sn) / mix.mass(a, b))
    return math.sqrt(2 * (1 - r))


def _clts(mix):
    return min(_conditional_csd(mix, a, b) for a, b in _candidate_arcs(mix))


def _csd(mix):
    rho = mix.model.mean_resultant
    c = mix.w0 * rho + sum(w * math.cos(y) for y, w in zip(mix.atoms, mix.weights))
    s = sum(w * math.sin(y) for y, w in zip(mix.atoms, mix.weights))
    return math.sqrt(2 * (1 - math.hypot(c, s)))


def _cmad(mix):
    F, w0 = mix.F, mix.w0

    def side(y, m):
        d = float(canonicalize(y - m))
        if d == 0.0 or d == -math.pi:
            return 0.0
        return 1.0 if d > 0 else -1.0

    def balance(m):
        ahead = F(m + math.pi) - F(m)
        behind = F(m) - F(m - math.pi)
        return w0 * (ahead - behind) + sum(w * side(y, m) for y, w in zip(mix.atoms, mix.weights))

    m = _bisect(balance, -0.5, 0.5)
    for y in mix.atoms:
        if abs(canonicalize(y - m)) < 1e-12:
            m = y

    def excess(s):
        inner = w0 * (F(m + s) - F(m - s))
        inner += sum(w for y, w in zip(mix.atoms, mix.weights)
                     if abs(canonicalize(y - m)) <= s)
        return inner - 0.5

    return _bisect(excess, 0.0, math.pi)


_EVAL = {
    Dispersion.CMAD: _cmad,
    Dispersion.CLMS: _clms,
    Dispersion.CLTS: _clts,
    Dispersion.CSD: _csd,
}


def functional_at(model: CircularModel, kind, atoms: Sequence[float] = (),
                  weights: Sequence[float] = ()) -> float:
    """Dispersion functional of ``(1 − Σw) F + Σ w_k δ(y_k)``.

    ``model`` must be centred at 0.  Up to two atoms are supported.  For
    CLTS the candidate arcs are exhaustive only when the atoms sit
    symmetrically about 0.
    """
    if model.mu != 0.0:
        raise ValueError("functional_at expects a model centred at 0")
    atoms = tuple(float(canonicalize(y)) for y in atoms)
    if len(atoms) > 2 or len(atoms) != len(weights):
        raise ValueError("give at most two atoms, each with a weight")
    return _EVAL[Dispersion(kind)](_Mixture(model, atoms, tuple(float(w) for w in weights)))


def finite_difference_if(model: CircularModel, kind, y: float, eps: float = 1e-4,
                         transformed: bool = False) -> float:
    """(T(G_ε) − T(F))/ε with G_ε = (1 − ε)F + ε δ_y.

    CLTS uses the symmetric pair (ε/2) δ_y + (ε/2) δ_{−y}, whose influence
    equals that of a single atom because the functional is even in y.
    With ``transformed`` the functionals are mapped to κ or σ first.
    """
    kind = Dispersion(kind)
    if kind is Dispersion.CLTS and abs(canonicalize(y)) not in (0.0, math.pi):
        atoms, weights = (y, -y), (eps / 2, eps / 2)
    else:
        atoms, weights = (y,), (eps,)
    base = functional_at(model, kind)
    bumped = functional_at(model, kind, atoms, weights)
    if transformed:
        fam = model.family

        def zeta(s):
            return param_from_csd(fam, eta_inverse(fam, kind, s))

        return (zeta(bumped) - zeta(base)) / eps
    return (bumped - base) / eps
