"""Monte Carlo harness: bias curves, contamination studies, stress samples.

Every random stream is derived from ``SeedSequence(seed, spawn_key=task)``,
so results do not depend on how tasks are scheduled across workers.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .core import as_angles, canonicalize, frechet_median
from .dispersion import classical_wn_sigma, estimate, mle_vonmises_kappa, sample_dispersion
from .distributions import CircularModel, Dispersion, Family, eta_table
from .errors import CircularError

__all__ = [
    "stream",
    "contaminate",
    "BiasCurve",
    "bias_curve",
    "StudyRow",
    "contamination_study",
    "ESTIMATORS",
    "copies_of_one_point",
    "half_circle_adversary",
    "antipodal_point_mass",
]

ESTIMATORS = ("mle", "cmad", "clms", "clts")


def stream(seed: int, *task: int) -> np.random.Generator:
    """Independent generator for one task of a seeded computation."""
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=task)))


def contaminate(clean: np.ndarray, eps: float, location: float, kind: str = "point",
                base: np.ndarray | None = None) -> np.ndarray:
    """Replace the last ``round(eps·n)`` points of ``clean``.

    ``kind="point"`` puts them all at ``location``; ``kind="shift"`` uses
    ``base + location`` where ``base`` is a centred model draw of that size.
    """
    x = np.array(clean, dtype=float)
    k = int(round(eps * x.size))
    if k == 0:
        return x
    if kind == "point":
        x[-k:] = canonicalize(location)
    elif kind == "shift":
        if base is None or base.size < k:
            raise ValueError("shift contamination needs a base sample of at least round(eps·n) points")
        x[-k:] = canonicalize(base[:k] + location)
    else:
        raise ValueError(f"unknown contamination kind {kind!r}")
    return x


@dataclass(frozen=True)
class BiasCurve:
    """Relative bias (S_contaminated − S_clean)/S_clean against location."""

    model: CircularModel
    epsilon: float
    contamination: str
    seed: int
    n: int
    theta: np.ndarray
    rel_bias: dict = field(default_factory=dict)

    def rows(self):
        for kind, values in self.rel_bias.items():
            for t, v in zip(self.theta, values):
                yield {"theta": t, "relBias": v, "kind": kind.value, "epsilon": self.epsilon,
                       "type": self.contamination, "seed": self.seed}


def bias_curve(model: CircularModel, kinds=tuple(Dispersion), epsilon: float = 0.1,
               contamination: str = "point", n: int = 5000, grid: int = 181,
               seed: int = 42) -> BiasCurve:
    """Empirical bias curves with common random numbers across locations.

    One clean sample of size ``n`` is drawn; for each contamination location
    its last ``round(epsilon·n)`` points are replaced.  Locations run over
    ``grid`` equally spaced values on [−π, π].
    """
    clean = model.rvs(n, stream(seed, 0))
    base = model.centered().rvs(max(1, int(round(epsilon * n))), stream(seed, 1))
    theta = np.linspace(-math.pi, math.pi, grid)
    kinds = [Dispersion(k) for k in kinds]
    ref = {k: sample_dispersion(clean, k) for k in kinds}
    out = {k: np.empty(grid) for k in kinds}
    for i, t in enumerate(theta):
        x = contaminate(clean, epsilon, model.mu + t, contamination, base)
        for k in kinds:
            out[k][i] = (sample_dispersion(x, k) - ref[k]) / ref[k]
    return BiasCurve(model, epsilon, contamination, seed, n, theta, out)


@dataclass(frozen=True)
class StudyRow:
    param: float
    epsilon: float
    estimator: str
    min: float
    q1: float
    median: float
    q3: float
    max: float
    failures: int

    def as_dict(self):
        return dict(self.__dict__)


def _one_estimate(x, family: Family, name: str):
    if name == "mle":
        return mle_vonmises_kappa(x) if family is Family.VON_MISES else classical_wn_sigma(x)
    kind = Dispersion(name)
    return estimate(x, kind, family, inverse=eta_table(family, kind)).parameter


def _study_cell(args):
    family, p_index, param, epsilons, n, reps, contamination, seed = args
    model = family.model(param)
    values = {(e, name): [] for e in epsilons for name in ESTIMATORS}
    fails = {key: 0 for key in values}
    for r in range(reps):
        clean = model.rvs(n, stream(seed, p_index, r, 0))
        base = model.rvs(n, stream(seed, p_index, r, 1))
        for e in epsilons:
            x = contaminate(clean, e, math.pi, contamination, base)
            for name in ESTIMATORS:
                try:
                    values[(e, name)].append(_one_estimate(x, family, name))
                except CircularError:
                    fails[(e, name)] += 1
    rows = []
    for e in epsilons:
        for name in ESTIMATORS:
            v = np.asarray(values[(e, name)], dtype=float)
            if v.size:
                with np.errstate(invalid="ignore"):
                    qs = np.quantile(v, [0, 0.25, 0.5, 0.75, 1.0])
            else:
                qs = [math.nan] * 5
            rows.append(StudyRow(param, e, name, *map(float, qs), fails[(e, name)]))
    return rows


def contamination_study(family, params, epsilons=(0.0, 0.1, 0.2), n: int = 200, reps: int = 500,
                        contamination: str = "shift", seed: int = 42,
                        workers: int | None = None, progress=None) -> list[StudyRow]:
    """Five-number summaries of κ̂ or σ̂ under antipodal contamination.

    For each parameter value and replication a clean sample of size ``n`` is
    drawn, and for each ε its last ``round(ε·n)`` points are replaced by
    draws from the same law centred at π (``"shift"``) or by π itself
    (``"point"``).  The clean sample is shared across ε.

    Estimators are ``mle`` (the von Mises MLE, or the moment estimate for
    the wrapped normal) and the three robust estimators mapped through
    :func:`eta_table`.  ``progress``, if given, is called with
    ``(done, total)`` after each parameter value.
    """
    fam = Family(family)
    tasks = [(fam, i, float(p), tuple(epsilons), n, reps, contamination, seed)
             for i, p in enumerate(params)]
    if workers and workers > 1:
        with ProcessPoolExecutor(workers) as pool:
            cells = []
            for cell in pool.map(_study_cell, tasks):
                cells.append(cell)
                if progress:
                    progress(len(cells), len(tasks))
    else:
        cells = []
        for t in tasks:
            cells.append(_study_cell(t))
            if progress:
                progress(len(cells), len(tasks))
    return [row for cell in cells for row in cell]


# breakdown stress samples

def copies_of_one_point(angles, k: int, anchor: int = 0) -> np.ndarray:
    """Overwrite ``k`` points other than ``angles[anchor]`` with copies of it."""
    x = as_angles(angles).copy()
    others = [i for i in range(x.size) if i != anchor][:k]
    x[others] = x[anchor]
    return x


def half_circle_adversary(angles, k: int) -> np.ndarray:
    """Replace the last ``k`` points by atoms at μ̃ ± π/2, split evenly.

    μ̃ is the median of the retained points.
    """
    x = as_angles(angles).copy()
    if k == 0:
        return x
    med = frechet_median(x[:-k])
    x[-k:] = canonicalize(med + np.where(np.arange(k) % 2 == 0, math.pi / 2, -math.pi / 2))
    return x


def antipodal_point_mass(angles, fraction: float, mu: float = 0.0) -> np.ndarray:
    """Replace the last ``round(fraction·n)`` points by μ + π."""
    return contaminate(as_angles(angles), fraction, mu + math.pi, "point")
