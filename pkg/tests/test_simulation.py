import math

import numpy as np
import pytest

from circrobust.core import arc_distance, frechet_median
from circrobust.distributions import Dispersion, Family, VonMises, WrappedNormal
from circrobust.influence import influence_function
from circrobust.simulation import (
    antipodal_point_mass,
    bias_curve,
    contaminate,
    contamination_study,
    copies_of_one_point,
    half_circle_adversary,
    stream,
)
from circrobust.dispersion import clms, clts

PI = math.pi
ROBUST = (Dispersion.CMAD, Dispersion.CLMS, Dispersion.CLTS)


def test_streams_are_independent_and_reproducible():
    a = stream(1, 0, 3).random(5)
    assert np.array_equal(a, stream(1, 0, 3).random(5))
    assert not np.array_equal(a, stream(1, 3, 0).random(5))


class TestContaminate:
    def test_point_replaces_tail(self):
        x = contaminate(np.zeros(200), 0.1, 2.0)
        assert np.count_nonzero(x == 2.0) == 20 and np.all(x[:180] == 0)

    def test_shift_uses_base(self):
        base = np.linspace(-0.1, 0.1, 20)
        x = contaminate(np.zeros(200), 0.1, PI, "shift", base)
        assert np.allclose(arc_distance(x[-20:], PI), np.abs(base))

    def test_zero_fraction(self):
        x = np.arange(5.0) / 10
        assert np.array_equal(contaminate(x, 0.0, 1.0), x)


class TestBiasCurve:
    def test_no_contamination_is_exactly_zero(self):
        bc = bias_curve(VonMises(0, 2), epsilon=0.0, n=500, grid=9, seed=3)
        for v in bc.rel_bias.values():
            assert np.all(v == 0.0)

    def test_deterministic(self):
        a = bias_curve(WrappedNormal(0, 1), [Dispersion.CLMS], 0.1, "shift", 800, 11, seed=5)
        b = bias_curve(WrappedNormal(0, 1), [Dispersion.CLMS], 0.1, "shift", 800, 11, seed=5)
        assert np.array_equal(a.rel_bias[Dispersion.CLMS], b.rel_bias[Dispersion.CLMS])

    def test_sign_structure(self):
        bc = bias_curve(VonMises(0, 2), ROBUST, 0.1, "point", 5000, 7, seed=1)
        centre = np.argmin(np.abs(bc.theta))
        for k in ROBUST:
            assert bc.rel_bias[k][centre] < 0
            assert bc.rel_bias[k][0] > 0 and bc.rel_bias[k][-1] > 0

    def test_csd_most_affected_at_antipode(self):
        bc = bias_curve(VonMises(0, 2), list(Dispersion), 0.1, "point", 5000, 3, seed=2)
        worst = max(bc.rel_bias[k][-1] for k in ROBUST)
        assert bc.rel_bias[Dispersion.CSD][-1] > worst > 0

    def test_resembles_influence_function(self):
        m = VonMises(0, 2)
        bc = bias_curve(m, ROBUST, 0.05, "point", 5000, 181, seed=42)
        q = m.centered().centered_ppf(0.75)
        away = np.abs(np.abs(bc.theta) - q) > 0.25
        for k in ROBUST:
            iff = influence_function(m, k, bc.theta)
            agree = np.mean(np.sign(bc.rel_bias[k][away]) == np.sign(iff[away]))
            assert agree >= 0.9

    def test_rows(self):
        bc = bias_curve(VonMises(0, 2), [Dispersion.CLMS], 0.1, n=100, grid=3, seed=0)
        rows = list(bc.rows())
        assert len(rows) == 3 and set(rows[0]) == {"theta", "relBias", "kind", "epsilon", "type", "seed"}


class TestStudy:
    def test_shape_and_determinism(self):
        kw = dict(params=[2.0], epsilons=(0.0, 0.1), n=60, reps=8, seed=9)
        a = contamination_study("vm", **kw)
        b = contamination_study("vm", **kw)
        assert len(a) == 2 * 4
        assert [r.as_dict() for r in a] == [r.as_dict() for r in b]

    def test_parallel_matches_serial(self):
        kw = dict(params=[0.5, 1.0], epsilons=(0.1,), n=50, reps=5, seed=4)
        assert contamination_study("wn", **kw) == contamination_study("wn", workers=2, **kw)

    def test_wn_contamination_inflates_classical(self):
        rows = {(r.epsilon, r.estimator): r for r in
                contamination_study(Family.WRAPPED_NORMAL, [1.0], (0.1,), 200, 60, seed=3)}
        assert rows[(0.1, "mle")].median > rows[(0.1, "clms")].median >= 0.95


class TestStressSamples:
    def test_copies_implode(self, rng):
        x = VonMises(0, 2).rvs(31, rng)
        y = copies_of_one_point(x, math.ceil(31 / 2))
        assert clms(y) == 0.0 and clts(y) == 0.0

    def test_half_circle_adversary_keeps_median(self, rng):
        x = VonMises(0, 8).rvs(101, rng)
        y = half_circle_adversary(x, 30)
        assert arc_distance(frechet_median(y), frechet_median(x[:-30])) < 0.2

    def test_antipodal_mass(self):
        x = antipodal_point_mass(np.zeros(10), 0.4, mu=0.5)
        assert np.count_nonzero(x == 0.5 - PI) == 4
