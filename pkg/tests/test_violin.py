import math
import xml.etree.ElementTree as ET
from pathlib import Path

import numpy as np
import pytest
from scipy import special as ssp

from circrobust.core import arc_distance, canonicalize
from circrobust.detection import DetectionConfig, detect
from circrobust.dispersion import estimate
from circrobust.errors import OutOfRange
from circrobust.violin import (
    KdeSpec,
    ViolinStyle,
    kde_bandwidth,
    render_svg,
    violin_geometry,
    violin_svg,
    vonmises_kde,
)

PI = math.pi
GOLDEN = Path(__file__).parent / "golden" / "frogs_violin.svg"
NS = {"svg": "http://www.w3.org/2000/svg"}


def trapezoid_mass(f, grid_size=4096):
    t = np.linspace(-PI, PI, grid_size + 1)
    y = f(t)
    return float(np.sum((y[1:] + y[:-1]) / 2) * (2 * PI / grid_size))


class TestKde:
    def test_integrates_to_one(self, frogs):
        nu = kde_bandwidth(frogs.size, estimate(frogs).parameter)
        assert trapezoid_mass(lambda t: vonmises_kde(frogs, nu, t)) == pytest.approx(1.0, abs=1e-3)

    def test_positive_and_periodic(self, seastars):
        t = np.linspace(-PI, PI, 50)
        f = vonmises_kde(seastars, 12.0, t)
        assert np.all(f > 0)
        assert vonmises_kde(seastars, 12.0, -PI) == pytest.approx(vonmises_kde(seastars, 12.0, PI), rel=1e-12)

    def test_flat_limit(self):
        f = vonmises_kde([0.3, 1.0, -2.0], 1e-9, np.linspace(-PI, PI, 7))
        assert np.allclose(f, 1 / (2 * PI), rtol=1e-8)

    def test_antipodal_bumps(self):
        f = vonmises_kde([0.0, PI], 0.5, [0.0, -PI])
        assert f[0] == pytest.approx(f[1], rel=1e-12)

    def test_single_point_rejected(self):
        with pytest.raises(OutOfRange):
            vonmises_kde([0.2], 3.0, [0.0])


class TestBandwidth:
    def test_formula(self):
        n, k = 14, 3.88
        ref = (3 * n * k ** 2 * ssp.iv(2, 2 * k) / (4 * math.sqrt(PI) * ssp.iv(0, k) ** 2)) ** 0.4
        assert kde_bandwidth(n, k) == pytest.approx(ref, rel=1e-12)

    def test_sample_size_scaling(self):
        assert kde_bandwidth(200, 2.0) / kde_bandwidth(100, 2.0) == pytest.approx(2 ** 0.4, rel=1e-12)

    def test_rotation_free(self, frogs):
        k1 = estimate(frogs).parameter
        k2 = estimate(canonicalize(frogs + 2.0)).parameter
        assert kde_bandwidth(14, k1) == pytest.approx(kde_bandwidth(14, k2), rel=1e-9)

    def test_zero_concentration_fallback(self):
        with pytest.warns(RuntimeWarning):
            assert kde_bandwidth(10, 0.0) == 1.0


class TestGeometry:
    def test_mirroring_and_nonnegative(self, frogs):
        g = violin_geometry(frogs)
        outer = g.ring_radius + g.thickness
        inner = g.ring_radius - g.thickness
        assert np.max(np.abs((outer - g.ring_radius) - (g.ring_radius - inner))) <= 1e-12
        assert np.all(g.thickness >= 0)

    def test_arc_mode_ends_at_cutoff(self, frogs):
        g = violin_geometry(frogs)
        rep = detect(frogs)
        assert arc_distance(g.theta[0], rep.center - rep.cutoff) < 1e-12
        assert arc_distance(g.theta[-1], rep.center + rep.cutoff) < 1e-12
        assert g.clip_density == pytest.approx(
            max(vonmises_kde(frogs, g.nu, [rep.center - rep.cutoff, rep.center + rep.cutoff])))

    def test_height_mode_caps_thickness(self, seastars):
        g = violin_geometry(seastars, clip="height")
        assert g.closed
        assert np.all(g.thickness <= g.density_scale * g.clip_density / g.max_density + 1e-15)

    def test_tiny_alpha_leaves_ring_uncut(self):
        x = np.random.default_rng(0).vonmises(0, 8.0, 40)
        g = violin_geometry(x, DetectionConfig(alpha=1e-12))
        assert not g.flagged.any()
        # the ring is cut only where the estimated density is negligible
        assert g.clip_density < 1e-6 * g.max_density

    def test_flags_pass_through(self, seastars):
        rep = detect(seastars)
        g = violin_geometry(seastars, report=rep)
        assert np.array_equal(g.flagged, rep.flagged)
        assert g.flagged.sum() == 2

    def test_box_holds_central_half(self, seastars):
        g = violin_geometry(seastars)
        lo, hi = g.box
        width = np.mod(hi - lo, 2 * PI)
        inside = np.mod(seastars - lo, 2 * PI) <= width + 1e-12
        assert inside.sum() == 12

    def test_rotation_covariance(self, frogs):
        c = 1.3
        g = violin_geometry(frogs)
        h = violin_geometry(canonicalize(frogs + c))
        assert np.max(arc_distance(h.theta, g.theta + c)) <= 1e-9
        assert np.allclose(h.thickness, g.thickness, atol=1e-9)
        assert arc_distance(h.median, g.median + c) <= 1e-9

    def test_bad_clip_mode(self, frogs):
        with pytest.raises(ValueError):
            violin_geometry(frogs, clip="both")


class TestSvg:
    def test_well_formed_and_counts(self, seastars):
        root = ET.fromstring(violin_svg(seastars))
        assert len(root.findall("svg:path[@class='ring']", NS)) == 1
        assert len(root.findall("svg:path[@class='box']", NS)) == 1
        assert len(root.findall("svg:line[@class='median']", NS)) == 1
        assert len(root.findall("svg:circle[@class='outlier']", NS)) == 2
        assert len(root.findall("svg:circle[@class='point']", NS)) == 20

    def test_no_flags_no_markers(self):
        x = np.random.default_rng(2).vonmises(0, 4, 30)
        svg = violin_svg(x, DetectionConfig(alpha=1e-9))
        assert 'class="outlier"' not in svg

    def test_deterministic(self, frogs):
        assert violin_svg(frogs) == violin_svg(frogs)

    def test_style_options(self, frogs):
        g = violin_geometry(frogs)
        north = render_svg(g, ViolinStyle(zero="north", clockwise=True))
        assert north != render_svg(g)
        with pytest.raises(ValueError):
            render_svg(g, ViolinStyle(zero="west"))

    def test_golden_frogs(self, frogs):
        svg = violin_svg(frogs, title="frogs")
        assert svg.encode() == GOLDEN.read_bytes()

    def test_kde_spec_overrides(self, frogs):
        g = violin_geometry(frogs, kde=KdeSpec(nu=5.0, grid_size=128))
        assert g.nu == 5.0 and g.theta.size == 65
