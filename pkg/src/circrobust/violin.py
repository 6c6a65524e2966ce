"""Circular violin plot: a von Mises KDE drawn as a ring around the unit circle.

By default the ring is cut at the detection cutoff, so it spans only the
arc of unflagged directions ``median ± cutoff``; a height cap at the
density found there is available as an alternative.  A box arc marks the circular
quartiles, a radial tick marks the median, and flagged points are drawn
outside the ring.  Rendering produces a standalone SVG string and is
deterministic: equal inputs give byte-identical output.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy import special as _sp

from .core import TWO_PI, as_angles, circular_quartiles
from .detection import DetectionConfig, DetectionReport, detect
from .errors import OutOfRange

__all__ = [
    "kde_bandwidth",
    "vonmises_kde",
    "KdeSpec",
    "ViolinStyle",
    "ViolinGeometry",
    "violin_geometry",
    "render_svg",
    "violin_svg",
]


def kde_bandwidth(n: int, kappa: float) -> float:
    """Plug-in concentration ν of the von Mises kernel for a vM(κ) reference.

    ν = [3 n κ² I₂(2κ) / (4 √π I₀(κ)²)]^(2/5), evaluated with scaled Bessel
    functions.  Falls back to ν = 1 when κ is 0 (no reference shape).
    """
    if n < 1:
        raise OutOfRange("bandwidth needs at least one point")
    if not kappa > 0:
        warnings.warn("zero concentration estimate; using kernel concentration 1", RuntimeWarning, stacklevel=2)
        return 1.0
    if math.isinf(kappa):
        return 1e8
    ratio = _sp.ive(2, 2 * kappa) / _sp.i0e(kappa) ** 2
    return float((3 * n * kappa ** 2 * ratio / (4 * math.sqrt(math.pi))) ** 0.4)


def vonmises_kde(angles, nu: float, theta) -> np.ndarray:
    """Mean of von Mises kernels with concentration ``nu`` evaluated at ``theta``."""
    a = as_angles(angles)
    if a.size < 2:
        raise OutOfRange("a density estimate needs at least two angles")
    if not nu > 0:
        raise OutOfRange("kernel concentration must be positive")
    t = np.asarray(theta, dtype=float)
    half = np.sin(np.subtract.outer(t, a) / 2)
    k = np.exp(-2.0 * nu * half * half) / (TWO_PI * _sp.i0e(nu))
    return k.mean(axis=-1)


@dataclass(frozen=True)
class KdeSpec:
    """Kernel settings; ``nu=None`` selects :func:`kde_bandwidth`."""

    nu: float | None = None
    grid_size: int = 512


@dataclass(frozen=True)
class ViolinStyle:
    size: int = 400
    ring_radius: float = 1.0
    density_scale: float = 0.35
    zero: str = "east"          # direction of angle 0: east or north
    clockwise: bool = False
    fill: str = "#9ecae1"
    stroke: str = "#3182bd"
    outlier_color: str = "#d62728"
    decimals: int = 2


@dataclass(frozen=True)
class ViolinGeometry:
    """Everything needed to draw the plot, in unit-circle coordinates.

    ``theta`` and ``thickness`` trace the ring: ``ring_radius ± thickness``.
    With ``clip="arc"`` the ring runs from ``median − cutoff`` to
    ``median + cutoff`` (closed only when that arc is the whole circle).
    With ``clip="height"`` the ring is a full annulus whose thickness is
    capped at the density level ``clip_density``.  In both modes
    ``clip_density`` is the KDE value at the cutoff angles (the larger of
    the two).
    """

    theta: np.ndarray
    density: np.ndarray
    thickness: np.ndarray
    closed: bool
    ring_radius: float
    density_scale: float
    max_density: float
    clip_angle: float
    clip_density: float
    median: float
    box: tuple[float, float]
    angles: np.ndarray
    flagged: np.ndarray
    nu: float
    clip: str = "arc"


def violin_geometry(angles, config: DetectionConfig | None = None, kde: KdeSpec = KdeSpec(),
                    style: ViolinStyle = ViolinStyle(), report: DetectionReport | None = None,
                    clip: str = "arc") -> ViolinGeometry:
    """Compute the KDE ring, box arc and outlier set for a sample.

    Parameters
    ----------
    angles : array_like
        At least two angles in radians.
    config : DetectionConfig, optional
        Detector settings; the cutoff bounds the ring.
    kde : KdeSpec
        Kernel concentration and the number of ring vertices.
    style : ViolinStyle
        Only ``ring_radius`` and ``density_scale`` are used here.
    report : DetectionReport, optional
        Reuse an existing detection instead of running one.
    clip : {"arc", "height"}
        Cut the ring at the cutoff angles, or keep the whole circle and cap
        the thickness at the density found there.
    """
    if clip not in ("arc", "height"):
        raise ValueError("clip must be 'arc' or 'height'")
    a = as_angles(angles)
    if a.size < 2:
        raise OutOfRange("a violin plot needs at least two angles")
    rep = report or detect(a, config or DetectionConfig())
    nu = kde.nu if kde.nu is not None else kde_bandwidth(a.size, rep.parameter)
    med = rep.center
    c = rep.cutoff if math.isfinite(rep.cutoff) else math.pi
    full = np.linspace(-math.pi, math.pi, kde.grid_size, endpoint=False)
    fmax = float(vonmises_kde(a, nu, full).max())
    closed = c >= math.pi or clip == "height"
    if closed:
        theta = full + med
    else:
        theta = med + np.linspace(-c, c, kde.grid_size // 2 + 1)
    dens = vonmises_kde(a, nu, theta)
    fmax = max(fmax, float(dens.max()))
    clip_d = fmax if c >= math.pi else float(vonmises_kde(a, nu, [med - c, med + c]).max())
    shown = np.minimum(dens, clip_d) if clip == "height" else dens
    thick = style.density_scale * shown / fmax
    box = circular_quartiles(a, med)
    return ViolinGeometry(theta, dens, thick, closed, style.ring_radius, style.density_scale,
                          fmax, c, clip_d, med, box, a, rep.flagged.copy(), float(nu), clip)


def _xy(style: ViolinStyle, theta, radius):
    scale = style.size * 0.3
    cx = cy = style.size / 2
    t = np.asarray(theta, dtype=float)
    if style.clockwise:
        t = -t
    if style.zero == "north":
        t = t + math.pi / 2
    elif style.zero != "east":
        raise ValueError("zero must be 'east' or 'north'")
    r = np.asarray(radius, dtype=float) * scale
    return cx + r * np.cos(t), cy - r * np.sin(t)


def _fmt(style, v) -> str:
    s = f"{v:.{style.decimals}f}"
    return "0" + s[2:] if s.startswith("-0") and float(s) == 0 else s


def _poly(style, xs, ys, move=True) -> str:
    parts = []
    for i, (x, y) in enumerate(zip(xs, ys)):
        cmd = "M" if (i == 0 and move) else "L"
        parts.append(f"{cmd}{_fmt(style, x)},{_fmt(style, y)}")
    return " ".join(parts)


def render_svg(geom: ViolinGeometry, style: ViolinStyle = ViolinStyle(), title: str | None = None) -> str:
    """Serialize a :class:`ViolinGeometry` to SVG text."""
    f = lambda v: _fmt(style, v)  # noqa: E731
    size = style.size
    R = geom.ring_radius
    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}">',
        f'<rect width="{size}" height="{size}" fill="white"/>',
    ]
    if title:
        lines.append(f'<title>{title}</title>')
    cx = cy = size / 2
    lines.append(f'<circle class="axis" cx="{f(cx)}" cy="{f(cy)}" r="{f(R * size * 0.3)}" '
                 'fill="none" stroke="#888888" stroke-width="1"/>')
    for deg in (0, 90, 180, 270):
        x, y = _xy(style, math.radians(deg), R * 1.55)
        lines.append(f'<text class="label" x="{f(x)}" y="{f(y)}" font-size="12" '
                     f'text-anchor="middle" dominant-baseline="middle">{deg}°</text>')

    ox, oy = _xy(style, geom.theta, R + geom.thickness)
    ix, iy = _xy(style, geom.theta[::-1], R - geom.thickness[::-1])
    if geom.closed:
        d = _poly(style, ox, oy) + " Z " + _poly(style, ix, iy) + " Z"
    else:
        d = _poly(style, ox, oy) + " " + _poly(style, ix, iy, move=False) + " Z"
    lines.append(f'<path class="ring" d="{d}" fill="{style.fill}" fill-rule="evenodd" '
                 f'stroke="{style.stroke}" stroke-width="1"/>')

    lo, hi = geom.box
    sweep = float(np.mod(hi - lo, TWO_PI))
    arc = lo + np.linspace(0.0, sweep, max(2, int(math.degrees(sweep)) + 2))
    bx, by = _xy(style, arc, np.full(arc.size, R))
    lines.append(f'<path class="box" d="{_poly(style, bx, by)}" fill="none" stroke="black" '
                 'stroke-width="6" stroke-linecap="butt"/>')

    (x1,), (y1,) = _xy(style, [geom.median], [R - 0.06])
    (x2,), (y2,) = _xy(style, [geom.median], [R + 0.06])
    lines.append(f'<line class="median" x1="{f(x1)}" y1="{f(y1)}" x2="{f(x2)}" y2="{f(y2)}" '
                 'stroke="white" stroke-width="2"/>')

    keep = ~geom.flagged
    px, py = _xy(style, geom.angles[keep], np.full(int(keep.sum()), R))
    for x, y in zip(px, py):
        lines.append(f'<circle class="point" cx="{f(x)}" cy="{f(y)}" r="2" fill="#333333"/>')
    out_r = R + geom.density_scale + 0.12
    qx, qy = _xy(style, geom.angles[geom.flagged], np.full(int(geom.flagged.sum()), out_r))
    for x, y in zip(qx, qy):
        lines.append(f'<circle class="outlier" cx="{f(x)}" cy="{f(y)}" r="4" fill="{style.outlier_color}"/>')
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def violin_svg(angles, config: DetectionConfig | None = None, kde: KdeSpec = KdeSpec(),
               style: ViolinStyle = ViolinStyle(), title: str | None = None, clip: str = "arc") -> str:
    """Geometry and rendering in one call."""
    return render_svg(violin_geometry(angles, config, kde, style, clip=clip), style, title)
