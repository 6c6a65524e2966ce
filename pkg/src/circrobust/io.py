"""Reading angle files, bundled datasets, and writing CSV/JSON results.

Angle files hold one angle per line.  Blank lines and ``#`` comments are
ignored, and a ``# unit: degrees`` (or ``radians``) comment sets the unit.
A file whose first data line contains a comma is read as CSV with a header
row that must include an ``angle`` column (and may include ``label``).

Result files carry a provenance header: the command, package version, seed
and a hash of the configuration.  Floats are written with 12 significant
digits.
"""

from __future__ import annotations

import csv
import hashlib
import io as _io
import json
import math
import os
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Iterable, Mapping

import numpy as np

from .core import canonicalize
from .errors import DatasetUnavailable, EmptyDataset, ParseError

__all__ = [
    "AngleSample",
    "BUNDLED",
    "DATA_ENV",
    "ingest",
    "parse_angles",
    "emit",
    "fmt",
    "provenance",
    "write_csv",
    "to_json",
    "detection_payload",
]

#: Datasets addressable by name.  ``larva`` is not bundled and
#: must be supplied as ``larva.txt`` in the directory named by ``DATA_ENV``.
BUNDLED = ("frogs", "seastars", "larva")
DATA_ENV = "CIRCROBUST_DATA"


@dataclass(frozen=True)
class AngleSample:
    """Angles in radians on [−π, π) plus optional per-point labels."""

    angles: np.ndarray
    name: str = ""
    labels: tuple | None = None

    def __len__(self):
        return self.angles.size


def _unit_directive(line: str):
    body = line.lstrip("#").strip().lower()
    if body.startswith("unit:"):
        unit = body.split(":", 1)[1].strip()
        if unit in ("degrees", "radians"):
            return unit
    return None


def parse_angles(text: str, unit: str | None = None, name: str = "") -> AngleSample:
    """Parse angle-file text.

    Parameters
    ----------
    text : str
        File contents.
    unit : {"radians", "degrees"}, optional
        Overrides any ``# unit:`` directive.  Defaults to radians.

    Raises
    ------
    ParseError
        On a malformed or non-finite value, with its line number.
    EmptyDataset
        If no angles are found.
    """
    if unit not in (None, "radians", "degrees"):
        raise ValueError("unit must be 'radians' or 'degrees'")
    file_unit = None
    values, labels = [], []
    header = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            file_unit = _unit_directive(line) or file_unit
            continue
        if header is None and not values and "," in line:
            header = [h.strip().lower() for h in next(csv.reader([line]))]
            if "angle" not in header:
                raise ParseError("CSV header has no 'angle' column", lineno)
            continue
        if header is not None:
            row = next(csv.reader([line]))
            if len(row) != len(header):
                raise ParseError(f"expected {len(header)} fields, found {len(row)}", lineno)
            field = row[header.index("angle")].strip()
            if "label" in header:
                labels.append(row[header.index("label")].strip())
        else:
            field = line
        try:
            v = float(field)
        except ValueError:
            raise ParseError(f"not a number: {field!r}", lineno) from None
        if not math.isfinite(v):
            raise ParseError(f"non-finite angle {field!r}", lineno)
        values.append(v)
    if not values:
        raise EmptyDataset(f"no angles found in {name or 'input'}")
    a = np.asarray(values, dtype=float)
    if (unit or file_unit or "radians") == "degrees":
        a = np.deg2rad(a)
    return AngleSample(np.atleast_1d(canonicalize(a)), name, tuple(labels) if labels else None)


def ingest(source, unit: str | None = None) -> AngleSample:
    """Load a bundled dataset by name or an angle file by path.

    Raises
    ------
    DatasetUnavailable
        For ``"larva"`` when no local copy is configured.
    """
    src = str(source)
    if src in BUNDLED:
        if src == "larva":
            base = os.environ.get(DATA_ENV)
            path = Path(base) / "larva.txt" if base else None
            if path is None or not path.is_file():
                raise DatasetUnavailable(
                    "the larva data set is not bundled; place it in larva.txt (one angle per "
                    f"line) inside the directory named by ${DATA_ENV}")
            return parse_angles(path.read_text(encoding="utf-8"), unit, "larva")
        text = resources.files("circrobust").joinpath("data", f"{src}.txt").read_text(encoding="utf-8")
        return parse_angles(text, unit, src)
    path = Path(src)
    try:
        text = path.read_text(encoding="utf-8")
    except FileNotFoundError:
        raise DatasetUnavailable(f"no such file or bundled dataset: {src}") from None
    return parse_angles(text, unit, path.stem)


def emit(sample, path=None) -> str:
    """Write angles in radians at full precision; returns the text.

    ``ingest(emit(s))`` reproduces ``s`` bit for bit.
    """
    angles = sample.angles if isinstance(sample, AngleSample) else np.asarray(sample, dtype=float)
    text = "# unit: radians\n" + "".join(f"{float(v)!r}\n" for v in np.atleast_1d(angles))
    if path is not None:
        Path(path).write_text(text, encoding="utf-8")
    return text


def fmt(x) -> str:
    """Format a number with 12 significant digits (``inf``/``nan`` spelled out)."""
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    x = float(x)
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return f"{x:.12g}"


def provenance(command: str, seed: int | None, config: Mapping) -> dict:
    """Provenance record with a short SHA-256 hash of the configuration."""
    from . import __version__

    blob = json.dumps(config, sort_keys=True, default=str).encode()
    return {
        "command": command,
        "version": __version__,
        "seed": seed,
        "config_hash": hashlib.sha256(blob).hexdigest()[:16],
    }


def write_csv(rows: Iterable[Mapping], columns: list[str], prov: Mapping | None = None, stream=None) -> str:
    """CSV text with a ``# key: value`` provenance header; also written to ``stream``."""
    buf = _io.StringIO()
    for k, v in (prov or {}).items():
        buf.write(f"# {k}: {v}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for row in rows:
        w.writerow([fmt(row[c]) if isinstance(row[c], (int, float, np.number)) else row[c] for c in columns])
    text = buf.getvalue()
    if stream is not None:
        stream.write(text)
    return text


def _round(obj):
    if isinstance(obj, dict):
        return {k: _round(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round(v) for v in obj]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        return float(f"{x:.12g}") if math.isfinite(x) else ("inf" if x > 0 else "-inf" if x < 0 else "nan")
    return obj


def to_json(payload: Mapping, prov: Mapping | None = None) -> str:
    """JSON text with floats rounded to 12 significant digits."""
    body = dict(payload)
    if prov is not None:
        body = {"provenance": dict(prov), **body}
    return json.dumps(_round(body), indent=2, ensure_ascii=False) + "\n"


def detection_payload(report) -> dict:
    """JSON-ready dict of a :class:`~circrobust.detection.DetectionReport`."""
    cfg = report.config
    return {
        "median": report.center,
        "parameter": report.parameter,
        "cutoff": report.cutoff,
        "alpha": cfg.alpha,
        "model": cfg.family.value,
        "estimator": "baseline" if cfg.baseline else cfg.kind.value,
        "flaggedCount": report.n_flagged,
        "points": [
            {"index": i, "angle": float(a), "distance": float(d), "flagged": bool(f)}
            for i, (a, d, f) in enumerate(zip(report.angles, report.distances, report.flagged))
        ],
        "warnings": list(report.warnings),
    }
