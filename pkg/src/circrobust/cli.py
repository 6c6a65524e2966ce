"""Command line interface: ``circrobust <command> [options]``.

Exit codes: 0 success, 2 bad input or arguments, 3 numerical failure,
4 non-unique median, 5 explosion.  Failures print a JSON object with
``error``, ``message`` and ``exit_code`` to stderr.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .detection import DetectionConfig, detect
from .dispersion import estimate
from .distributions import Dispersion, Family
from .efficiency import are
from .errors import (
    CircularError,
    DatasetUnavailable,
    EmptyDataset,
    Explosion,
    NonUniqueMedian,
    ParseError,
)
from .influence import influence_function, transformed_influence_function
from .io import detection_payload, ingest, provenance, to_json, write_csv
from .simulation import bias_curve, contamination_study
from .violin import KdeSpec, ViolinStyle, violin_geometry, render_svg

SEED_ENV = "CIRCROBUST_SEED"
EXIT_PARSE, EXIT_NUMERIC, EXIT_MEDIAN, EXIT_EXPLOSION = 2, 3, 4, 5


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _default_seed() -> int:
    raw = os.environ.get(SEED_ENV)
    if raw is None:
        return 42
    try:
        return int(raw)
    except ValueError:
        raise _UsageError(f"${SEED_ENV} must be an integer, got {raw!r}") from None


def _floats(text: str) -> list[float]:
    try:
        return [float(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _kinds(text: str) -> list[Dispersion]:
    try:
        return [Dispersion(t.strip().lower()) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"unknown dispersion kind in {text!r}") from None


def _emit(text: str, out: str | None):
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _config(args) -> dict:
    skip = {"func", "out"}
    return {k: (v.value if hasattr(v, "value") else v) for k, v in sorted(vars(args).items()) if k not in skip}


def _data_args(p):
    p.add_argument("--data", required=True, help="bundled dataset name (frogs, seastars, larva) or a file path")
    p.add_argument("--unit", choices=["radians", "degrees"], help="override the unit of the input file")


def _model_arg(p):
    p.add_argument("--model", type=Family, choices=list(Family), default=Family.VON_MISES,
                   help="vm (von Mises) or wn (wrapped normal)")


def _out_arg(p):
    p.add_argument("--out", help="write to this file instead of stdout")


def cmd_estimate(args) -> int:
    sample = ingest(args.data, args.unit)
    rep = estimate(sample.angles, args.kind, args.model)
    payload = {
        "data": sample.name,
        "n": rep.n,
        "h": rep.h,
        "kind": rep.kind.value,
        "model": rep.family.value,
        "dispersion": rep.dispersion,
        "csd": rep.csd,
        "parameter": rep.parameter,
        "parameter_name": rep.param_name,
        "status": rep.status,
    }
    if rep.window is not None:
        payload["window"] = {"start": rep.window.start, "end": rep.window.end}
    _emit(to_json(payload, provenance("estimate", args.seed, _config(args))), args.out)
    return EXIT_EXPLOSION if rep.status == "explosion" else 0


def cmd_detect(args) -> int:
    sample = ingest(args.data, args.unit)
    cfg = DetectionConfig(args.model, args.alpha, args.kind, args.baseline, args.two_sided)
    rep = detect(sample.angles, cfg)
    _emit(to_json(detection_payload(rep), provenance("detect", args.seed, _config(args))), args.out)
    return EXIT_EXPLOSION if rep.warnings else 0


def cmd_bias(args) -> int:
    model = args.model.model(args.param)
    curve = bias_curve(model, args.kinds, args.epsilon, args.type, args.n, args.grid, args.seed)
    text = write_csv(curve.rows(), ["theta", "relBias", "kind", "epsilon", "type", "seed"],
                     provenance("bias", args.seed, _config(args)))
    _emit(text, args.out)
    return 0


def cmd_are(args) -> int:
    rows = []
    for p in args.param:
        model = args.model.model(p)
        for k in args.kinds:
            rows.append({"param": p, "kind": k.value, "are": are(model, k)})
    _emit(write_csv(rows, ["param", "kind", "are"], provenance("are", args.seed, _config(args))), args.out)
    return 0


def _progress(done: int, total: int):
    print(f"study: {done}/{total} parameter values done", file=sys.stderr, flush=True)


def cmd_study(args) -> int:
    rows = contamination_study(args.model, args.param, args.epsilons, args.n, args.reps,
                               args.type, args.seed, args.workers, progress=_progress)
    cols = ["param", "epsilon", "estimator", "min", "q1", "median", "q3", "max", "failures"]
    _emit(write_csv((r.as_dict() for r in rows), cols, provenance("study", args.seed, _config(args))), args.out)
    return 0


def cmd_violin(args) -> int:
    sample = ingest(args.data, args.unit)
    cfg = DetectionConfig(args.model, args.alpha, args.kind, two_sided=args.two_sided)
    style = ViolinStyle(zero=args.zero, clockwise=args.clockwise)
    geom = violin_geometry(sample.angles, cfg, KdeSpec(nu=args.nu), style, clip=args.clip)
    _emit(render_svg(geom, style, title=sample.name or None), args.out)
    return 0


def cmd_if_curve(args) -> int:
    model = args.model.model(args.param)
    ys = np.linspace(-math.pi, math.pi, args.grid)
    rows = []
    for k in args.kinds:
        fn = transformed_influence_function if args.transformed else influence_function
        for y, v in zip(ys, fn(model, k, ys)):
            rows.append({"y": y, "kind": k.value, "if": v})
    _emit(write_csv(rows, ["y", "kind", "if"], provenance("if-curve", args.seed, _config(args))), args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="circrobust", description="Robust circular dispersion, detection and plots.")
    parser.add_argument("--version", action="version", version=f"circrobust {__version__}")
    parser.add_argument("--seed", type=int, default=None,
                        help=f"random seed (default ${SEED_ENV} or 42)")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("estimate", help="robust κ̂ or σ̂ of a data set")
    _data_args(p), _model_arg(p), _out_arg(p)
    p.add_argument("--kind", type=Dispersion, choices=list(Dispersion), default=Dispersion.CLMS)
    p.set_defaults(func=cmd_estimate)

    p = sub.add_parser("detect", help="flag anomalous directions")
    _data_args(p), _model_arg(p), _out_arg(p)
    p.add_argument("--kind", type=Dispersion, choices=list(Dispersion), default=Dispersion.CLMS)
    p.add_argument("--alpha", type=float, default=0.01)
    p.add_argument("--baseline", action="store_true", help="circular mean and MLE instead of the robust fit")
    p.add_argument("--two-sided", action="store_true", help="cutoff at the 1 − α/2 quantile")
    p.set_defaults(func=cmd_detect)

    p = sub.add_parser("bias", help="relative bias curves")
    _model_arg(p), _out_arg(p)
    p.add_argument("--param", "--kappa", "--sigma", dest="param", type=float, default=5.0)
    p.add_argument("--epsilon", type=float, default=0.1)
    p.add_argument("--type", choices=["point", "shift"], default="point")
    p.add_argument("--n", type=int, default=5000)
    p.add_argument("--grid", type=int, default=181)
    p.add_argument("--kinds", type=_kinds, default=list(Dispersion))
    p.set_defaults(func=cmd_bias)

    p = sub.add_parser("are", help="asymptotic relative efficiency")
    _model_arg(p), _out_arg(p)
    p.add_argument("--param", "--kappa", "--sigma", dest="param", type=_floats, default=[1.0])
    p.add_argument("--kind", "--kinds", dest="kinds", type=_kinds,
                   default=[Dispersion.CMAD, Dispersion.CLMS, Dispersion.CLTS])
    p.set_defaults(func=cmd_are)

    p = sub.add_parser("study", help="contamination simulation study")
    _model_arg(p), _out_arg(p)
    p.add_argument("--param", "--kappa", "--sigma", dest="param", type=_floats, default=None)
    p.add_argument("--epsilons", type=_floats, default=[0.0, 0.1, 0.2])
    p.add_argument("--n", type=int, default=200)
    p.add_argument("--reps", type=int, default=500)
    p.add_argument("--type", choices=["point", "shift"], default="shift")
    p.add_argument("--workers", type=int, default=None)
    p.set_defaults(func=cmd_study)

    p = sub.add_parser("violin", help="circular violin plot as SVG")
    _data_args(p), _model_arg(p), _out_arg(p)
    p.add_argument("--kind", type=Dispersion, choices=list(Dispersion), default=Dispersion.CLMS)
    p.add_argument("--alpha", type=float, default=0.01)
    p.add_argument("--two-sided", action="store_true")
    p.add_argument("--nu", type=float, default=None, help="kernel concentration (default: plug-in)")
    p.add_argument("--zero", choices=["east", "north"], default="east")
    p.add_argument("--clockwise", action="store_true")
    p.add_argument("--clip", choices=["arc", "height"], default="arc",
                   help="cut the ring at the cutoff angles or cap its thickness")
    p.set_defaults(func=cmd_violin)

    p = sub.add_parser("if-curve", aliases=["ifcurve"], help="influence function on a grid")
    _model_arg(p), _out_arg(p)
    p.add_argument("--param", "--kappa", "--sigma", dest="param", type=float, default=2.0)
    p.add_argument("--kinds", type=_kinds, default=list(Dispersion))
    p.add_argument("--grid", type=int, default=181)
    p.add_argument("--transformed", action="store_true", help="IF of κ̂ or σ̂ rather than of the measure")
    p.set_defaults(func=cmd_if_curve)
    return parser


def _fail(kind: str, message: str, code: int) -> int:
    sys.stderr.write(json.dumps({"error": kind, "message": message, "exit_code": code}) + "\n")
    return code


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        if args.seed is None:
            args.seed = _default_seed()
        if args.command == "study" and args.param is None:
            args.param = [1.0, 2.0, 5.0] if args.model is Family.VON_MISES else [0.5, 1.0, 1.2]
        return args.func(args)
    except _UsageError as exc:
        return _fail("usage", str(exc), EXIT_PARSE)
    except (ParseError, EmptyDataset, DatasetUnavailable) as exc:
        return _fail(type(exc).__name__, str(exc), EXIT_PARSE)
    except NonUniqueMedian as exc:
        return _fail("NonUniqueMedian", str(exc), EXIT_MEDIAN)
    except Explosion as exc:
        return _fail("Explosion", str(exc), EXIT_EXPLOSION)
    except (CircularError, ArithmeticError, ValueError) as exc:
        return _fail(type(exc).__name__, str(exc), EXIT_NUMERIC)


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
