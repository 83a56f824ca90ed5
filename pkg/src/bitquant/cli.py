"""Command-line front end: spec-file ingestion and machine-readable outputs.

Channel spec files are JSON documents:

    {
      "phi0": {"kind": "single_gaussian",
               "components": [{"mean": -1.0, "std_dev": 6.0, "weight": 1.0}]},
      "phi1": {"kind": "tabulated", "table": [[0.0, 1.0], [1.0, 1.0]]},
      "support": [-73.0, 71.0]          // optional
    }

Exit codes: 0 success, 2 spec parse/validation error, 3 no informative
quantizer exists, 4 unresolved numerical failure.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from pathlib import Path

from . import __version__
from .channel import InputDistribution, ThresholdVector
from .density import ChannelSpec, DensityModel, GaussianComponent
from .errors import MembershipAmbiguous, NoInformativeQuantizer, SpecInvalid, SpecParseError
from .optimizer import search_bounds, solve, sweep
from .oracle import brute_force, mc_mutual_information

EXIT_OK = 0
EXIT_SPEC = 2
EXIT_NO_QUANTIZER = 3
EXIT_NUMERICAL = 4


# -- spec (de)serialization --------------------------------------------------

def _density_from_dict(obj, label: str) -> DensityModel:
    if not isinstance(obj, dict) or "kind" not in obj:
        raise SpecParseError(f"{label}: expected an object with a 'kind' field")
    kind = obj["kind"]
    if kind in ("single_gaussian", "gaussian_mixture"):
        comps = obj.get("components")
        if not isinstance(comps, list) or not comps:
            raise SpecParseError(f"{label}: '{kind}' needs a non-empty 'components' list")
        try:
            components = [
                GaussianComponent(float(c["mean"]), float(c["std_dev"]), float(c.get("weight", 1.0)))
                for c in comps
            ]
        except SpecInvalid:
            raise
        except (KeyError, TypeError, ValueError) as exc:
            raise SpecParseError(f"{label}: bad component entry ({exc})") from exc
        if kind == "single_gaussian":
            if len(components) != 1:
                raise SpecInvalid(f"{label}: single_gaussian must have exactly one component")
            return DensityModel.gaussian(components[0].mean, components[0].std_dev)
        return DensityModel.mixture(components)
    if kind == "tabulated":
        table = obj.get("table")
        if not isinstance(table, list):
            raise SpecParseError(f"{label}: 'tabulated' needs a 'table' of [y, density] pairs")
        return DensityModel.tabulated(table)
    raise SpecParseError(f"{label}: unknown density kind {kind!r}")


def _density_to_dict(model: DensityModel) -> dict:
    if model.kind == "tabulated":
        return {
            "kind": "tabulated",
            "table": [[float(y), float(d)] for y, d in zip(model.table_y, model.table_density)],
        }
    return {
        "kind": model.kind,
        "components": [
            {"mean": c.mean, "std_dev": c.std_dev, "weight": c.weight} for c in model.components
        ],
    }


def load_spec(path) -> ChannelSpec:
    """Parse and validate a channel spec file."""
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise SpecParseError(f"cannot read {path}: {exc}") from exc
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecParseError(f"{path}: not valid JSON ({exc})") from exc
    if not isinstance(obj, dict):
        raise SpecParseError(f"{path}: top level must be an object")
    for key in ("phi0", "phi1"):
        if key not in obj:
            raise SpecParseError(f"{path}: missing '{key}'")
    phi0 = _density_from_dict(obj["phi0"], "phi0")
    phi1 = _density_from_dict(obj["phi1"], "phi1")
    support = obj.get("support")
    if support is not None:
        if not (isinstance(support, list) and len(support) == 2):
            raise SpecParseError(f"{path}: 'support' must be [lo, hi]")
        support = (float(support[0]), float(support[1]))
    return ChannelSpec(phi0, phi1, support)


def spec_to_dict(spec: ChannelSpec) -> dict:
    return {
        "phi0": _density_to_dict(spec.phi0),
        "phi1": _density_to_dict(spec.phi1),
        "support": [spec.support[0], spec.support[1]],
    }


def write_spec(spec: ChannelSpec, path) -> None:
    Path(path).write_text(json.dumps(spec_to_dict(spec), indent=2) + "\n")


# -- output helpers -----------------------------------------------------------

def _jsonable(value):
    if dataclasses.is_dataclass(value) and not isinstance(value, type):
        return {k: _jsonable(v) for k, v in dataclasses.asdict(value).items()}
    if isinstance(value, dict):
        return {k: _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if hasattr(value, "item"):  # numpy scalars
        value = value.item()
    if isinstance(value, float) and value != value:  # NaN has no JSON spelling
        return None
    return value


def _emit(document: dict, out_path, config: dict) -> None:
    document = {
        "tool": "bitquant",
        "version": __version__,
        "config": _jsonable(config),
        **_jsonable(document),
    }
    text = json.dumps(document, indent=2) + "\n"
    if out_path:
        Path(out_path).write_text(text)
    else:
        sys.stdout.write(text)


def _emit_csv(rows: list[str], out_path) -> None:
    text = "\n".join(rows) + "\n"
    if out_path:
        Path(out_path).write_text(text)
    else:
        sys.stdout.write(text)


# -- subcommands --------------------------------------------------------------

def _cmd_solve(args) -> int:
    spec = load_spec(args.spec)
    report = solve(spec, step=args.step, refine_tol=args.tol)
    document = {
        "r_star": report.r_star,
        "capacity_bits": report.capacity_bits,
        "thresholds": list(report.thresholds),
        "segment_maps_to_zero": list(report.segment_maps_to_zero),
        "matrix": {"a11": report.matrix.a11, "a22": report.matrix.a22},
        "p_star": {"p0": report.p_star.p0, "p1": report.p_star.p1},
        "bounds": list(report.bounds) if report.bounds[0] == report.bounds[0] else None,
        "diagnostics": report.diagnostics,
        "sweep": [dataclasses.asdict(pt) for pt in report.sweep],
    }
    _emit(document, args.out, _config(args))
    if report.diagnostics.get("no_informative_quantizer"):
        return EXIT_NO_QUANTIZER
    return EXIT_OK


def _cmd_bounds(args) -> int:
    spec = load_spec(args.spec)
    r_lo, r_hi = search_bounds(spec, tol=args.tol)
    _emit({"r_lo": r_lo, "r_hi": r_hi}, args.out, _config(args))
    return EXIT_OK


def _cmd_sweep(args) -> int:
    spec = load_spec(args.spec)
    if args.r_lo is not None and args.r_hi is not None:
        bounds = (args.r_lo, args.r_hi)
    else:
        bounds = search_bounds(spec, tol=args.tol)
    points = sweep(spec, bounds, step=args.step)
    rows = ["r,a11,a22,capacity_bits,thresholds"]
    for pt in points:
        thresholds = ";".join(repr(t) for t in pt.thresholds)
        rows.append(f"{pt.r!r},{pt.a11!r},{pt.a22!r},{pt.capacity_bits!r},{thresholds}")
    _emit_csv(rows, args.out)
    return EXIT_OK


def _cmd_oracle(args) -> int:
    spec = load_spec(args.spec)
    result = brute_force(
        spec,
        max_thresholds=args.max_thresholds,
        grid_points=args.grid_points,
        p_grid_points=args.p_grid_points,
    )
    _emit(dataclasses.asdict(result), args.out, _config(args))
    return EXIT_OK


def _cmd_simulate(args) -> int:
    spec = load_spec(args.spec)
    report = solve(spec, step=args.step, refine_tol=args.tol)
    if report.diagnostics.get("no_informative_quantizer"):
        _emit({"error": "no informative quantizer"}, args.out, _config(args))
        return EXIT_NO_QUANTIZER
    tv = ThresholdVector(report.thresholds, report.segment_maps_to_zero)
    estimate = mc_mutual_information(
        spec, tv, InputDistribution(report.p_star.p0), n=args.samples, seed=args.seed
    )
    document = dataclasses.asdict(estimate)
    document["analytic_bits"] = report.capacity_bits
    document["thresholds"] = list(report.thresholds)
    _emit(document, args.out, _config(args))
    return EXIT_OK


def _config(args) -> dict:
    keys = ("spec", "step", "tol", "out", "samples", "seed", "max_thresholds",
            "grid_points", "p_grid_points", "r_lo", "r_hi")
    cfg = {"command": args.command}
    for key in keys:
        if hasattr(args, key):
            value = getattr(args, key)
            cfg[key] = str(value) if isinstance(value, Path) else value
    return cfg


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bitquant",
        description="Capacity-optimal single-bit quantizers for binary-input "
        "continuous-output channels.",
    )
    parser.add_argument("--version", action="version", version=f"bitquant {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, samples_required=False):
        p.add_argument("--spec", required=True, help="channel spec JSON file")
        p.add_argument("--step", type=float, default=0.01, help="level sweep resolution")
        p.add_argument("--tol", type=float, default=1e-6, help="refinement / bounds tolerance")
        p.add_argument("--out", default=None, help="output file (default: stdout)")

    p = sub.add_parser("solve", help="find the jointly optimal quantizer and input mass")
    common(p)

    p = sub.add_parser("bounds", help="print the 1/e level bounds")
    common(p)

    p = sub.add_parser("sweep", help="write the capacity-vs-level curve as CSV")
    common(p)
    p.add_argument("--r-lo", type=float, default=None, help="sweep start (default: 1/e bound)")
    p.add_argument("--r-hi", type=float, default=None, help="sweep end (default: 1/e bound)")

    p = sub.add_parser("oracle", help="brute-force joint grid search (ground truth)")
    common(p)
    p.add_argument("--max-thresholds", type=int, default=2, choices=(1, 2, 3))
    p.add_argument("--grid-points", type=int, default=2001)
    p.add_argument("--p-grid-points", type=int, default=201)

    p = sub.add_parser("simulate", help="Monte Carlo validation of the solved quantizer")
    common(p)
    p.add_argument("--samples", type=int, default=1_000_000, help="sample count (>= 1000)")
    p.add_argument("--seed", type=int, default=0)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "simulate" and args.samples < 1000:
        parser.error("--samples must be >= 1000")
    handlers = {
        "solve": _cmd_solve,
        "bounds": _cmd_bounds,
        "sweep": _cmd_sweep,
        "oracle": _cmd_oracle,
        "simulate": _cmd_simulate,
    }
    try:
        return handlers[args.command](args)
    except (SpecParseError, SpecInvalid) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SPEC
    except NoInformativeQuantizer as exc:
        print(f"no informative quantizer: {exc}", file=sys.stderr)
        return EXIT_NO_QUANTIZER
    except MembershipAmbiguous as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
