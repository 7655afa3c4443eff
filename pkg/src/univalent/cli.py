"""Command-line front end: ``univalent <command> [options]``.

Exit codes: 0 success, 1 acceptance failure, 2 invalid input, 3 domain error
raised by one of the library modules.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from typing import Any, Dict, List, Optional, Sequence

import numpy as np

from . import acceptance
from . import extremal as ex
from . import families as fm
from . import meromorphic as me
from . import oracles as orc
from . import transforms as tr
from .errors import UnivalentError
from .grids import N_ANGLES, N_RADII, RMAX, DiskGrid

COMMANDS = ("deviation", "mean", "arclength", "norm", "fs", "star", "curve", "area", "coeffs", "extreme", "report")

# option name -> (type, nargs); used for the parser and to validate config files
OPTIONS: Dict[str, tuple] = {
    "lambda": (float, None), "mu": (float, 2), "alpha": (float, 2), "p": (float, None), "n": (int, None),
    "r": (float, None), "order": (int, None), "nodes": (int, None), "rmax": (float, None),
    "grid_radii": (int, None), "grid_angles": (int, None), "tol": (float, None), "out": (str, None),
    "format": (str, None), "spec": (str, None), "seed": (int, None), "resolution": (int, None),
    "class": (str, None), "sign": (int, None),
}

DEFAULTS: Dict[str, Any] = {
    "lambda": 1.0, "mu": [0.0, 0.0], "alpha": [1.0, 0.0], "p": 2.0, "n": 0, "r": 0.5, "order": 64,
    "nodes": None, "rmax": RMAX, "grid_radii": N_RADII, "grid_angles": N_ANGLES, "tol": None,
    "out": None, "format": None, "spec": None, "seed": 0, "resolution": 512, "class": "U", "sign": 0,
}

CSV_MEAN_COLUMNS = ("family", "lambda", "n", "p", "r", "value", "bound", "gap")


class UsageError(Exception):
    pass


# formatting -----------------------------------------------------------------

def fmt_float(x: float) -> str:
    if math.isnan(x) or math.isinf(x):
        return json.dumps(str(x))
    return format(x, ".17g")


def dumps(obj: Any, indent: int = 0) -> str:
    """JSON with every float written to 17 significant digits and sorted keys."""
    pad, inner = "  " * indent, "  " * (indent + 1)
    if isinstance(obj, (bool, np.bool_)):
        return "true" if obj else "false"
    if obj is None:
        return "null"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return fmt_float(float(obj))
    if isinstance(obj, (complex, np.complexfloating)):
        return dumps([obj.real, obj.imag], indent)
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{inner}{json.dumps(str(k))}: {dumps(v, indent + 1)}" for k, v in sorted(obj.items())]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        seq = list(obj)
        if not seq:
            return "[]"
        if all(not isinstance(v, (dict, list, tuple, np.ndarray)) for v in seq):
            return "[" + ", ".join(dumps(v, indent + 1) for v in seq) + "]"
        return "[\n" + ",\n".join(inner + dumps(v, indent + 1) for v in seq) + "\n" + pad + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def to_csv(columns: Sequence[str], rows: List[Dict[str, Any]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([fmt_float(v) if isinstance(v, (float, np.floating)) else v for v in
                         (row[c] for c in columns)])
    return buf.getvalue()


# arguments ------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="univalent", description="Computations for the class U(lambda).")
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--config", help="JSON file with option values; command-line flags take precedence")
    for name, (typ, nargs) in OPTIONS.items():
        flag = "--" + name.replace("_", "-")
        kwargs = {"type": typ, "default": None, "dest": name}
        if nargs:
            # a complex value: one number (real) or two (real, imaginary)
            kwargs["nargs"] = "+"
            kwargs["metavar"] = "RE [IM]"
        parser.add_argument(flag, **kwargs)
    return parser


def resolve(args: argparse.Namespace) -> Dict[str, Any]:
    """Merge defaults, config file and flags (in increasing priority)."""
    opts = dict(DEFAULTS)
    if args.config:
        try:
            with open(args.config) as fh:
                config = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read config: {exc}") from None
        if not isinstance(config, dict):
            raise UsageError("config must be a JSON object")
        for key, value in config.items():
            name = key.replace("-", "_")
            if name not in OPTIONS:
                raise UsageError(f"unknown config key {key!r}")
            opts[name] = value
    for name in OPTIONS:
        value = getattr(args, name)
        if value is not None:
            opts[name] = value
    try:
        _validate(opts)
    except TypeError:
        raise UsageError("an option has a value of the wrong type") from None
    return opts


def _validate(opts: Dict[str, Any]) -> None:
    lam = opts["lambda"]
    if not isinstance(lam, (int, float)) or not 0.0 < lam <= 1.0:
        raise UsageError("--lambda must lie in (0, 1]")
    if not 0.0 < opts["r"] < 1.0:
        raise UsageError("--r must lie in (0, 1)")
    if not 0.0 < opts["rmax"] < 1.0:
        raise UsageError("--rmax must lie in (0, 1)")
    if opts["format"] not in (None, "json", "csv"):
        raise UsageError("--format must be json or csv")
    if opts["class"] not in ("U", "M", "starlike"):
        raise UsageError("--class must be U, M or starlike")
    if opts["sign"] not in (-1, 0, 1):
        raise UsageError("--sign must be -1, 0 (both) or 1")
    for key in ("mu", "alpha"):
        value = opts[key]
        if isinstance(value, (int, float)):
            value = [value]
        if not (isinstance(value, (list, tuple)) and len(value) in (1, 2)):
            raise UsageError(f"--{key} needs one or two numbers (real and imaginary part)")
        opts[key] = [float(value[0]), float(value[1]) if len(value) == 2 else 0.0]
    for key in ("order", "grid_radii", "grid_angles", "resolution"):
        if opts[key] < 1:
            raise UsageError(f"--{key.replace('_', '-')} must be positive")
    if opts["tol"] is not None and opts["tol"] < 0:
        raise UsageError("--tol must be nonnegative")


def _complex(pair) -> complex:
    return complex(float(pair[0]), float(pair[1]))


def _load_json(path: str) -> dict:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read {path}: {exc}") from None
    if not isinstance(data, dict):
        raise UsageError(f"{path} must contain a JSON object")
    return data


def load_spec(opts: Dict[str, Any], default: Optional[fm.FunctionSpec] = None) -> fm.FunctionSpec:
    if opts["spec"] is None:
        if default is None:
            raise UsageError("--spec is required for this command")
        return default
    data = _load_json(opts["spec"])
    try:
        return fm.spec_from_dict(data)
    except UnivalentError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"invalid function spec: {exc}") from None


def load_meromorphic(opts: Dict[str, Any]) -> me.MeromorphicSeries:
    """A ``{"b": ...}`` file, or a disk spec transferred by ``g = 1/f(1/zeta)``."""
    if opts["spec"] is None:
        raise UsageError("--spec is required for this command")
    data = _load_json(opts["spec"])
    if "b" in data and "kind" not in data:
        try:
            return me.MeromorphicSeries.from_dict(data)
        except (TypeError, ValueError) as exc:
            raise UsageError(f"invalid meromorphic series: {exc}") from None
    spec = load_spec(opts)
    return me.from_disk(spec.series(opts["order"]))


def _grid(opts: Dict[str, Any]) -> DiskGrid:
    return DiskGrid.default(rmax=opts["rmax"], n_radii=opts["grid_radii"], n_angles=opts["grid_angles"])


# commands -------------------------------------------------------------------

def cmd_deviation(opts):
    spec = load_spec(opts)
    lam = opts["lambda"]
    tol = orc.VERDICT_TOL if opts["tol"] is None else opts["tol"]
    if opts["class"] == "starlike":
        return {"min_re": orc.starlike_min_re(spec, _grid(opts)), "grid": _grid(opts).describe()}
    if opts["class"] == "M":
        out = orc.m_deviation(spec, lam=lam, tol=tol).to_dict()
    else:
        out = orc.u_deviation(spec, _grid(opts), lam=lam, tol=tol).to_dict()
    out["lambda"] = lam
    return out


def _mean_row(spec, opts, value, bound, n, p):
    return {"family": spec.kind, "lambda": opts["lambda"], "n": n, "p": p, "r": opts["r"],
            "value": value, "bound": bound, "gap": bound - value}


def cmd_mean(opts):
    spec = load_spec(opts, fm.Koebe())
    nodes = opts["nodes"] or ex.DEFAULT_NODES
    n, p, r = opts["n"], opts["p"], opts["r"]
    value = ex.integral_mean(spec, n, p, r, nodes).value
    # k_lambda dominates for n = 0; derivatives are compared with Koebe
    ref = fm.KLambda(opts["lambda"]) if n == 0 else fm.Koebe()
    bound = ex.integral_mean(ref, n, p, r, nodes).value
    return _mean_row(spec, opts, value, bound, n, p)


def cmd_arclength(opts):
    spec = load_spec(opts, fm.Koebe())
    nodes = opts["nodes"] or ex.DEFAULT_NODES
    value = ex.arc_length(spec, opts["r"], nodes)
    bound = ex.arc_length(fm.Koebe(), opts["r"], nodes)
    return _mean_row(spec, opts, value, bound, 1, 1.0)


def cmd_norm(opts):
    lam, alpha = opts["lambda"], _complex(opts["alpha"])
    closed = tr.norm_J_klambda_closed(lam, alpha)
    base = load_spec(opts, fm.KLambda(lam))
    est = tr.norm_numeric(fm.JAlpha(base, alpha), tol=opts["tol"] or 1e-10)
    return {"closed": closed, "numeric": est.value, "gap": closed - est.value,
            "method": est.method, "argmax": est.to_dict()["argmax"]}


def cmd_fs(opts):
    lam, mu = opts["lambda"], _complex(opts["mu"])
    out = {"bound": ex.fs_bound(lam, mu), "search": ex.fs_search(lam, mu, opts["resolution"]),
           "lambda": lam, "mu": [mu.real, mu.imag]}
    if opts["spec"] is not None:
        out["value"] = ex.fekete_szego_value(load_spec(opts).series(opts["order"]), mu)
    return out


def cmd_star(opts):
    spec = load_spec(opts)
    lam, r = opts["lambda"], opts["r"]
    nodes = opts["nodes"] or ex.STAR_NODES
    signs = (1, -1) if opts["sign"] == 0 else (opts["sign"],)
    out = {"lambda": lam, "r": r, "nodes": nodes}
    for sign in signs:
        holds, violation = ex.star_dominance(spec, lam, r, sign, nodes)
        concave = ex.star_samples(spec, r, sign, nodes).is_concave()
        out["plus" if sign > 0 else "minus"] = {"holds": holds, "violation": violation, "concave": concave}
    return out


def cmd_curve(opts):
    lam = opts["lambda"]
    count = opts["nodes"] or 720
    theta = 2 * np.pi * (np.arange(count) + 0.5) / count
    u, v = orc.phi_boundary(lam, theta)
    return [{"theta": float(t), "u": float(a), "v": float(b)} for t, a, b in zip(theta, u, v)]


def cmd_area(opts):
    g = load_meromorphic(opts)
    ok, s = me.coefficient_area_bound(g, opts["lambda"])
    return {"area": me.area_omitted(g), "sum": s, "lambda": opts["lambda"], "bound_holds": ok}


def cmd_coeffs(opts):
    spec = load_spec(opts)
    series = fm.series_of(spec, opts["order"])
    return {"coeffs": series.to_dict()["coeffs"], "max_ratio": ex.coeff_bound_check(series),
            "order": series.order}


def cmd_extreme(opts):
    g = load_meromorphic(opts)
    lam = opts["lambda"]
    tol = me.EXTREME_TOL if opts["tol"] is None else opts["tol"]
    return {"candidate": me.is_extreme_candidate(g, lam, tol), "sum": g.area_sum(), "target": lam * lam,
            "lambda": lam}


def cmd_report(opts):
    results = acceptance.run_all(opts["seed"])
    return {"seed": opts["seed"], "passed": all(r.passed for r in results),
            "criteria": [r.to_dict() for r in results]}


HANDLERS = {name: globals()["cmd_" + name] for name in COMMANDS}


def render(command: str, result, fmt: str) -> str:
    if fmt == "json":
        return dumps(result) + "\n"
    if command in ("mean", "arclength"):
        return to_csv(CSV_MEAN_COLUMNS, [result])
    if command == "curve":
        return to_csv(("theta", "u", "v"), result)
    if command == "coeffs":
        rows = [{"n": k, "re": c[0], "im": c[1]} for k, c in enumerate(result["coeffs"])]
        return to_csv(("n", "re", "im"), rows)
    if command == "report":
        rows = [{"criterion": c["number"], "title": c["title"], "passed": str(c["passed"]).lower()}
                for c in result["criteria"]]
        return to_csv(("criterion", "title", "passed"), rows)
    flat = {k: v for k, v in result.items() if not isinstance(v, (dict, list))}
    return to_csv(tuple(sorted(flat)), [flat])


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse reports usage errors with code 2
        return int(exc.code or 0)
    try:
        opts = resolve(args)
        result = HANDLERS[args.command](opts)
        # curve samples are tabular, so CSV is their default
        fmt = opts["format"] or ("csv" if args.command == "curve" else "json")
        text = render(args.command, result, fmt)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except UnivalentError as exc:
        print(f"domain error ({type(exc).__name__}): {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if opts["out"]:
        with open(opts["out"], "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if args.command == "report":
        for crit in result["criteria"]:
            status = "PASS" if crit["passed"] else "FAIL"
            print(f"[{status}] criterion {crit['number']}: {crit['title']}", file=sys.stderr)
        return 0 if result["passed"] else 1
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
