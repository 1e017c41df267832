"""Command-line interface.

Geometry is chosen with exactly one of ``--area X --a Y`` (``b = a``,
``v0 = X/(2a)``), ``--a A --b B --v0 V`` or ``--delta G``. A ``--config``
file of ``key=value`` lines accepts the same keys as the long flags; flags
win over file values.

Exit codes: 0 ok, 1 validation failure, 2 bad configuration, 3 numerical
failure, 4 requested feature not found.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

import numpy as np

from semiharmonic import scattering, spectra, timing, validation
from semiharmonic.errors import BracketError, NumericalError, SemiHarmonicError
from semiharmonic.model import WellConfig, delta_config, unit_area_symmetric

EXIT_OK, EXIT_VALIDATION, EXIT_CONFIG, EXIT_NUMERICAL, EXIT_NOT_FOUND = 0, 1, 2, 3, 4
WORKERS_ENV = "SEMIHARMONIC_WORKERS"
CONFIG_KEYS = {"area", "a", "b", "v0", "delta", "emin", "emax", "n0", "out", "format"}
DEFAULT_WINDOWS = {"phase": (0.001, 1.0), "delay": (0.005, 1.0), "ea": (0.001, 1.0)}


class ConfigError(SemiHarmonicError, ValueError):
    pass


def fmt(x: float) -> str:
    return format(float(x), ".17g")


def _add_geometry(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("geometry")
    g.add_argument("--area", type=float, help="well area (with --a: b = a, v0 = area/(2a))")
    g.add_argument("--a", type=float, help="left half-width")
    g.add_argument("--b", type=float, help="right edge (raw geometry)")
    g.add_argument("--v0", type=float, help="well depth (raw geometry)")
    g.add_argument("--delta", type=float, metavar="G", help="delta well of strength G")
    p.add_argument("--config", type=Path, help="key=value file with the same keys as the flags")


def _add_window(p: argparse.ArgumentParser) -> None:
    p.add_argument("--emin", type=float)
    p.add_argument("--emax", type=float)
    p.add_argument("--n0", type=int, help="initial number of grid points (default 400)")


def _add_output(p: argparse.ArgumentParser) -> None:
    p.add_argument("--out", type=Path, help="output file (default: stdout)")
    p.add_argument("--format", choices=("csv", "json"))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="semiharmonic", description="Reflection from a one-dimensional semi-harmonic square well."
    )
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("phase", help="unwrapped reflection phase shift delta(E)")
    _add_geometry(p)
    _add_window(p)
    _add_output(p)

    p = sub.add_parser("delay", help="flight time, time delay and phase time on an energy grid")
    _add_geometry(p)
    _add_window(p)
    _add_output(p)

    p = sub.add_parser("ea", help="energy where the time delay changes sign")
    _add_geometry(p)
    _add_window(p)
    _add_output(p)

    p = sub.add_parser("bound", help="bound-state energies")
    _add_geometry(p)
    _add_output(p)

    p = sub.add_parser("validate", help="run the acceptance checks")
    p.add_argument("--only", choices=validation.GROUPS)
    p.add_argument("--json", type=Path, dest="json_path", help="write a machine-readable report")
    return parser


def read_config(path: Path) -> dict[str, str]:
    values = {}
    for n, raw in enumerate(path.read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key = key.strip().lstrip("-")
        if not sep or key not in CONFIG_KEYS:
            raise ConfigError(f"{path}:{n}: expected key=value with key in {sorted(CONFIG_KEYS)}")
        values[key] = value.strip()
    return values


def merge_config(args: argparse.Namespace) -> argparse.Namespace:
    if getattr(args, "config", None) is None:
        return args
    casts = {"n0": int, "out": Path, "format": str}
    for key, value in read_config(args.config).items():
        if hasattr(args, key) and getattr(args, key) is None:
            try:
                setattr(args, key, casts.get(key, float)(value))
            except ValueError as exc:
                raise ConfigError(f"bad value for {key}: {value!r}") from exc
    if getattr(args, "format", None) not in (None, "csv", "json"):
        raise ConfigError(f"format must be csv or json, got {args.format!r}")
    return args


def geometry(args: argparse.Namespace) -> WellConfig:
    given = {k for k in ("area", "a", "b", "v0", "delta") if getattr(args, k) is not None}
    if given == {"delta"}:
        return delta_config(args.delta)
    if given == {"area", "a"}:
        return unit_area_symmetric(args.a, args.area)
    if given == {"a", "b", "v0"}:
        return WellConfig(a=args.a, b=args.b, v0=args.v0)
    raise ConfigError("choose exactly one geometry: --area X --a Y | --a A --b B --v0 V | --delta G")


def window(args: argparse.Namespace) -> tuple[float, float, int]:
    lo, hi = DEFAULT_WINDOWS[args.command]
    e_min = lo if args.emin is None else args.emin
    e_max = hi if args.emax is None else args.emax
    n0 = 400 if args.n0 is None else args.n0
    if not 0 < e_min < e_max:
        raise ConfigError(f"energy window needs 0 < emin < emax, got ({e_min}, {e_max})")
    if n0 < 2:
        raise ConfigError(f"n0 must be at least 2, got {n0}")
    return e_min, e_max, n0


def emit(args: argparse.Namespace, columns: list[str], rows: list[list[float]]) -> None:
    if (args.format or "csv") == "json":
        text = json.dumps([dict(zip(columns, map(float, r))) for r in rows], indent=1) + "\n"
    else:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(columns)
        w.writerows([[fmt(x) for x in r] for r in rows])
        text = buf.getvalue()
    if args.out is None:
        sys.stdout.write(text)
    else:
        args.out.write_text(text)


def workers() -> int:
    try:
        return max(1, int(os.environ.get(WORKERS_ENV, "1")))
    except ValueError:
        return 1


def _delay_row(item):
    cfg, e = item
    s = timing.tau_w(cfg, e)
    return [s.e, s.tau_p, s.tau_e, s.tau_w]


def cmd_phase(args: argparse.Namespace) -> int:
    cfg = geometry(args)
    e_min, e_max, n0 = window(args)
    pts = scattering.phase_curve(cfg, e_min, e_max, n0)
    emit(args, ["E", "delta", "S_re", "S_im"], [[p.e, p.delta, p.s_re, p.s_im] for p in pts])
    return EXIT_OK


def cmd_delay(args: argparse.Namespace) -> int:
    cfg = geometry(args)
    e_min, e_max, n0 = window(args)
    items = [(cfg, float(e)) for e in np.linspace(e_min, e_max, n0)]
    n = workers()
    if n > 1:
        with ProcessPoolExecutor(max_workers=n) as pool:
            rows = list(pool.map(_delay_row, items, chunksize=max(1, len(items) // (4 * n))))
    else:
        rows = [_delay_row(it) for it in items]
    emit(args, ["E", "tau_p", "tau_e", "tau_w"], rows)
    return EXIT_OK


def cmd_ea(args: argparse.Namespace) -> int:
    cfg = geometry(args)
    e_min, e_max, n0 = window(args)
    try:
        e_a = timing.first_sign_change(cfg, e_min, e_max, n=max(n0 // 4, 60))
    except BracketError as exc:
        print(f"semiharmonic: {exc}", file=sys.stderr)
        return EXIT_NOT_FOUND
    a = 0.0 if cfg.is_delta else cfg.a
    if args.format == "json" or args.out is not None:
        if args.format == "json":
            text = json.dumps({"a": a, "E_a": e_a}) + "\n"
        else:
            text = f"a,E_a\n{fmt(a)},{fmt(e_a)}\n"
        if args.out is None:
            sys.stdout.write(text)
            return EXIT_OK
        args.out.write_text(text)
    print(f"{e_a:.8f}")
    return EXIT_OK


def cmd_bound(args: argparse.Namespace) -> int:
    cfg = geometry(args)
    states = spectra.bound_states(cfg)
    if args.format is not None or args.out is not None:
        if args.format == "json":
            text = json.dumps([{"n": s.index, "E": s.e} for s in states]) + "\n"
        else:
            text = "n,E\n" + "".join(f"{s.index},{fmt(s.e)}\n" for s in states)
        if args.out is None:
            sys.stdout.write(text)
            return EXIT_OK
        args.out.write_text(text)
    for s in states:
        print(f"{s.e:.10f}")
    return EXIT_OK


def _clean(obj):
    """Plain JSON types; non-finite floats become null."""
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, np.generic):
        obj = obj.item()
    if isinstance(obj, float) and not math.isfinite(obj):
        return None
    return obj


def cmd_validate(args: argparse.Namespace) -> int:
    results = []
    for key, (group, fn) in validation.CHECKS.items():
        if args.only is not None and group != args.only:
            continue
        res = fn()
        results.append(res)
        print(res.line(), flush=True)
    rep = validation.report(results)
    n_pass = sum(r.passed for r in results)
    print(f"{n_pass}/{len(results)} criteria passed")
    if args.json_path is not None:
        args.json_path.write_text(json.dumps(_clean(rep), indent=1) + "\n")
    return EXIT_OK if rep["passed"] else EXIT_VALIDATION


COMMANDS = {"phase": cmd_phase, "delay": cmd_delay, "ea": cmd_ea, "bound": cmd_bound, "validate": cmd_validate}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(name)s: %(message)s")
    try:
        args = merge_config(args)
        return COMMANDS[args.command](args)
    except (ValueError, OSError) as exc:
        print(f"semiharmonic: configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (NumericalError, ArithmeticError) as exc:
        print(f"semiharmonic: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
