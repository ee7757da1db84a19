"""Command-line front end.

    instantons curve "x^2 - y^7" -j 4
    instantons bundle "z*u^2" -j 2
    instantons classical "x^3 - x^2*y + y^3"
    instantons strata -j 3 --samples 200 --seed 7
    instantons tables --format csv --output-dir out/

Exit codes: 0 success, 2 bad input, 3 solver could not certify a result,
4 recomputed tables disagree with the reference values.
"""

from __future__ import annotations

import argparse
import configparser
import logging
import sys
from dataclasses import dataclass
from pathlib import Path

from . import report as rpt
from .bundle import canonicalize, from_curve, splitting_depth
from .cohomology import Schedule, instanton_numbers
from .errors import InputError, InstantonError, SolverError, TableMismatch
from .parsing import to_poly
from .singularities import CurveGerm, classical_invariants
from .strata import DEFAULT_GRID_CAP, SweepSpec, sweep

EXIT_OK, EXIT_INPUT, EXIT_SOLVER, EXIT_MISMATCH = 0, 2, 3, 4

DEFAULT_SAMPLES = 200
TABLE_J = 4

# reference values at j = 4
TABLES = {
    "I": {
        "columns": ["polynomial", "delta", "mu", "tau", "w", "h"],
        "rows": [
            ["x^5*y - y^4", 9, 17, 17, 10, 6],
            ["x^8 - x^5*y^2 - x^3*y^2 + y^4", 9, 17, 15, 8, 6],
        ],
    },
    "II": {
        "columns": ["polynomial", "delta", "mu", "tau", "w", "h"],
        "rows": [
            ["x^2 - y^7", 3, 6, 6, 3, 5],
            ["x^3 - y^4", 3, 6, 6, 6, 6],
        ],
    },
    "III": {
        "columns": ["polynomial", "mult", "delta", "mu", "tau", "w", "h", "charge"],
        "rows": [
            ["x^3 - x^2*y + y^3", 3, 3, 4, 4, 4, 3, 7],
            ["x^3 - x^2*y^2 + y^3", 3, 3, 4, 4, 5, 3, 8],
        ],
    },
}


@dataclass
class RunConfig:
    j: int | None = None
    poly: str | None = None
    grid: bool = False
    samples: int | None = None
    seed: int = 0
    format: str = "json"
    max_window: int | None = None
    grid_cap: int = DEFAULT_GRID_CAP
    workers: int = 1
    output_dir: str | None = None

    @property
    def schedule(self) -> Schedule:
        return Schedule(self.max_window)


_CONFIG_TYPES = {
    "j": int,
    "poly": str,
    "grid": "bool",
    "samples": int,
    "seed": int,
    "format": str,
    "max_window": int,
    "grid_cap": int,
    "workers": int,
    "output_dir": str,
}


def read_config(path: str) -> dict:
    """Flat ``key = value`` file; ``-`` and ``_`` are interchangeable in keys."""
    parser = configparser.ConfigParser(interpolation=None)
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read config {path}: {exc.strerror}") from exc
    try:
        parser.read_string("[run]\n" + text, source=path)
    except configparser.Error as exc:
        raise InputError(f"malformed config {path}: {exc}") from exc
    out = {}
    for key, raw in parser["run"].items():
        name = key.replace("-", "_")
        kind = _CONFIG_TYPES.get(name)
        if kind is None:
            raise InputError(f"unknown config key {key!r} in {path}")
        try:
            out[name] = parser["run"].getboolean(key) if kind == "bool" else kind(raw.strip())
        except ValueError as exc:
            raise InputError(f"bad value for {key!r} in {path}: {raw!r}") from exc
    return out


def _nat(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {text!r}")
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {text!r}")
    return v


def _seed(text: str) -> int:
    v = _nat(text)
    if v >= 2**64:
        raise argparse.ArgumentTypeError("seed must fit in 64 bits")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-j", type=_nat, default=argparse.SUPPRESS, help="splitting type")
    common.add_argument("--poly", default=argparse.SUPPRESS, help="polynomial (alternative to the positional argument)")
    common.add_argument("--format", choices=("json", "csv", "table"), default=argparse.SUPPRESS)
    common.add_argument("--config", help="flat key = value file; flags override it")
    common.add_argument("--max-window", type=_nat, default=argparse.SUPPRESS, dest="max_window",
                        help="largest i_max the stabilization schedule may reach")
    common.add_argument("-v", "--verbose", action="store_true")

    ap = argparse.ArgumentParser(prog="instantons", description="Local instanton numbers of bundles and curve singularities.")
    sub = ap.add_subparsers(dest="command", required=True)

    for name, helptext in (
        ("curve", "classical invariants and instanton numbers of a curve germ f(x, y)"),
        ("bundle", "instanton numbers of E(j, p) for p in z, u"),
        ("classical", "multiplicity, delta, Milnor and Tjurina numbers, branches"),
    ):
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("poly_arg", nargs="?", metavar="POLY")

    s = sub.add_parser("strata", parents=[common], help="sweep the coefficient space and bin by (w, h)")
    s.add_argument("--grid", action="store_true", default=argparse.SUPPRESS, help="exhaustive grid over {-1, 0, 1}")
    s.add_argument("--samples", type=_nat, default=argparse.SUPPRESS, help="random samples")
    s.add_argument("--seed", type=_seed, default=argparse.SUPPRESS)
    s.add_argument("--grid-cap", type=_nat, default=argparse.SUPPRESS, dest="grid_cap")
    s.add_argument("--workers", type=_nat, default=argparse.SUPPRESS)

    t = sub.add_parser("tables", parents=[common], help="recompute the reference tables at j = 4 and diff them")
    t.add_argument("--output-dir", default=argparse.SUPPRESS, dest="output_dir", help="where csv files go (default: .)")
    return ap


def resolve_config(args: argparse.Namespace) -> RunConfig:
    values = read_config(args.config) if args.config else {}
    for key in _CONFIG_TYPES:
        if key in vars(args):
            values[key] = getattr(args, key)
    if getattr(args, "poly_arg", None) is not None:
        if "poly" in vars(args):
            raise InputError("give the polynomial either positionally or with --poly, not both")
        values["poly"] = args.poly_arg
    cfg = RunConfig(**values)
    if cfg.format not in ("json", "csv", "table"):
        raise InputError(f"unknown format {cfg.format!r}")
    return cfg


def _need_poly(cfg: RunConfig) -> str:
    if cfg.poly is None:
        raise InputError("missing polynomial")
    return cfg.poly


def _need_j(cfg: RunConfig) -> int:
    if cfg.j is None:
        raise InputError("missing -j")
    return cfg.j


# --------------------------------------------------------------------------
# commands; each returns (report, header, rows)


def cmd_classical(cfg: RunConfig):
    src = _need_poly(cfg)
    g = CurveGerm(to_poly(src, "xy"))
    ci = classical_invariants(g)
    results = {
        "polynomial": g.f.format(("x", "y")),
        "multiplicity": ci.multiplicity,
        "delta": ci.delta,
        "milnor": ci.milnor,
        "tjurina": ci.tjurina,
        "branches": ci.branches,
    }
    return rpt.envelope("classical", {"poly": src}, results), list(results), [list(results.values())]


def cmd_curve(cfg: RunConfig):
    src, j = _need_poly(cfg), _need_j(cfg)
    if j < 1:
        raise InputError("curve needs j >= 1")
    g = CurveGerm(to_poly(src, "xy"))
    ci = classical_invariants(g)
    d = from_curve(g.f, j)
    n = instanton_numbers(d, cfg.schedule)
    results = {
        "polynomial": g.f.format(("x", "y")),
        "j": j,
        "canonicalP": d.format(),
        "multiplicity": ci.multiplicity,
        "delta": ci.delta,
        "milnor": ci.milnor,
        "tjurina": ci.tjurina,
        "branches": ci.branches,
        "width": n.width,
        "height": n.height,
        "charge": n.charge,
    }
    inputs = {"poly": src, "j": j, "maxWindow": cfg.max_window}
    return rpt.envelope("curve", inputs, results, rpt.window_pair(n)), list(results), [list(results.values())]


def cmd_bundle(cfg: RunConfig):
    src, j = _need_poly(cfg), _need_j(cfg)
    d = canonicalize(j, to_poly(src, "zu"))
    n = instanton_numbers(d, cfg.schedule)
    results = {
        "j": j,
        "canonicalP": d.format(),
        "coefficients": [rpt.rational(c) for c in d.coefficients().coeffs],
        "splittingDepth": splitting_depth(d),
        "width": n.width,
        "height": n.height,
        "charge": n.charge,
    }
    inputs = {"poly": src, "j": j, "maxWindow": cfg.max_window}
    row = [" ".join(v) if isinstance(v, list) else v for v in results.values()]
    return rpt.envelope("bundle", inputs, results, rpt.window_pair(n)), list(results), [row]


def cmd_strata(cfg: RunConfig):
    j = _need_j(cfg)
    if j < 1:
        raise InputError("strata needs j >= 1")
    if cfg.grid and cfg.samples is not None:
        raise InputError("choose either --grid or --samples")
    spec = SweepSpec(j, "grid", grid_cap=cfg.grid_cap, schedule=cfg.schedule, workers=max(cfg.workers, 1))
    if cfg.samples is not None or (not cfg.grid and spec.grid_size > cfg.grid_cap):
        n = DEFAULT_SAMPLES if cfg.samples is None else cfg.samples
        spec = SweepSpec(j, "random", sample_count=n, seed=cfg.seed, schedule=cfg.schedule, workers=spec.workers)
    records = sweep(spec)
    results = [
        {
            "width": r.width,
            "height": r.height,
            "charge": r.charge,
            "sampleCount": r.sample_count,
            "representatives": [[rpt.rational(c) for c in rep.coeffs] for rep in r.representatives],
        }
        for r in records
    ]
    inputs = {
        "j": j,
        "mode": spec.mode,
        "coefficientSet": [rpt.rational(c) for c in spec.coefficient_set] if spec.mode == "grid" else None,
        "samples": spec.sample_count if spec.mode == "random" else spec.grid_size,
        "seed": spec.seed if spec.mode == "random" else None,
        "gridCap": spec.grid_cap,
        "maxWindow": cfg.max_window,
    }
    header = ["width", "height", "charge", "sampleCount", "representative"]
    rows = [
        [r["width"], r["height"], r["charge"], r["sampleCount"], " ".join(r["representatives"][0]) if r["representatives"] else ""]
        for r in results
    ]
    return rpt.envelope("strata", inputs, results), header, rows


def compute_tables(schedule: Schedule) -> tuple[dict, dict, list[str]]:
    """Recomputed tables, their certifying windows, and cell-level diffs."""
    computed = {}
    windows = {}
    diffs = []
    for name, spec in TABLES.items():
        rows = []
        for expected in spec["rows"]:
            src = expected[0]
            g = CurveGerm(to_poly(src, "xy"))
            ci = classical_invariants(g)
            n = instanton_numbers(from_curve(g.f, TABLE_J), schedule)
            cells = {
                "polynomial": src,
                "mult": ci.multiplicity,
                "delta": ci.delta,
                "mu": ci.milnor,
                "tau": ci.tjurina,
                "w": n.width,
                "h": n.height,
                "charge": n.charge,
            }
            row = [cells[c] for c in spec["columns"]]
            rows.append(row)
            windows[src] = rpt.window_pair(n)
            for col, want, got in zip(spec["columns"], expected, row):
                if want != got:
                    diffs.append(f"table {name}, {src}, {col}: expected {want}, got {got}")
        computed[name] = rows
    return computed, windows, diffs


def cmd_tables(cfg: RunConfig):
    computed, windows, diffs = compute_tables(cfg.schedule)
    results = {
        "tables": [
            {"name": name, "j": TABLE_J, "columns": TABLES[name]["columns"], "rows": rows}
            for name, rows in computed.items()
        ],
        "diffs": diffs,
        "match": not diffs,
    }
    inputs = {"j": TABLE_J, "maxWindow": cfg.max_window}
    return rpt.envelope("tables", inputs, results, windows), None, None


COMMANDS = {
    "classical": cmd_classical,
    "curve": cmd_curve,
    "bundle": cmd_bundle,
    "strata": cmd_strata,
    "tables": cmd_tables,
}


def render(report: dict, header, rows, cfg: RunConfig, out) -> None:
    if cfg.format == "json":
        out.write(rpt.to_json(report))
        return
    if report["command"] == "tables":
        tables = report["results"]["tables"]
        if cfg.format == "csv":
            target = Path(cfg.output_dir or ".")
            target.mkdir(parents=True, exist_ok=True)
            for t in tables:
                path = target / f"table_{t['name']}.csv"
                path.write_text(rpt.to_csv(t["columns"], t["rows"]), encoding="utf-8", newline="")
                out.write(f"{path}\n")
        else:
            out.write("\n".join(rpt.to_table(t["columns"], t["rows"], f"table {t['name']} (j = {t['j']})") for t in tables))
        return
    if cfg.format == "csv":
        out.write(rpt.to_csv(header, rows))
    else:
        out.write(rpt.to_table(header, rows))


def main(argv: list[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.ERROR, format="%(levelname)s %(name)s: %(message)s")
    try:
        cfg = resolve_config(args)
        report, header, rows = COMMANDS[args.command](cfg)
        render(report, header, rows, cfg, out)
        if report["command"] == "tables" and report["results"]["diffs"]:
            raise TableMismatch(report["results"]["diffs"])
    except TableMismatch as exc:
        for line in exc.diffs:
            err.write(f"mismatch: {line}\n")
        return EXIT_MISMATCH
    except InputError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_INPUT
    except SolverError as exc:
        err.write(f"solver error ({type(exc).__name__}): {exc}\n")
        return EXIT_SOLVER
    except InstantonError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_SOLVER
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
