"""Command-line surface: qig {sweep, bb84, verify, scan}.

Exit codes: 0 success, 2 usage error, 3 validation error, 4 numerical
error, 5 conjecture counterexample found (scan only). Tabular output is
comma-separated with 12 significant digits; the structured format is JSON
carrying the same columns and rows. Identical inputs produce byte-identical
output.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np

from qig import io, scenarios
from qig.errors import NumericalError, UsageError, ValidationError
from qig.scenarios import ScanResult, SweepResult, SweepSpec, VerificationReport

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_VALIDATION = 3
EXIT_NUMERICAL = 4
EXIT_COUNTEREXAMPLE = 5


@dataclass
class GridSpec:
    gmin: float
    gmax: float
    points: int
    spacing: str = "linear"

    def values(self) -> np.ndarray:
        if self.points < 2:
            raise ValidationError("grid needs at least 2 points")
        if self.gmax <= self.gmin:
            raise ValidationError("--gmax must exceed --gmin")
        if self.spacing == "linear":
            return np.linspace(self.gmin, self.gmax, self.points)
        if self.spacing == "log":
            if self.gmin <= 0.0:
                raise ValidationError("log spacing requires --gmin > 0")
            return np.geomspace(self.gmin, self.gmax, self.points)
        raise ValidationError(f"unknown spacing {self.spacing!r}")


@dataclass
class RunConfig:
    command: str
    ensemble_path: str | None = None
    grid: GridSpec | None = None
    delta: float = 1.0
    trials: int = 1000
    seed: int = 0
    out: str | None = None
    format: str = "table"
    quantities: tuple[str, ...] | None = None
    workers: int = 1


def _add_grid_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--gmin", type=float, default=0.0, help="grid start, in g/delta units")
    sub.add_argument("--gmax", type=float, default=5.0, help="grid end, in g/delta units")
    sub.add_argument("--points", type=int, default=101, help="number of grid points")
    sub.add_argument("--spacing", choices=("linear", "log"), default="linear")
    sub.add_argument("--delta", type=float, default=1.0, help="pointer spread")


def _add_output_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--out", type=str, default=None, help="output file (default: stdout)")
    sub.add_argument("--format", choices=("table", "structured"), default="table")


def _add_config_flag(sub: argparse.ArgumentParser) -> None:
    sub.add_argument(
        "--config",
        type=str,
        default=None,
        help="JSON file of flag defaults; explicit flags override it",
    )


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qig",
        description="Information gain of finite-strength Gaussian-pointer measurements",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_sweep = sub.add_parser("sweep", help="evaluate gain curves for an ensemble file")
    p_sweep.add_argument("--ensemble", type=str, required=True, help="ensemble JSON file")
    p_sweep.add_argument(
        "--quantities",
        type=str,
        default=None,
        help="comma list from {I_a_z,I_a_x,chi,complementarity_rhs,I_p}",
    )
    p_sweep.add_argument("--workers", type=int, default=1)
    _add_grid_flags(p_sweep)
    _add_output_flags(p_sweep)
    _add_config_flag(p_sweep)

    p_bb84 = sub.add_parser("bb84", help="closed-form BB84 gain curves")
    _add_grid_flags(p_bb84)
    _add_output_flags(p_bb84)
    _add_config_flag(p_bb84)

    p_verify = sub.add_parser("verify", help="random monotonicity/bound campaign")
    p_verify.add_argument("--trials", type=int, default=None)
    p_verify.add_argument("--seed", type=int, default=None)
    p_verify.add_argument("--workers", type=int, default=1)
    p_verify.add_argument("--out", type=str, default=None)
    _add_config_flag(p_verify)

    p_scan = sub.add_parser("scan", help="measure the chi complementarity margin")
    p_scan.add_argument("--trials", type=int, default=None)
    p_scan.add_argument("--seed", type=int, default=None)
    p_scan.add_argument("--workers", type=int, default=1)
    _add_grid_flags(p_scan)
    p_scan.add_argument("--out", type=str, default=None)
    _add_config_flag(p_scan)
    return parser


def parse_config(argv: Sequence[str], config: dict | None = None) -> RunConfig:
    """Parse flags (plus optional config-document defaults) into a RunConfig.

    The config document, whether passed here or via --config, supplies
    defaults only; explicit flags always win.
    """
    parser = _build_parser()
    ns = parser.parse_args(list(argv))

    file_doc: dict = dict(config or {})
    if ns.config:
        try:
            loaded = json.loads(Path(ns.config).read_text())
        except FileNotFoundError:
            raise ValidationError(f"config file not found: {ns.config}") from None
        except json.JSONDecodeError as exc:
            raise ValidationError(f"malformed JSON in config file: {exc}") from None
        if not isinstance(loaded, dict):
            raise ValidationError("config document must be a JSON object")
        file_doc.update(loaded)
    unknown = set(file_doc) - {
        "ensemble", "gmin", "gmax", "points", "spacing", "delta",
        "trials", "seed", "out", "format", "quantities", "workers",
    }
    if unknown:
        raise ValidationError(f"unknown config keys: {sorted(unknown)}")

    def pick(flag: str, default):
        value = getattr(ns, flag, None)
        if value is not None and _flag_given(argv, flag):
            return value
        if flag in file_doc:
            return file_doc[flag]
        return value if value is not None else default

    cfg = RunConfig(command=ns.command)
    grid_flags = ("gmin", "gmax", "points", "spacing")
    grid_given = any(_flag_given(argv, k) for k in grid_flags) or any(
        k in file_doc for k in grid_flags
    )
    if ns.command == "sweep":
        cfg.ensemble_path = pick("ensemble", None)
        quantities = pick("quantities", None)
        if isinstance(quantities, str):
            cfg.quantities = tuple(q.strip() for q in quantities.split(",") if q.strip())
        elif quantities:
            cfg.quantities = tuple(quantities)
        cfg.workers = int(pick("workers", 1))
    if ns.command in ("sweep", "bb84", "scan"):
        grid = GridSpec(
            gmin=float(pick("gmin", 0.0)),
            gmax=float(pick("gmax", 5.0)),
            points=int(pick("points", 101)),
            spacing=str(pick("spacing", "linear")),
        )
        # scan defaults to the 61-point campaign grid unless one was asked for
        cfg.grid = grid if (ns.command != "scan" or grid_given) else None
        cfg.delta = float(pick("delta", 1.0))
    if ns.command in ("sweep", "bb84"):
        cfg.format = str(pick("format", "table"))
        cfg.out = pick("out", None)
    if ns.command in ("verify", "scan"):
        trials = pick("trials", None)
        seed = pick("seed", None)
        if trials is None:
            raise UsageError(f"{ns.command} requires --trials")
        if seed is None:
            raise UsageError(f"{ns.command} requires --seed")
        cfg.trials = int(trials)
        cfg.seed = int(seed)
        cfg.workers = int(pick("workers", 1))
        cfg.out = pick("out", None)
        if cfg.trials < 1:
            raise ValidationError("--trials must be >= 1")
    return cfg


def _flag_given(argv: Sequence[str], flag: str) -> bool:
    token = "--" + flag.replace("_", "-")
    alt = "--" + flag
    return any(a == token or a == alt or a.startswith(token + "=") or a.startswith(alt + "=")
               for a in argv)


def emit_rows(rows: Sequence[Sequence[float]], columns: Sequence[str],
              fmt: str, dest) -> None:
    """Write rows as the fixed table format or its structured JSON mirror.

    Table: one header line, comma-separated 12-significant-digit values,
    newline-terminated. Structured: {"columns": [...], "rows": [[...]]}
    with identically formatted numbers. Identical input gives identical
    bytes. Empty input is an error and writes nothing.
    """
    rows = list(rows)
    if not rows:
        raise ValidationError("no rows to emit")
    formatted = [[io.format_value(v) for v in row] for row in rows]
    if fmt == "table":
        text = ",".join(columns) + "\n"
        text += "".join(",".join(cells) + "\n" for cells in formatted)
    elif fmt == "structured":
        cols = json.dumps(list(columns))
        body = ",\n    ".join("[" + ", ".join(cells) + "]" for cells in formatted)
        text = '{\n  "columns": ' + cols + ',\n  "rows": [\n    ' + body + "\n  ]\n}\n"
    else:
        raise ValidationError(f"unknown output format {fmt!r}")
    if isinstance(dest, (str, Path)):
        with open(dest, "w", newline="\n") as fh:
            fh.write(text)
    else:
        dest.write(text)


def _emit_result(result: SweepResult, cfg: RunConfig) -> None:
    dest = cfg.out if cfg.out is not None else sys.stdout
    emit_rows(result.rows, result.columns, cfg.format, dest)


def _cmd_sweep(cfg: RunConfig) -> int:
    if not cfg.ensemble_path:
        raise ValidationError("sweep requires --ensemble")
    ensemble, obs = io.load_ensemble(cfg.ensemble_path)
    quantities = cfg.quantities
    if quantities is None:
        if ensemble.dim == 2:
            quantities = scenarios.QUANTITY_ORDER
        else:
            quantities = ("I_a_z", "chi", "I_p")
    spec = SweepSpec(
        g_over_delta_grid=tuple(cfg.grid.values()),
        delta=cfg.delta,
        quantities=quantities,
    )
    result = scenarios.sweep(ensemble, spec, obs=obs, workers=cfg.workers)
    _emit_result(result, cfg)
    return EXIT_OK


def _cmd_bb84(cfg: RunConfig) -> int:
    grid = cfg.grid.values()
    rows = []
    for g_over_delta in grid:
        iaz, iax = scenarios.bb84_closed_forms(float(g_over_delta) * cfg.delta, cfg.delta)
        rows.append((float(g_over_delta), iaz, iax))
    _emit_result(SweepResult(columns=("g_over_delta", "I_a_z", "I_a_x"), rows=tuple(rows)), cfg)
    return EXIT_OK


def _write_report(text: str, out: str | None, summary: str) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", newline="\n") as fh:
            fh.write(text)
        sys.stdout.write(summary)


def _cmd_verify(cfg: RunConfig) -> int:
    report: VerificationReport = scenarios.verify_random(
        cfg.trials, cfg.seed, workers=cfg.workers
    )
    summary = (
        f"verify: trials={report.trials} seed={report.seed} "
        f"violations={len(report.violations)} "
        f"conjecture_min_margin={report.conjecture_min_margin!r}\n"
    )
    _write_report(report.to_json(), cfg.out, summary)
    return EXIT_OK


def _cmd_scan(cfg: RunConfig) -> int:
    g_grid = cfg.grid.values() if cfg.grid is not None else None
    result: ScanResult = scenarios.conjecture_scan(
        cfg.trials, cfg.seed, g_grid=g_grid, delta=cfg.delta,
        workers=cfg.workers,
    )
    summary = (
        f"scan: trials={result.trials} seed={result.seed} "
        f"min_margin={result.min_margin!r} "
        f"counterexample={'yes' if result.counterexample_found else 'no'}\n"
    )
    _write_report(result.to_json(), cfg.out, summary)
    if result.counterexample_found:
        sys.stderr.write(
            "counterexample: chi margin "
            f"{result.min_margin!r} at trial {result.argmin.get('trial')}, "
            f"g/delta {result.argmin.get('g_over_delta')!r}; "
            "ensemble serialized in the report\n"
        )
        return EXIT_COUNTEREXAMPLE
    return EXIT_OK


_COMMANDS = {
    "sweep": _cmd_sweep,
    "bb84": _cmd_bb84,
    "verify": _cmd_verify,
    "scan": _cmd_scan,
}


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        cfg = parse_config(argv)
        return _COMMANDS[cfg.command](cfg)
    except UsageError as exc:
        sys.stderr.write(f"qig: usage error: {exc}\n")
        return EXIT_USAGE
    except ValidationError as exc:
        sys.stderr.write(f"qig: validation error: {exc}\n")
        return EXIT_VALIDATION
    except NumericalError as exc:
        sys.stderr.write(f"qig: numerical error: {exc}\n")
        return EXIT_NUMERICAL
    except OSError as exc:
        sys.stderr.write(f"qig: i/o error: {exc}\n")
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
