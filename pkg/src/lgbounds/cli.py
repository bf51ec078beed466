"""Command-line entry point.

Subcommands: ``spin-demo`` (figure CSVs from the closed-form sweep),
``sweep`` (margin minima over a schedule grid), ``verify`` (seeded
Monte-Carlo suite, JSON report), ``search`` (compass-search extremum
hunting) and ``blg-demo`` (two-party worked example plus Monte-Carlo run).

Exit codes: 0 all bounds hold, 1 error, 2 a violation was found. Flags
override a flat ``key=value`` file given by ``--config``; unknown keys are
errors. ``LGBOUNDS_THREADS`` caps verification parallelism (0 = one worker
per CPU). Repeated runs with identical configuration produce byte-identical
outputs.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Sequence

import numpy as np

from .correlations import generalized_correlation
from .errors import InvalidConfig, IoError, LgboundsError
from .inequalities import TWO_SQRT_TWO, BlgCorrelations, theorem4_check
from .operators import PAULI_Z, make_hermitian, maximally_mixed, tensor_lift
from .schedule import MeasurementSchedule
from .search import (
    RandomInstanceConfig,
    blg_monte_carlo,
    grid_sweep,
    maximize_violation,
    monte_carlo_verify,
    objective_value,
    thread_count_from_env,
)
from .spinmodel import SweepGrid, grid_field_arrays

__all__ = ["RunConfig", "main"]

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_VIOLATION = 2

# Axis resolution of the coarse scan that seeds the compass search.
SEARCH_SCAN_STEPS = 9


@dataclass(frozen=True)
class RunConfig:
    """Fully resolved options for one run."""

    subcommand: str
    omega: float = 1.0
    grid_steps: int = 81
    t_range: tuple[float, float] = (0.0, 2.0 * math.pi)
    dim: int = 2
    samples: int = 1000
    seed: int = 42
    tol: float = 1e-9
    model: str = "spin_analytic"
    objective: str = "L_value"
    out: str | None = None
    fmt: str = "json"

    def __post_init__(self) -> None:
        if self.grid_steps < 1:
            raise InvalidConfig(f"grid steps must be at least 1, got {self.grid_steps}")
        lo, hi = self.t_range
        if not (math.isfinite(lo) and math.isfinite(hi) and lo < hi):
            raise InvalidConfig(f"need t-range LO < HI, got [{lo}, {hi}]")
        if not (math.isfinite(self.tol) and self.tol > 0.0):
            raise InvalidConfig(f"tolerance must be positive, got {self.tol}")
        if not (math.isfinite(self.omega) and self.omega > 0.0):
            raise InvalidConfig(f"omega must be positive, got {self.omega}")
        if self.fmt not in ("csv", "json"):
            raise InvalidConfig(f"format must be csv or json, got {self.fmt!r}")

    @property
    def grid(self) -> SweepGrid:
        return SweepGrid(
            steps=self.grid_steps, t_lo=self.t_range[0], t_hi=self.t_range[1], omega=self.omega
        )


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on usage errors, which would collide with
    # the "violation found" exit code; route everything through InvalidConfig.
    def error(self, message: str) -> None:  # type: ignore[override]
        raise InvalidConfig(message)


def _parse_t_range(text: str) -> tuple[float, float]:
    parts = text.replace(",", " ").split()
    if len(parts) != 2:
        raise InvalidConfig(f"t_range needs two numbers, got {text!r}")
    return float(parts[0]), float(parts[1])


_CONFIG_PARSERS: dict[str, Callable[[str], object]] = {
    "omega": float,
    "grid_steps": int,
    "t_range": _parse_t_range,
    "dim": int,
    "samples": int,
    "seed": int,
    "tol": float,
    "model": str,
    "objective": str,
    "out": str,
    "format": str,
}


def _load_config_file(path: str) -> dict[str, object]:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise IoError(f"cannot read config file {path}: {exc}") from exc
    values: dict[str, object] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise InvalidConfig(f"{path}:{lineno}: expected key=value, got {raw!r}")
        key = key.strip()
        if key not in _CONFIG_PARSERS:
            raise InvalidConfig(f"{path}:{lineno}: unknown config key {key!r}")
        try:
            values[key] = _CONFIG_PARSERS[key](value.strip())
        except ValueError as exc:
            raise InvalidConfig(f"{path}:{lineno}: bad value for {key}: {exc}") from exc
    return values


def _build_parser() -> _Parser:
    parser = _Parser(prog="lgbounds", description=__doc__, add_help=True)
    sub = parser.add_subparsers(dest="subcommand", required=True)
    for name in ("spin-demo", "sweep", "verify", "search", "blg-demo"):
        p = sub.add_parser(name)
        p.add_argument("--omega", type=float, default=None)
        p.add_argument("--grid-steps", type=int, default=None, dest="grid_steps")
        p.add_argument("--t-range", type=float, nargs=2, default=None, dest="t_range", metavar=("LO", "HI"))
        p.add_argument("--dim", type=int, default=None)
        p.add_argument("--samples", type=int, default=None)
        p.add_argument("--seed", type=int, default=None)
        p.add_argument("--tol", type=float, default=None)
        p.add_argument("--model", type=str, default=None, choices=("spin_analytic", "matrix_path"))
        p.add_argument(
            "--objective",
            type=str,
            default=None,
            choices=("neg_margin_th1", "neg_margin_th2", "neg_margin_th4", "L_value"),
        )
        p.add_argument("--config", type=str, default=None)
        p.add_argument("--out", type=str, default=None)
        p.add_argument("--format", type=str, default=None, choices=("csv", "json"), dest="fmt")
    return parser


def _resolve_config(argv: Sequence[str] | None) -> RunConfig:
    ns = _build_parser().parse_args(argv)
    values: dict[str, object] = {}
    if ns.config is not None:
        file_values = _load_config_file(ns.config)
        if "format" in file_values:
            file_values["fmt"] = file_values.pop("format")
        values.update(file_values)
    for key in ("omega", "grid_steps", "t_range", "dim", "samples", "seed", "tol", "model", "objective", "out", "fmt"):
        flag = getattr(ns, key)
        if flag is not None:
            values[key] = flag
    if "t_range" in values:
        values["t_range"] = tuple(values["t_range"])  # type: ignore[arg-type]
    subcommand = ns.subcommand
    if "fmt" not in values:
        values["fmt"] = "csv" if subcommand == "spin-demo" else "json"
    if subcommand == "blg-demo" and "dim" not in values:
        values["dim"] = 4
    cfg = RunConfig(subcommand=subcommand, **values)  # type: ignore[arg-type]
    if subcommand == "spin-demo" and cfg.fmt != "csv":
        raise InvalidConfig("spin-demo writes CSV files; --format json is not supported")
    if subcommand != "spin-demo" and cfg.fmt != "json":
        raise InvalidConfig(f"{subcommand} reports are JSON; --format csv is not supported")
    return cfg


def _fmt9(value: float) -> str:
    # keep "-0.000000000" out of summaries when the value is only roundoff
    return f"{round(value, 9) + 0.0:.9f}"


def _write_text(path: Path, payload: str) -> None:
    try:
        path.write_text(payload)
    except OSError as exc:
        raise IoError(f"cannot write {path}: {exc}") from exc


def _write_csv(path: Path, header: Sequence[str], columns: Sequence[np.ndarray]) -> None:
    fmt = ",".join(["%.12g"] * len(columns)) + "\n"
    try:
        with open(path, "w", newline="") as fh:
            fh.write(",".join(header) + "\n")
            for row in zip(*columns):
                fh.write(fmt % row)
    except OSError as exc:
        raise IoError(f"cannot write {path}: {exc}") from exc


def _emit_json(cfg: RunConfig, payload: dict, summary: str) -> None:
    text = json.dumps(payload, indent=2) + "\n"
    if cfg.out is None:
        sys.stdout.write(text)
    else:
        _write_text(Path(cfg.out), text)
        print(summary)


def cmd_spin_demo(cfg: RunConfig) -> int:
    fields = grid_field_arrays(cfg.grid)
    outdir = Path(cfg.out or ".")
    try:
        outdir.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise IoError(f"cannot create output directory {outdir}: {exc}") from exc
    _write_csv(outdir / "fig1a.csv", ("t2", "t3", "t4", "value"), (fields["t2"], fields["t3"], fields["t4"], fields["d1"]))
    _write_csv(outdir / "fig1b.csv", ("t2", "t3", "t4", "value"), (fields["t2"], fields["t3"], fields["t4"], fields["d2"]))
    _write_csv(outdir / "fig1c.csv", ("L_norm", "c13_norm", "c24_norm"), (fields["l_norm"], fields["c13_norm"], fields["c24_norm"]))
    min_d1 = float(fields["d1"].min())
    min_d2 = float(fields["d2"].min())
    max_norm_sq = float(fields["norm_sq"].max())
    print(
        f"spin-demo: min D1 = {_fmt9(min_d1)}  min D2 = {_fmt9(min_d2)}  "
        f"max sphere norm = {_fmt9(math.sqrt(max_norm_sq))}"
    )
    violated = min_d1 < -cfg.tol or min_d2 < -cfg.tol or max_norm_sq > 1.0 + cfg.tol
    return EXIT_VIOLATION if violated else EXIT_OK


def cmd_sweep(cfg: RunConfig) -> int:
    result = grid_sweep(cfg.model, cfg.grid)
    worst = min(result.min_margins.values())
    summary = "sweep: " + "  ".join(
        f"min margin[{name}] = {_fmt9(value)}" for name, value in result.min_margins.items()
    )
    _emit_json(cfg, result.to_dict(), summary)
    if cfg.out is None:
        print(summary, file=sys.stderr)
    return EXIT_VIOLATION if worst < -cfg.tol else EXIT_OK


def cmd_verify(cfg: RunConfig) -> int:
    report = monte_carlo_verify(
        RandomInstanceConfig(dim=cfg.dim, seed=cfg.seed),
        cfg.samples,
        t_range=cfg.t_range,
        omega=cfg.omega,
        threads=thread_count_from_env(),
    )
    worst = report.worst_margin()
    summary = (
        f"verify: samples={report.samples} skipped={report.skipped_degenerate} "
        f"psd_failures={report.psd_failures} worst margin={worst!r}"
    )
    _emit_json(cfg, report.to_dict(), summary)
    violated = (worst is not None and worst < -cfg.tol) or report.psd_failures > 0
    return EXIT_VIOLATION if violated else EXIT_OK


def cmd_search(cfg: RunConfig) -> int:
    lo, hi = cfg.t_range
    axis = np.linspace(lo, hi, SEARCH_SCAN_STEPS)
    best_start: MeasurementSchedule | None = None
    best_value = -math.inf
    for t2 in axis:
        for t3 in axis:
            for t4 in axis:
                candidate = MeasurementSchedule(lo, float(t2), float(t3), float(t4), omega=cfg.omega)
                value = objective_value(cfg.objective, candidate, cfg.model)
                if value > best_value:
                    best_start, best_value = candidate, value
    assert best_start is not None
    optimum, value = maximize_violation(cfg.objective, best_start, cfg.model)
    schedule_text = "(" + ", ".join(f"{t:.6f}" for t in optimum.times) + ")"
    print(f"search: objective={cfg.objective} model={cfg.model} optimum={value:.6f} schedule={schedule_text}")
    if cfg.out is not None:
        payload = {
            "objective": cfg.objective,
            "model": cfg.model,
            "optimum": value,
            "schedule": list(optimum.times),
            "omega": cfg.omega,
        }
        _write_text(Path(cfg.out), json.dumps(payload, indent=2) + "\n")
    hunting = cfg.objective.startswith("neg_margin")
    return EXIT_VIOLATION if hunting and value > cfg.tol else EXIT_OK


def cmd_blg_demo(cfg: RunConfig) -> int:
    # worked example: shared maximally mixed pair, both parties reading the
    # same local spin component at both times
    rho = maximally_mixed(4)
    alice = tensor_lift(make_hermitian(PAULI_Z), "first", 2)
    bob = tensor_lift(make_hermitian(PAULI_Z), "second", 2)

    def corr(x, y):
        return generalized_correlation(rho, x, y)

    worked = theorem4_check(
        BlgCorrelations(
            cA1A2=corr(alice, alice),
            cA1B2=corr(alice, bob),
            cB1B2=corr(bob, bob),
            cB1A2=corr(bob, alice),
            cA1B1=corr(alice, bob),
            cA2B2=corr(alice, bob),
        )
    )
    print(
        f"blg-demo: worked example BLG = {_fmt9(worked.lhs)}  bound = {_fmt9(worked.rhs)}  "
        f"margin = {_fmt9(worked.margin)}"
    )
    mc = blg_monte_carlo(
        RandomInstanceConfig(dim=cfg.dim, seed=cfg.seed), cfg.samples, t_range=cfg.t_range, omega=cfg.omega
    )
    print(
        f"blg-demo: samples={mc.samples} skipped={mc.skipped_degenerate} "
        f"min margin = {mc.min_margin!r}  max BLG = {mc.max_blg!r}"
    )
    if cfg.out is not None:
        payload = {
            "worked_example": {"blg": worked.lhs, "bound": worked.rhs, "margin": worked.margin},
            "monte_carlo": mc.to_dict(),
        }
        _write_text(Path(cfg.out), json.dumps(payload, indent=2) + "\n")
    violated = (
        worked.margin < -cfg.tol
        or (mc.min_margin is not None and mc.min_margin < -cfg.tol)
        or (mc.max_blg is not None and mc.max_blg > TWO_SQRT_TWO + cfg.tol)
    )
    return EXIT_VIOLATION if violated else EXIT_OK


_COMMANDS: dict[str, Callable[[RunConfig], int]] = {
    "spin-demo": cmd_spin_demo,
    "sweep": cmd_sweep,
    "verify": cmd_verify,
    "search": cmd_search,
    "blg-demo": cmd_blg_demo,
}


def main(argv: Sequence[str] | None = None) -> int:
    try:
        cfg = _resolve_config(argv)
        return _COMMANDS[cfg.subcommand](cfg)
    except LgboundsError as exc:
        print(f"lgbounds: error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except OSError as exc:
        print(f"lgbounds: error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
