"""Seeded stress-testing of every bound.

Four tools live here: deterministic random-instance supply (state,
Hamiltonian, observable) keyed by ``(seed, index)`` so parallel and serial
runs agree bit for bit; a Monte-Carlo verifier that aggregates margins per
inequality group; exhaustive grid sweeps over schedules (closed form or
operator path); and a compass search that climbs an objective to hunt for
saturation points or counterexamples. A series-propagation oracle rebuilds
the evolved observables through a code path that shares nothing with the
spectral propagator, giving an independent check of the correlation values.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from typing import Callable, NamedTuple

import numpy as np

from .errors import DegenerateObservable, InvalidConfig, NumericalFailure
from .inequalities import (
    REPORT_TOLERANCE,
    ScheduleEvaluation,
    evaluate_bipartite_schedule,
    evaluate_schedule,
    lgi_parameter,
)
from .operators import (
    DensityMatrix,
    Hamiltonian,
    HermitianOperator,
    PAULI_X,
    PAULI_Z,
    make_hermitian,
    maximally_mixed,
    tensor_lift,
)
from .schedule import MeasurementSchedule
from .spinmodel import (
    SweepGrid,
    grid_field_arrays,
    spin_d1,
    spin_d2,
    spin_hamiltonian,
    spin_lgi_correlations,
    spin_observable,
)

__all__ = [
    "DEFAULT_T_RANGE",
    "MARGIN_GROUPS",
    "RandomInstanceConfig",
    "MarginStats",
    "VerificationReport",
    "BlgVerification",
    "SweepResult",
    "OracleCorrelations",
    "random_instance",
    "random_bipartite_instance",
    "local_dims",
    "monte_carlo_verify",
    "blg_monte_carlo",
    "grid_sweep",
    "objective_value",
    "maximize_violation",
    "brute_force_oracle",
    "thread_count_from_env",
]

DEFAULT_T_RANGE = (0.0, 2.0 * math.pi)
MARGIN_GROUPS = ("theorem1", "theorem2", "theorem3", "theorem4", "intermediates", "appendix")

OBSERVABLE_KINDS = ("dichotomic", "general")
STATE_KINDS = ("haar_pure", "mixed_rank_k")

SWEEP_MODELS = ("spin_analytic", "matrix_path")
OBJECTIVES = ("neg_margin_th1", "neg_margin_th2", "neg_margin_th4", "L_value")


@dataclass(frozen=True)
class RandomInstanceConfig:
    """Shape of the random instance stream.

    ``dichotomic`` observables carry a balanced +-1 spectrum (one extra +1
    at odd dimensions); ``general`` ones are Gaussian Hermitian draws.
    States are either Haar-random pure vectors or normalized rank-limited
    Wishart mixtures.
    """

    dim: int
    seed: int
    observable_kind: str = "dichotomic"
    state_kind: str = "haar_pure"
    mixed_rank: int | None = None

    def __post_init__(self) -> None:
        if not 2 <= self.dim <= 16:
            raise InvalidConfig(f"dim must lie in [2, 16], got {self.dim}")
        if not 0 <= self.seed < 2**64:
            raise InvalidConfig("seed must fit in an unsigned 64-bit integer")
        if self.observable_kind not in OBSERVABLE_KINDS:
            raise InvalidConfig(f"unknown observable kind {self.observable_kind!r}")
        if self.state_kind not in STATE_KINDS:
            raise InvalidConfig(f"unknown state kind {self.state_kind!r}")
        if self.mixed_rank is not None and not 1 <= self.mixed_rank <= self.dim:
            raise InvalidConfig(f"mixed_rank must lie in [1, {self.dim}]")


def _rng(seed: int, index: int, stream: int = 0) -> np.random.Generator:
    # Philox is counter-based: each (seed, index, stream) triple opens an
    # independent reproducible stream, which is what makes parallel and
    # serial runs identical.
    return np.random.Generator(np.random.Philox(np.random.SeedSequence([seed, index, stream])))


def _ginibre(rng: np.random.Generator, rows: int, cols: int) -> np.ndarray:
    return rng.standard_normal((rows, cols)) + 1j * rng.standard_normal((rows, cols))


def _haar_unitary(rng: np.random.Generator, dim: int) -> np.ndarray:
    q, r = np.linalg.qr(_ginibre(rng, dim, dim))
    phases = np.diag(r).copy()
    phases /= np.abs(phases)
    return q * phases


def _gaussian_hermitian(rng: np.random.Generator, dim: int) -> np.ndarray:
    g = _ginibre(rng, dim, dim)
    return 0.5 * (g + g.conj().T)


def _draw_state(rng: np.random.Generator, cfg: RandomInstanceConfig) -> DensityMatrix:
    if cfg.state_kind == "haar_pure":
        vec = _ginibre(rng, cfg.dim, 1).ravel()
        vec /= np.linalg.norm(vec)
        return DensityMatrix(np.outer(vec, vec.conj()))
    rank = cfg.mixed_rank or cfg.dim
    a = _ginibre(rng, cfg.dim, rank)
    rho = a @ a.conj().T
    rho /= np.trace(rho).real
    rho = 0.5 * (rho + rho.conj().T)
    return DensityMatrix(rho)


def _draw_observable(rng: np.random.Generator, kind: str, dim: int) -> HermitianOperator:
    if kind == "general":
        return HermitianOperator(_gaussian_hermitian(rng, dim))
    signs = np.ones(dim)
    signs[: dim // 2] = -1.0
    v = _haar_unitary(rng, dim)
    m = (v * signs) @ v.conj().T
    return HermitianOperator(0.5 * (m + m.conj().T))


def _draw_instance(
    rng: np.random.Generator, cfg: RandomInstanceConfig
) -> tuple[DensityMatrix, Hamiltonian, HermitianOperator]:
    rho = _draw_state(rng, cfg)
    h = Hamiltonian(HermitianOperator(_gaussian_hermitian(rng, cfg.dim)))
    q = _draw_observable(rng, cfg.observable_kind, cfg.dim)
    return rho, h, q


def random_instance(
    cfg: RandomInstanceConfig, index: int
) -> tuple[DensityMatrix, Hamiltonian, HermitianOperator]:
    """Instance ``index`` of the stream: a pure function of (seed, index)."""
    return _draw_instance(_rng(cfg.seed, index), cfg)


def local_dims(dim: int) -> tuple[int, int] | None:
    """Split ``dim`` as d1*d2 with both factors >= 2, smallest factor first.

    Returns None when ``dim`` is prime and no bipartite reading exists.
    """
    for d1 in range(2, int(math.isqrt(dim)) + 1):
        if dim % d1 == 0:
            return d1, dim // d1
    return None


def _draw_bipartite(
    rng: np.random.Generator, cfg: RandomInstanceConfig, parts: tuple[int, int]
) -> tuple[DensityMatrix, Hamiltonian, HermitianOperator, HermitianOperator]:
    d1, d2 = parts
    rho = _draw_state(rng, cfg)
    h = Hamiltonian(HermitianOperator(_gaussian_hermitian(rng, cfg.dim)))
    alice = tensor_lift(_draw_observable(rng, cfg.observable_kind, d1), "first", d2)
    bob = tensor_lift(_draw_observable(rng, cfg.observable_kind, d2), "second", d1)
    return rho, h, alice, bob


def random_bipartite_instance(
    cfg: RandomInstanceConfig, index: int
) -> tuple[DensityMatrix, Hamiltonian, HermitianOperator, HermitianOperator]:
    """Bipartite instance: global state and dynamics, one local observable per party."""
    parts = local_dims(cfg.dim)
    if parts is None:
        raise InvalidConfig(f"dim {cfg.dim} does not factor into two local dimensions")
    return _draw_bipartite(_rng(cfg.seed, index, stream=1), cfg, parts)


@dataclass(frozen=True)
class MarginStats:
    """Per-group margin summary; None fields mean the group never fired."""

    minimum: float | None
    mean: float | None
    count: int

    @classmethod
    def from_values(cls, values: list[float]) -> "MarginStats":
        if not values:
            return cls(None, None, 0)
        return cls(min(values), math.fsum(values) / len(values), len(values))


@dataclass(frozen=True)
class VerificationReport:
    """Aggregated outcome of a Monte-Carlo verification run."""

    seed: int
    samples: int
    skipped_degenerate: int
    psd_failures: int
    boundary_cases: int
    margins: dict[str, MarginStats]

    SCHEMA_VERSION = 1

    def worst_margin(self) -> float | None:
        mins = [s.minimum for s in self.margins.values() if s.minimum is not None]
        return min(mins) if mins else None

    def to_dict(self) -> dict:
        return {
            "schema_version": self.SCHEMA_VERSION,
            "seed": self.seed,
            "samples": self.samples,
            "skipped_degenerate": self.skipped_degenerate,
            "psd_failures": self.psd_failures,
            "margins": {
                group: {"min": stats.minimum, "mean": stats.mean}
                for group, stats in self.margins.items()
            },
            "boundary_cases": self.boundary_cases,
        }


class _SampleOutcome(NamedTuple):
    index: int
    skips: int
    margins: dict[str, list[float]]
    min_eigenvalue: float | None
    boundary: int


def _sample_schedule(rng: np.random.Generator, t_range: tuple[float, float], omega: float) -> MeasurementSchedule:
    lo, hi = t_range
    ts = rng.uniform(lo, hi, 4)
    return MeasurementSchedule(float(ts[0]), float(ts[1]), float(ts[2]), float(ts[3]), omega=omega)


def _collect_temporal(outcome: ScheduleEvaluation, margins: dict[str, list[float]]) -> int:
    margins["theorem1"].append(outcome.theorem1.margin)
    margins["theorem2"].append(outcome.theorem2.margin)
    margins["theorem3"].append(outcome.theorem3.margin)
    for report in (*outcome.intermediates, *outcome.tlm_singles):
        margins["intermediates"].append(report.margin)
    if outcome.appendix_applicable:
        for report in outcome.appendix:
            margins["appendix"].append(report.margin)
    return sum(1 for r in outcome.reports if r.boundary)


def _verify_one(
    cfg: RandomInstanceConfig,
    index: int,
    t_range: tuple[float, float],
    omega: float,
    bipartite: tuple[int, int] | None,
) -> _SampleOutcome:
    margins: dict[str, list[float]] = {group: [] for group in MARGIN_GROUPS}
    skips = 0
    boundary = 0
    min_eig: float | None = None

    rng = _rng(cfg.seed, index)
    rho, h, q = _draw_instance(rng, cfg)
    times = _sample_schedule(rng, t_range, omega)
    try:
        outcome = evaluate_schedule(rho, q, h, times)
        boundary += _collect_temporal(outcome, margins)
        min_eig = outcome.min_eigenvalue
    except DegenerateObservable:
        skips += 1
    except NumericalFailure as exc:
        raise NumericalFailure(f"sample {index} (seed {cfg.seed}): {exc}") from exc

    if bipartite is not None:
        rng_b = _rng(cfg.seed, index, stream=1)
        rho_b, h_b, alice, bob = _draw_bipartite(rng_b, cfg, bipartite)
        times_b = _sample_schedule(rng_b, t_range, omega)
        try:
            pair = evaluate_bipartite_schedule(rho_b, alice, bob, h_b, times_b)
            margins["theorem4"].append(pair.theorem4.margin)
            if pair.theorem4.boundary:
                boundary += 1
        except DegenerateObservable:
            skips += 1
        except NumericalFailure as exc:
            raise NumericalFailure(f"bipartite sample {index} (seed {cfg.seed}): {exc}") from exc

    return _SampleOutcome(index, skips, margins, min_eig, boundary)


def _verify_range(args) -> list[_SampleOutcome]:
    cfg, indices, t_range, omega, bipartite = args
    return [_verify_one(cfg, i, t_range, omega, bipartite) for i in indices]


def thread_count_from_env(default: int = 1) -> int:
    """Worker count from LGBOUNDS_THREADS; 0 means one per CPU."""
    raw = os.environ.get("LGBOUNDS_THREADS")
    if raw is None:
        return default
    try:
        value = int(raw)
    except ValueError as exc:
        raise InvalidConfig(f"LGBOUNDS_THREADS must be an integer, got {raw!r}") from exc
    if value < 0:
        raise InvalidConfig("LGBOUNDS_THREADS must be nonnegative")
    if value == 0:
        return os.cpu_count() or 1
    return value


def monte_carlo_verify(
    cfg: RandomInstanceConfig,
    samples: int,
    t_range: tuple[float, float] = DEFAULT_T_RANGE,
    omega: float = 1.0,
    psd_tol: float = 1e-8,
    threads: int = 1,
) -> VerificationReport:
    """Run the full report suite on ``samples`` random instances.

    Each sample evaluates the temporal suite, and additionally the
    two-party suite whenever the dimension factors into two local parts.
    Degenerate draws are skipped and counted; the stream index still
    advances, keeping the (seed, index) -> instance map pure. Aggregation
    is done in index order with exact summation, so the report does not
    depend on the number of workers.
    """
    if samples < 1:
        raise InvalidConfig(f"samples must be at least 1, got {samples}")
    if not t_range[0] < t_range[1]:
        raise InvalidConfig(f"need t_lo < t_hi, got {t_range}")
    bipartite = local_dims(cfg.dim)
    indices = range(samples)

    if threads > 1 and samples >= 64:
        from concurrent.futures import ProcessPoolExecutor

        chunk = max(16, samples // (threads * 8))
        batches = [
            (cfg, range(start, min(start + chunk, samples)), t_range, omega, bipartite)
            for start in range(0, samples, chunk)
        ]
        outcomes: list[_SampleOutcome] = []
        with ProcessPoolExecutor(max_workers=threads) as pool:
            for batch in pool.map(_verify_range, batches):
                outcomes.extend(batch)
        outcomes.sort(key=lambda o: o.index)
    else:
        outcomes = [_verify_one(cfg, i, t_range, omega, bipartite) for i in indices]

    merged: dict[str, list[float]] = {group: [] for group in MARGIN_GROUPS}
    skipped = 0
    psd_failures = 0
    boundary = 0
    for outcome in outcomes:
        skipped += outcome.skips
        boundary += outcome.boundary
        if outcome.min_eigenvalue is not None and outcome.min_eigenvalue < -psd_tol:
            psd_failures += 1
        for group in MARGIN_GROUPS:
            merged[group].extend(outcome.margins[group])

    return VerificationReport(
        seed=cfg.seed,
        samples=samples,
        skipped_degenerate=skipped,
        psd_failures=psd_failures,
        boundary_cases=boundary,
        margins={group: MarginStats.from_values(merged[group]) for group in MARGIN_GROUPS},
    )


@dataclass(frozen=True)
class BlgVerification:
    """Summary of a bipartite-only Monte-Carlo run."""

    seed: int
    samples: int
    skipped_degenerate: int
    min_margin: float | None
    mean_margin: float | None
    max_blg: float | None
    boundary_cases: int

    def to_dict(self) -> dict:
        return {
            "seed": self.seed,
            "samples": self.samples,
            "skipped_degenerate": self.skipped_degenerate,
            "min_margin": self.min_margin,
            "mean_margin": self.mean_margin,
            "max_blg": self.max_blg,
            "boundary_cases": self.boundary_cases,
        }


def blg_monte_carlo(
    cfg: RandomInstanceConfig,
    samples: int,
    t_range: tuple[float, float] = DEFAULT_T_RANGE,
    omega: float = 1.0,
) -> BlgVerification:
    """Two-party margins and the largest two-party sum over random instances."""
    if samples < 1:
        raise InvalidConfig(f"samples must be at least 1, got {samples}")
    if local_dims(cfg.dim) is None:
        raise InvalidConfig(f"dim {cfg.dim} does not factor into two local dimensions")
    parts = local_dims(cfg.dim)
    margins: list[float] = []
    max_blg: float | None = None
    skipped = 0
    boundary = 0
    for index in range(samples):
        rng = _rng(cfg.seed, index, stream=1)
        rho, h, alice, bob = _draw_bipartite(rng, cfg, parts)
        times = _sample_schedule(rng, t_range, omega)
        try:
            outcome = evaluate_bipartite_schedule(rho, alice, bob, h, times)
        except DegenerateObservable:
            skipped += 1
            continue
        margins.append(outcome.theorem4.margin)
        max_blg = outcome.blg if max_blg is None else max(max_blg, outcome.blg)
        if outcome.theorem4.boundary:
            boundary += 1
    stats = MarginStats.from_values(margins)
    return BlgVerification(
        seed=cfg.seed,
        samples=samples,
        skipped_degenerate=skipped,
        min_margin=stats.minimum,
        mean_margin=stats.mean,
        max_blg=max_blg,
        boundary_cases=boundary,
    )


@dataclass(frozen=True)
class SweepResult:
    """Minima, their locations and boundary counts from a schedule sweep."""

    model: str
    grid: SweepGrid
    min_margins: dict[str, float]
    argmin: dict[str, MeasurementSchedule]
    boundary_cases: int

    def to_dict(self) -> dict:
        return {
            "model": self.model,
            "grid": {
                "steps": self.grid.steps,
                "t_lo": self.grid.t_lo,
                "t_hi": self.grid.t_hi,
                "omega": self.grid.omega,
                "t1": self.grid.t1,
            },
            "min_margins": dict(self.min_margins),
            "argmin": {name: list(s.times) for name, s in self.argmin.items()},
            "boundary_cases": self.boundary_cases,
        }


def grid_sweep(model: str, grid: SweepGrid) -> SweepResult:
    """Exhaustively evaluate the three schedule-level margins over the grid.

    Tracked margins: the cyclic-sum gap (theorem1), the product-rule gap
    (theorem2) and the ball slack ``1 - lhs`` (theorem3). Both models agree
    to within eigensolver noise; the closed form is vectorized, the operator
    path goes through the full evaluation stack one point at a time.
    """
    if model not in SWEEP_MODELS:
        raise InvalidConfig(f"unknown sweep model {model!r}")
    if model == "spin_analytic":
        f = grid_field_arrays(grid)
        margins = {
            "theorem1": f["d1"],
            "theorem2": f["d2"],
            "theorem3": 1.0 - f["norm_sq"],
        }
        min_margins = {}
        argmin = {}
        boundary_mask = np.zeros(f["t2"].shape[0], dtype=bool)
        for name, values in margins.items():
            k = int(np.argmin(values))
            min_margins[name] = float(values[k])
            argmin[name] = grid.schedule_at(float(f["t2"][k]), float(f["t3"][k]), float(f["t4"][k]))
            boundary_mask |= np.abs(values) <= REPORT_TOLERANCE
        return SweepResult(model, grid, min_margins, argmin, int(boundary_mask.sum()))

    rho = maximally_mixed(2)
    q = spin_observable()
    h = spin_hamiltonian(grid.omega)
    min_margins = {"theorem1": math.inf, "theorem2": math.inf, "theorem3": math.inf}
    argmin = {}
    boundary = 0
    axis = grid.axis
    for t2 in axis:
        for t3 in axis:
            for t4 in axis:
                times = grid.schedule_at(float(t2), float(t3), float(t4))
                outcome = evaluate_schedule(rho, q, h, times)
                point = {
                    "theorem1": outcome.theorem1.margin,
                    "theorem2": outcome.theorem2.margin,
                    "theorem3": outcome.theorem3.margin,
                }
                hit = False
                for name, value in point.items():
                    if value < min_margins[name]:
                        min_margins[name] = value
                        argmin[name] = times
                    if abs(value) <= REPORT_TOLERANCE:
                        hit = True
                boundary += int(hit)
    return SweepResult(model, grid, min_margins, argmin, boundary)


def _bipartite_reference(omega: float):
    """Fixed two-qubit family for the two-party objective: local spin
    observables under a transverse field on each side."""
    rho = maximally_mixed(4)
    alice = tensor_lift(make_hermitian(PAULI_Z), "first", 2)
    bob = tensor_lift(make_hermitian(PAULI_Z), "second", 2)
    h = Hamiltonian.from_matrix(
        0.5 * omega * (np.kron(PAULI_X, np.eye(2)) + np.kron(np.eye(2), PAULI_X))
    )
    return rho, alice, bob, h


def _objective_fn(objective: str, model: str, omega: float) -> Callable[[np.ndarray], float]:
    if objective not in OBJECTIVES:
        raise InvalidConfig(f"unknown objective {objective!r}")
    if model not in SWEEP_MODELS:
        raise InvalidConfig(f"unknown sweep model {model!r}")

    def schedule_of(ts: np.ndarray) -> MeasurementSchedule:
        return MeasurementSchedule(float(ts[0]), float(ts[1]), float(ts[2]), float(ts[3]), omega=omega)

    if objective == "neg_margin_th4":
        rho, alice, bob, h = _bipartite_reference(omega)

        def th4(ts: np.ndarray) -> float:
            return -evaluate_bipartite_schedule(rho, alice, bob, h, schedule_of(ts)).theorem4.margin

        return th4

    if model == "spin_analytic":
        if objective == "L_value":
            return lambda ts: lgi_parameter(spin_lgi_correlations(schedule_of(ts)))
        if objective == "neg_margin_th1":
            return lambda ts: -spin_d1(schedule_of(ts))
        return lambda ts: -spin_d2(schedule_of(ts))

    rho = maximally_mixed(2)
    q = spin_observable()
    h = spin_hamiltonian(omega)

    def from_reports(ts: np.ndarray) -> float:
        outcome = evaluate_schedule(rho, q, h, schedule_of(ts))
        if objective == "L_value":
            return outcome.lgi
        if objective == "neg_margin_th1":
            return -outcome.theorem1.margin
        return -outcome.theorem2.margin

    return from_reports


def objective_value(objective: str, times: MeasurementSchedule, model: str = "spin_analytic") -> float:
    """Evaluate a search objective at one schedule (used for coarse scans)."""
    f = _objective_fn(objective, model, times.omega)
    return float(f(np.array(times.times, dtype=float)))


def maximize_violation(
    objective: str,
    start: MeasurementSchedule,
    model: str = "spin_analytic",
    initial_step: float = 0.5,
    step_floor: float = 1e-8,
    max_iterations: int = 500,
) -> tuple[MeasurementSchedule, float]:
    """Compass-search ascent of ``objective`` from ``start``.

    Each iteration probes +-step along every time coordinate and keeps the
    best improvement; when nothing improves the step halves. Stops once the
    step drops below ``step_floor`` or after ``max_iterations``. The
    returned value never falls below the value at ``start``.
    """
    f = _objective_fn(objective, model, start.omega)
    x = np.array(start.times, dtype=float)
    best = f(x)
    step = float(initial_step)
    iterations = 0
    while step >= step_floor and iterations < max_iterations:
        iterations += 1
        improved = False
        for k in range(4):
            for sign in (1.0, -1.0):
                trial = x.copy()
                trial[k] += sign * step
                value = f(trial)
                if value > best:
                    x, best = trial, value
                    improved = True
        if not improved:
            step *= 0.5
    final = MeasurementSchedule(float(x[0]), float(x[1]), float(x[2]), float(x[3]), omega=start.omega)
    return final, float(best)


class OracleCorrelations(NamedTuple):
    c12: float
    c23: float
    c34: float
    c14: float
    c13: float
    c24: float


def _series_propagator(h: np.ndarray, t: float, log2_steps: int) -> np.ndarray:
    """``exp(-i h t)`` by squaring a fourth-order series for one small step.

    Deliberately avoids the eigendecomposition route so the two evolution
    paths share no code.
    """
    dim = h.shape[0]
    dt = t / float(1 << log2_steps)
    generator = -1j * dt * h
    u = np.eye(dim, dtype=complex)
    term = np.eye(dim, dtype=complex)
    for order in range(1, 5):
        term = term @ generator / order
        u = u + term
    for _ in range(log2_steps):
        u = u @ u
    defect = float(np.abs(u.conj().T @ u - np.eye(dim)).max())
    if defect > 1e-8:
        raise NumericalFailure(f"propagator lost unitarity (defect {defect:.3e})")
    return u


def brute_force_oracle(
    rho: DensityMatrix,
    q: HermitianOperator,
    h: Hamiltonian,
    times: MeasurementSchedule,
    log2_steps: int = 16,
) -> OracleCorrelations:
    """Recompute the six schedule correlations along an independent path.

    Observables are advanced with the series propagator and correlated by
    direct moment arithmetic on raw arrays; no call reaches the spectral
    propagator or the correlation layer. Agreement with the main path to
    1e-8 is the cross-check this function exists for.
    """
    evolved = []
    for t in times.times:
        u = _series_propagator(h.operator.matrix, float(t), log2_steps)
        evolved.append(u.conj().T @ q.matrix @ u)

    means = [float(np.trace(rho.matrix @ m).real) for m in evolved]
    spreads = []
    for mean, m in zip(means, evolved):
        second = float(np.trace(rho.matrix @ m @ m).real)
        variance = max(second - mean * mean, 0.0)
        spread = math.sqrt(variance)
        if spread <= 1e-12:
            raise DegenerateObservable("oracle spread vanished")
        spreads.append(spread)

    def corr(i: int, j: int) -> float:
        sym = 0.5 * float(np.trace(rho.matrix @ (evolved[i] @ evolved[j] + evolved[j] @ evolved[i])).real)
        return (sym - means[i] * means[j]) / (spreads[i] * spreads[j])

    return OracleCorrelations(
        c12=corr(0, 1), c23=corr(1, 2), c34=corr(2, 3), c14=corr(0, 3), c13=corr(0, 2), c24=corr(1, 3)
    )
