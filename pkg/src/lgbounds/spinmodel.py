"""Closed-form single-qubit demonstration system.

A qubit precesses under ``H = (omega/2) sigma_x`` while ``sigma_z`` is
measured. The evolved observable is
``Q_t = cos(omega t) sigma_z + sin(omega t) sigma_y``, so on the maximally
mixed state every pairwise correlation collapses to ``cos(omega (t - s))``
with zero means and unit spreads. That closed form makes the whole bound
suite analytic: this module evaluates the two bound gaps (``d1`` for the
cyclic-sum ceiling, ``d2`` for the product rule), generates the sweep rows
behind the demo figures, and cross-checks the matrix path against the
cosine form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .errors import InvalidConfig, NumericalFailure
from .inequalities import (
    TWO_SQRT_TWO,
    LgiCorrelations,
    lgi_parameter,
    theorem1_bound,
)
from .operators import (
    PAULI_X,
    PAULI_Z,
    Hamiltonian,
    HermitianOperator,
    evolve_many,
    make_hermitian,
    maximally_mixed,
)
from .correlations import build_correlation_matrix
from .schedule import MeasurementSchedule

__all__ = [
    "SweepGrid",
    "FigureRow",
    "spin_observable",
    "spin_hamiltonian",
    "spin_correlation",
    "spin_lgi_correlations",
    "spin_d1",
    "spin_d2",
    "figure_data",
    "grid_field_arrays",
    "matrix_path_crosscheck",
]


def spin_observable() -> HermitianOperator:
    """The measured qubit observable (``sigma_z``)."""
    return make_hermitian(PAULI_Z)


def spin_hamiltonian(omega: float = 1.0) -> Hamiltonian:
    """Precession generator ``(omega/2) sigma_x``."""
    return Hamiltonian.from_matrix(0.5 * omega * PAULI_X)


def spin_correlation(omega: float, t: float, s: float) -> float:
    """Correlation of the evolved observable at two times: ``cos(omega (t-s))``."""
    return math.cos(omega * (t - s))


def spin_lgi_correlations(schedule: MeasurementSchedule) -> LgiCorrelations:
    """All six pairwise correlations of the schedule, in closed form."""
    w = schedule.omega
    t1, t2, t3, t4 = schedule.times
    return LgiCorrelations(
        c12=spin_correlation(w, t1, t2),
        c23=spin_correlation(w, t2, t3),
        c34=spin_correlation(w, t3, t4),
        c14=spin_correlation(w, t1, t4),
        c13=spin_correlation(w, t1, t3),
        c24=spin_correlation(w, t2, t4),
    )


def spin_d1(schedule: MeasurementSchedule) -> float:
    """Gap between the cyclic-sum ceiling and the cyclic sum itself.

    Nonnegative for every schedule; zero exactly at saturation points such
    as four times spaced by a quarter period.
    """
    c = spin_lgi_correlations(schedule)
    return theorem1_bound(c.c13, c.c24) - lgi_parameter(c)


def spin_d2(schedule: MeasurementSchedule) -> float:
    """Gap of the two-pivot product rule, written directly in sines/cosines."""
    w = schedule.omega
    t1, t2, t3, t4 = schedule.times
    rhs = abs(math.sin(w * (t2 - t1)) * math.sin(w * (t2 - t3))) + abs(
        math.sin(w * (t4 - t1)) * math.sin(w * (t4 - t3))
    )
    lhs = abs(
        math.cos(w * (t2 - t1)) * math.cos(w * (t2 - t3))
        - math.cos(w * (t4 - t1)) * math.cos(w * (t4 - t3))
    )
    return rhs - lhs


@dataclass(frozen=True)
class SweepGrid:
    """Cartesian sweep over (t2, t3, t4) with t1 pinned.

    Pinning t1 loses nothing: shifting all four times together (or trading
    omega against a common time rescale) leaves every output unchanged.
    """

    steps: int = 81
    t_lo: float = 0.0
    t_hi: float = 2.0 * math.pi
    omega: float = 1.0
    t1: float = 0.0

    def __post_init__(self) -> None:
        if self.steps < 1:
            raise InvalidConfig(f"steps must be at least 1, got {self.steps}")
        if not (math.isfinite(self.t_lo) and math.isfinite(self.t_hi) and self.t_lo < self.t_hi):
            raise InvalidConfig(f"need t_lo < t_hi, got [{self.t_lo}, {self.t_hi}]")
        if not (math.isfinite(self.omega) and self.omega > 0.0):
            raise InvalidConfig(f"omega must be positive, got {self.omega}")

    @property
    def axis(self) -> np.ndarray:
        return np.linspace(self.t_lo, self.t_hi, self.steps)

    def schedule_at(self, t2: float, t3: float, t4: float) -> MeasurementSchedule:
        return MeasurementSchedule(self.t1, t2, t3, t4, omega=self.omega)


@dataclass(frozen=True)
class FigureRow:
    """One sweep point: bound gaps plus normalized sphere coordinates."""

    t2: float
    t3: float
    t4: float
    d1: float
    d2: float
    l_norm: float
    c13_norm: float
    c24_norm: float

    def __post_init__(self) -> None:
        if self.d1 < -1e-9 or self.d2 < -1e-9:
            raise NumericalFailure(
                f"negative bound gap at ({self.t2}, {self.t3}, {self.t4}): "
                f"d1={self.d1!r} d2={self.d2!r}"
            )
        if self.sphere_norm_sq > 1.0 + 1e-9:
            raise NumericalFailure(
                f"sphere coordinates outside the unit ball at "
                f"({self.t2}, {self.t3}, {self.t4})"
            )

    @property
    def sphere_norm_sq(self) -> float:
        return self.l_norm**2 + self.c13_norm**2 + self.c24_norm**2


def grid_field_arrays(grid: SweepGrid) -> dict[str, np.ndarray]:
    """Vectorized sweep evaluation, flattened in lexicographic (t2, t3, t4) order.

    Returns arrays ``t2, t3, t4, d1, d2, l_norm, c13_norm, c24_norm`` plus
    the squared sphere radius ``norm_sq``.
    """
    axis = grid.axis
    t2, t3, t4 = (a.ravel() for a in np.meshgrid(axis, axis, axis, indexing="ij"))
    w, t1 = grid.omega, grid.t1
    c12 = np.cos(w * (t1 - t2))
    c23 = np.cos(w * (t2 - t3))
    c34 = np.cos(w * (t3 - t4))
    c14 = np.cos(w * (t1 - t4))
    c13 = np.cos(w * (t1 - t3))
    c24 = np.cos(w * (t2 - t4))
    lgi = np.abs(c12 + c23 + c34 - c14)
    bound = 2.0 * np.sqrt(1.0 + np.sqrt(1.0 - np.maximum(c13**2, c24**2)))
    d1 = bound - lgi
    d2 = (
        np.abs(np.sin(w * (t2 - t1)) * np.sin(w * (t2 - t3)))
        + np.abs(np.sin(w * (t4 - t1)) * np.sin(w * (t4 - t3)))
        - np.abs(c12 * c23 - c14 * c34)
    )
    l_norm = lgi / TWO_SQRT_TWO
    c13_norm = c13 / TWO_SQRT_TWO
    c24_norm = c24 / TWO_SQRT_TWO
    return {
        "t2": t2,
        "t3": t3,
        "t4": t4,
        "d1": d1,
        "d2": d2,
        "l_norm": l_norm,
        "c13_norm": c13_norm,
        "c24_norm": c24_norm,
        "norm_sq": l_norm**2 + c13_norm**2 + c24_norm**2,
    }


def figure_data(grid: SweepGrid = SweepGrid()) -> Iterator[FigureRow]:
    """Stream the sweep as validated rows, one per grid point."""
    f = grid_field_arrays(grid)
    for i in range(f["t2"].shape[0]):
        yield FigureRow(
            t2=float(f["t2"][i]),
            t3=float(f["t3"][i]),
            t4=float(f["t4"][i]),
            d1=float(f["d1"][i]),
            d2=float(f["d2"][i]),
            l_norm=float(f["l_norm"][i]),
            c13_norm=float(f["c13_norm"][i]),
            c24_norm=float(f["c24_norm"][i]),
        )


def matrix_path_crosscheck(schedule: MeasurementSchedule) -> float:
    """Largest deviation between the cosine form and the operator path.

    The operator path evolves ``sigma_z`` under ``(omega/2) sigma_x`` and
    correlates in the maximally mixed state, which is the state whose means
    vanish and whose spreads are 1, reproducing the closed form exactly.
    """
    rho = maximally_mixed(2)
    evolved = evolve_many(spin_observable(), spin_hamiltonian(schedule.omega), schedule.times)
    matrix = build_correlation_matrix(rho, evolved)
    worst = 0.0
    for i in range(4):
        for j in range(i + 1, 4):
            analytic = spin_correlation(schedule.omega, schedule.times[i], schedule.times[j])
            worst = max(worst, abs(matrix.entries[i, j] - analytic))
    return worst
