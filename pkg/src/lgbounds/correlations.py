"""Generalized two-operator correlations and their matrix form.

The central quantity is the symmetrized, mean-subtracted, spread-normalized
correlation of two observables in a fixed state,

    corr(X, Y) = (<{X, Y}>/2 - <X><Y>) / (dX dY),

which lies in [-1, 1] for any nondegenerate Hermitian pair. A complex
variant drops the symmetrization, ``(<X Y> - <X><Y>) / (dX dY)``; its real
part coincides with the symmetric correlation. Pairwise correlation
matrices built from these entries are Gram matrices of centered operators
and hence positive semidefinite up to roundoff — the single fact every
bound in the inequality layer rests on.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from .errors import DegenerateObservable, NumericalFailure
from .operators import (
    DensityMatrix,
    HermitianOperator,
    expectation,
    std_dev,
    symmetrized_product_expectation,
)

__all__ = [
    "DEGENERACY_THRESHOLD",
    "CLAMP_BAND",
    "PSD_TOLERANCE",
    "CorrelationMatrix",
    "PsdCheck",
    "SchurCheck",
    "generalized_correlation",
    "complex_correlation",
    "build_correlation_matrix",
    "psd_check",
    "schur_complement_check",
]

DEGENERACY_THRESHOLD = 1e-12
# Overshoot beyond +-1 inside this band is rounding and clamps; beyond it,
# something upstream is broken and we refuse to guess.
CLAMP_BAND = 1e-9
PSD_TOLERANCE = 1e-9


def _spread_or_raise(rho: DensityMatrix, x: HermitianOperator) -> float:
    spread = std_dev(rho, x)
    if spread <= DEGENERACY_THRESHOLD:
        raise DegenerateObservable(
            f"observable spread {spread:.3e} is below {DEGENERACY_THRESHOLD:.0e}; "
            "the normalized correlation is undefined"
        )
    return spread


def _clamp_unit(value: float) -> float:
    if value > 1.0:
        if value > 1.0 + CLAMP_BAND:
            raise NumericalFailure(f"correlation {value!r} overshoots 1 beyond the clamp band")
        return 1.0
    if value < -1.0:
        if value < -1.0 - CLAMP_BAND:
            raise NumericalFailure(f"correlation {value!r} overshoots -1 beyond the clamp band")
        return -1.0
    return value


def generalized_correlation(
    rho: DensityMatrix, x: HermitianOperator, y: HermitianOperator
) -> float:
    """Normalized symmetric correlation of ``x`` and ``y`` in state ``rho``.

    Returns a value in [-1, 1], exactly symmetric in its operator
    arguments and invariant under affine maps ``x -> a x + b`` with
    ``a > 0``.

    Raises
    ------
    DegenerateObservable
        If either operator has spread at or below ``DEGENERACY_THRESHOLD``.
    NumericalFailure
        If the value overshoots the unit interval by more than
        ``CLAMP_BAND`` (which indicates an upstream bug, not roundoff).
    """
    dx = _spread_or_raise(rho, x)
    dy = _spread_or_raise(rho, y)
    raw = (
        symmetrized_product_expectation(rho, x, y) - expectation(rho, x) * expectation(rho, y)
    ) / (dx * dy)
    return _clamp_unit(raw)


def complex_correlation(
    rho: DensityMatrix, x: HermitianOperator, y: HermitianOperator
) -> complex:
    """Unsymmetrized correlation ``(<X Y> - <X><Y>) / (dX dY)``.

    For Hermitian inputs the modulus stays within 1 (up to roundoff), the
    real part equals :func:`generalized_correlation`, and swapping the
    operators conjugates the value.
    """
    dx = _spread_or_raise(rho, x)
    dy = _spread_or_raise(rho, y)
    product_mean = complex(np.einsum("ij,jk,ki->", rho.matrix, x.matrix, y.matrix))
    value = (product_mean - expectation(rho, x) * expectation(rho, y)) / (dx * dy)
    if abs(value) > 1.0 + CLAMP_BAND:
        raise NumericalFailure(f"complex correlation modulus {abs(value)!r} exceeds 1")
    return value


@dataclass(frozen=True, eq=False)
class CorrelationMatrix:
    """Real symmetric matrix of pairwise correlations with unit diagonal.

    Construction checks symmetry, the unit diagonal and the entry range;
    positive semidefiniteness is the product invariant of
    :func:`build_correlation_matrix` and is checked separately through
    :func:`psd_check`, so that raw user matrices violating it can still be
    examined.
    """

    entries: np.ndarray

    def __post_init__(self) -> None:
        arr = np.array(self.entries, dtype=float)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise ValueError(f"expected a square matrix, got shape {arr.shape}")
        if not np.all(np.isfinite(arr)):
            raise ValueError("correlation entries must be finite")
        if float(np.abs(arr - arr.T).max()) > 1e-12:
            raise ValueError("correlation matrix must be symmetric")
        if float(np.abs(np.diag(arr) - 1.0).max()) > 1e-12:
            raise ValueError("correlation matrix must have a unit diagonal")
        if float(np.abs(arr).max()) > 1.0 + CLAMP_BAND:
            raise ValueError("correlation entries must lie in [-1, 1]")
        arr.setflags(write=False)
        object.__setattr__(self, "entries", arr)

    @property
    def n(self) -> int:
        return self.entries.shape[0]


def build_correlation_matrix(
    rho: DensityMatrix, ops: Sequence[HermitianOperator]
) -> CorrelationMatrix:
    """Pairwise :func:`generalized_correlation` matrix over ``ops``.

    The diagonal is set to exactly 1; off-diagonal entries are computed once
    per unordered pair, so the result is symmetric by construction.
    """
    if not ops:
        raise ValueError("need at least one operator")
    n = len(ops)
    entries = np.eye(n)
    for i in range(n):
        for j in range(i + 1, n):
            entries[i, j] = entries[j, i] = generalized_correlation(rho, ops[i], ops[j])
    return CorrelationMatrix(entries)


class PsdCheck(NamedTuple):
    min_eigenvalue: float
    is_psd: bool


class SchurCheck(NamedTuple):
    residual: np.ndarray
    is_psd: bool


def _entries_of(matrix) -> np.ndarray:
    return matrix.entries if isinstance(matrix, CorrelationMatrix) else np.asarray(matrix, float)


def psd_check(matrix, tol: float = PSD_TOLERANCE) -> PsdCheck:
    """Smallest eigenvalue of a symmetric matrix and whether it clears ``-tol``."""
    entries = _entries_of(matrix)
    try:
        smallest = float(np.linalg.eigvalsh(entries).min())
    except np.linalg.LinAlgError as exc:
        raise NumericalFailure("eigenvalue computation did not converge") from exc
    return PsdCheck(smallest, smallest >= -tol)


def schur_complement_check(
    matrix, pivot_index: int = 0, tol: float = PSD_TOLERANCE
) -> SchurCheck:
    """Eliminate one unit pivot of a 3x3 correlation matrix and test the rest.

    With a unit pivot the complement of the remaining 2x2 block is simply
    ``block - v v^T`` where ``v`` is the pivot's off-diagonal column; the
    full matrix is PSD exactly when that residual is.
    """
    entries = _entries_of(matrix)
    if entries.shape != (3, 3):
        raise ValueError(f"expected a 3x3 matrix, got shape {entries.shape}")
    if pivot_index not in (0, 1, 2):
        raise ValueError(f"pivot_index must be 0, 1 or 2, got {pivot_index}")
    if abs(entries[pivot_index, pivot_index] - 1.0) > 1e-12:
        raise ValueError("pivot diagonal entry must be 1")
    rest = [k for k in range(3) if k != pivot_index]
    v = entries[rest, pivot_index]
    residual = entries[np.ix_(rest, rest)] - np.outer(v, v)
    try:
        smallest = float(np.linalg.eigvalsh(residual).min())
    except np.linalg.LinAlgError as exc:
        raise NumericalFailure("eigenvalue computation did not converge") from exc
    return SchurCheck(residual, smallest >= -tol)
