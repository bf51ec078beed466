"""Dense complex operator algebra for finite-dimensional quantum systems.

Observables are Hermitian matrices, states are density matrices, and time
dependence is carried by the observables: ``Q_t = U^† Q U`` with
``U = exp(-i H t)`` and ``hbar = 1``, so only dimensionless phases
``omega * t`` ever enter. All wrappers hold validated, read-only numpy
arrays and every operation is a pure function; the intended regime is
dimension 2 through 16.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .errors import (
    DimensionMismatch,
    NotDensityMatrix,
    NotHermitian,
    NumericalFailure,
    ZeroVector,
)

__all__ = [
    "HERMITICITY_TOL",
    "TRACE_TOL",
    "EIGENVALUE_FLOOR",
    "PAULI_X",
    "PAULI_Y",
    "PAULI_Z",
    "HermitianOperator",
    "DensityMatrix",
    "Hamiltonian",
    "make_hermitian",
    "make_state",
    "pure_state",
    "maximally_mixed",
    "expectation",
    "symmetrized_product_expectation",
    "std_dev",
    "evolve",
    "evolve_many",
    "tensor_lift",
    "hermitian_eigendecomposition",
]

# Double-precision headroom at the dimensions in scope.
HERMITICITY_TOL = 1e-10  # relative to the largest entry magnitude
TRACE_TOL = 1e-10
EIGENVALUE_FLOOR = -1e-10


def _readonly(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


PAULI_X = _readonly(np.array([[0, 1], [1, 0]], dtype=complex))
PAULI_Y = _readonly(np.array([[0, -1j], [1j, 0]], dtype=complex))
PAULI_Z = _readonly(np.array([[1, 0], [0, -1]], dtype=complex))


def _as_square_complex(m) -> np.ndarray:
    arr = np.array(m, dtype=complex)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("matrix entries must be finite")
    return arr


def _hermiticity_defect(arr: np.ndarray) -> float:
    return float(np.abs(arr - arr.conj().T).max())


def _check_same_dim(a, b) -> None:
    if a.dim != b.dim:
        raise DimensionMismatch(f"dimension mismatch: {a.dim} vs {b.dim}")


@dataclass(frozen=True, eq=False)
class HermitianOperator:
    """A validated Hermitian matrix representing an observable.

    Parameters
    ----------
    matrix : array_like
        Square complex matrix. Accepted when the largest entry of
        ``M - M^†`` does not exceed ``HERMITICITY_TOL`` times the largest
        entry magnitude of ``M``.

    Raises
    ------
    NotHermitian
        If the conjugate-transpose defect exceeds tolerance.
    DimensionMismatch
        If the input is not square.
    """

    matrix: np.ndarray

    def __post_init__(self) -> None:
        arr = _as_square_complex(self.matrix)
        defect = _hermiticity_defect(arr)
        if defect > HERMITICITY_TOL * float(np.abs(arr).max()):
            raise NotHermitian(f"conjugate-transpose defect {defect:.3e} exceeds tolerance")
        object.__setattr__(self, "matrix", _readonly(arr))

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """A validated quantum state: Hermitian, unit trace, positive semidefinite.

    Eigenvalues are allowed to dip to ``EIGENVALUE_FLOOR`` to absorb roundoff
    from upstream constructions.
    """

    matrix: np.ndarray

    def __post_init__(self) -> None:
        arr = _as_square_complex(self.matrix)
        defect = _hermiticity_defect(arr)
        if defect > HERMITICITY_TOL * float(np.abs(arr).max()):
            raise NotDensityMatrix(f"state is not Hermitian (defect {defect:.3e})")
        trace = complex(np.trace(arr))
        if abs(trace - 1.0) > TRACE_TOL:
            raise NotDensityMatrix(f"trace {trace} differs from 1 beyond tolerance")
        try:
            smallest = float(np.linalg.eigvalsh(arr).min())
        except np.linalg.LinAlgError as exc:
            raise NumericalFailure("eigenvalue check did not converge") from exc
        if smallest < EIGENVALUE_FLOOR:
            raise NotDensityMatrix(f"negative eigenvalue {smallest:.3e}")
        object.__setattr__(self, "matrix", _readonly(arr))

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]


@dataclass(frozen=True, eq=False)
class Hamiltonian:
    """Generator of unitary dynamics, with ``hbar`` fixed to 1.

    Times fed to :func:`evolve` are therefore dimensionless phases divided by
    whatever frequency scale the matrix carries.
    """

    operator: HermitianOperator

    HBAR = 1.0

    @classmethod
    def from_matrix(cls, m) -> "Hamiltonian":
        return cls(make_hermitian(m))

    @property
    def dim(self) -> int:
        return self.operator.dim


def make_hermitian(m) -> HermitianOperator:
    """Validate ``m`` and wrap it as an observable."""
    return HermitianOperator(m)


def make_state(m) -> DensityMatrix:
    """Validate ``m`` and wrap it as a density matrix."""
    return DensityMatrix(m)


def pure_state(v) -> DensityMatrix:
    """Projector onto the ray of ``v``, normalized to unit trace.

    Raises
    ------
    ZeroVector
        If ``v`` has (numerically) zero norm.
    """
    vec = np.asarray(v, dtype=complex).reshape(-1)
    norm_sq = float(np.sum(np.abs(vec) ** 2))
    if norm_sq < 1e-300:
        raise ZeroVector("cannot normalize a zero state vector")
    return DensityMatrix(np.outer(vec, vec.conj()) / norm_sq)


def maximally_mixed(dim: int) -> DensityMatrix:
    """Identity over ``dim``: the state with no information at all."""
    if dim < 1:
        raise ValueError(f"dimension must be positive, got {dim}")
    return DensityMatrix(np.eye(dim, dtype=complex) / dim)


def expectation(rho: DensityMatrix, x: HermitianOperator) -> float:
    """Mean value ``Tr(rho X)``.

    The trace of a product of a state with a Hermitian operator is real up
    to roundoff; the imaginary residue (below 1e-10 for validated inputs)
    is discarded.
    """
    _check_same_dim(rho, x)
    return float(np.einsum("ij,ji->", rho.matrix, x.matrix).real)


def symmetrized_product_expectation(
    rho: DensityMatrix, x: HermitianOperator, y: HermitianOperator
) -> float:
    """Half the mean anticommutator, ``Tr(rho (XY + YX)) / 2``.

    Real by construction and exactly symmetric under swapping ``x`` and
    ``y`` (the summands commute as floats).
    """
    _check_same_dim(rho, x)
    _check_same_dim(rho, y)
    sym = x.matrix @ y.matrix + y.matrix @ x.matrix
    return float(0.5 * np.einsum("ij,ji->", rho.matrix, sym).real)


def std_dev(rho: DensityMatrix, x: HermitianOperator) -> float:
    """Spread ``sqrt(<X^2> - <X>^2)`` of ``x`` in ``rho``.

    A slightly negative variance from cancellation (within 1e-12 relative
    to the second moment) clamps to zero; anything worse signals a broken
    input and raises ``NumericalFailure``.
    """
    _check_same_dim(rho, x)
    second = float(np.einsum("ij,jk,ki->", rho.matrix, x.matrix, x.matrix).real)
    mean = expectation(rho, x)
    variance = second - mean * mean
    if variance < -1e-12 * max(1.0, abs(second)):
        raise NumericalFailure(f"variance {variance:.3e} is negative beyond the clamp band")
    return float(np.sqrt(max(variance, 0.0)))


def hermitian_eigendecomposition(x: HermitianOperator) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (ascending) and orthonormal eigenvectors of ``x``.

    Returns
    -------
    (eigenvalues, eigenvectors)
        ``eigenvectors[:, k]`` belongs to ``eigenvalues[k]``.
    """
    try:
        return np.linalg.eigh(x.matrix)
    except np.linalg.LinAlgError as exc:
        raise NumericalFailure("eigendecomposition did not converge") from exc


def _conjugated(q: np.ndarray, u: np.ndarray) -> HermitianOperator:
    out = u.conj().T @ q @ u
    # unitary conjugation preserves Hermiticity; fold roundoff skew back in
    out = 0.5 * (out + out.conj().T)
    return HermitianOperator(out)


def evolve(q: HermitianOperator, hamiltonian: Hamiltonian, t: float) -> HermitianOperator:
    """Observable ``q`` advanced by time ``t``: ``U^† q U``, ``U = exp(-i H t)``.

    The propagator comes from the spectral decomposition of ``H``, exact up
    to the eigensolver; ``t = 0`` returns ``q`` unchanged. The spectrum of
    the result equals the spectrum of ``q``.
    """
    return evolve_many(q, hamiltonian, (t,))[0]


def evolve_many(
    q: HermitianOperator, hamiltonian: Hamiltonian, times: Iterable[float]
) -> list[HermitianOperator]:
    """Like :func:`evolve` for several times, decomposing ``H`` only once."""
    _check_same_dim(q, hamiltonian)
    ts = [float(t) for t in times]
    decomposition: tuple[np.ndarray, np.ndarray] | None = None
    out: list[HermitianOperator] = []
    for t in ts:
        if t == 0.0:
            out.append(q)
            continue
        if decomposition is None:
            decomposition = hermitian_eigendecomposition(hamiltonian.operator)
        energies, modes = decomposition
        u = (modes * np.exp(-1j * energies * t)) @ modes.conj().T
        out.append(_conjugated(q.matrix, u))
    return out


def tensor_lift(op: HermitianOperator, slot: str, other_dim: int) -> HermitianOperator:
    """Embed a local operator in a bipartite space: ``op ⊗ I`` or ``I ⊗ op``.

    ``slot`` selects which factor the operator acts on (``"first"`` or
    ``"second"``); the identity fills the other one. Lifts into different
    slots commute exactly.
    """
    if other_dim < 1:
        raise ValueError(f"other_dim must be positive, got {other_dim}")
    eye = np.eye(other_dim, dtype=complex)
    if slot == "first":
        return HermitianOperator(np.kron(op.matrix, eye))
    if slot == "second":
        return HermitianOperator(np.kron(eye, op.matrix))
    raise ValueError(f"slot must be 'first' or 'second', got {slot!r}")
