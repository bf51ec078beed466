"""Evaluation of every bound the correlation-matrix machinery implies.

Each check compares a measured quantity (lhs) against its ceiling (rhs) and
returns a :class:`BoundReport` carrying the margin ``rhs - lhs``. Margins
within ``REPORT_TOLERANCE`` of zero still count as satisfied; they are the
boundary cases where a bound is saturated, e.g. the four-term temporal sum
reaching ``2*sqrt(2)`` exactly when both auxiliary correlations vanish.

Raw-correlation entry points (``lgi_parameter`` and friends) only validate
ranges, not joint quantum realizability: that lets the arithmetic be tested
on its own. :func:`evaluate_schedule` is the physics-facing composition that
guarantees realizable inputs by computing everything from a state, an
observable and a Hamiltonian.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping

from .correlations import (
    CorrelationMatrix,
    build_correlation_matrix,
    complex_correlation,
    generalized_correlation,
    psd_check,
)
from .errors import OutOfRange
from .operators import DensityMatrix, Hamiltonian, HermitianOperator, evolve_many
from .schedule import MeasurementSchedule

__all__ = [
    "REPORT_TOLERANCE",
    "TWO_SQRT_TWO",
    "LgiCorrelations",
    "BlgCorrelations",
    "ComplexLgiCorrelations",
    "BoundReport",
    "ScheduleEvaluation",
    "BipartiteEvaluation",
    "lgi_parameter",
    "theorem1_bound",
    "theorem1_check",
    "intermediate_bounds",
    "tlm_single_check",
    "tlm_check",
    "complementarity_check",
    "blg_parameter",
    "theorem4_bound",
    "theorem4_check",
    "complex_lgi_bounds",
    "evaluate_schedule",
    "evaluate_bipartite_schedule",
]

REPORT_TOLERANCE = 1e-9
TWO_SQRT_TWO = 2.0 * math.sqrt(2.0)

# Equality of complex correlations is decided within this absolute band.
COMPLEX_EQUALITY_TOL = 1e-9


def _check_unit(name: str, value: float) -> float:
    value = float(value)
    if not (math.isfinite(value) and -1.0 <= value <= 1.0):
        raise OutOfRange(f"{name} must lie in [-1, 1], got {value}")
    return value


def _check_modulus(name: str, value: complex) -> complex:
    value = complex(value)
    if not (math.isfinite(value.real) and math.isfinite(value.imag)):
        raise OutOfRange(f"{name} must be finite, got {value}")
    if abs(value) > 1.0 + COMPLEX_EQUALITY_TOL:
        raise OutOfRange(f"{name} must have modulus at most 1, got |{value}| = {abs(value)}")
    return value


@dataclass(frozen=True)
class LgiCorrelations:
    """The six pairwise correlations of one observable at four times.

    ``cij`` is the correlation between measurements ``i`` and ``j``; the
    first four feed the cyclic sum, the last two are the auxiliary pair that
    controls how close to ``2*sqrt(2)`` that sum may get.
    """

    c12: float
    c23: float
    c34: float
    c14: float
    c13: float
    c24: float

    def __post_init__(self) -> None:
        for name in ("c12", "c23", "c34", "c14", "c13", "c24"):
            _check_unit(name, getattr(self, name))


@dataclass(frozen=True)
class BlgCorrelations:
    """Six correlations of a two-party, two-time measurement layout."""

    cA1A2: float
    cA1B2: float
    cB1B2: float
    cB1A2: float
    cA1B1: float
    cA2B2: float

    def __post_init__(self) -> None:
        for name in ("cA1A2", "cA1B2", "cB1B2", "cB1A2", "cA1B1", "cA2B2"):
            _check_unit(name, getattr(self, name))


@dataclass(frozen=True)
class ComplexLgiCorrelations:
    """Complex correlations for the unsymmetrized variant.

    Carries the four cyclic values, the auxiliary pair, and the three
    reversed-order values needed to decide whether the symmetry
    precondition of the complex bounds holds.
    """

    c12: complex
    c23: complex
    c34: complex
    c14: complex
    c13: complex
    c24: complex
    c21: complex
    c32: complex
    c43: complex

    def __post_init__(self) -> None:
        for name in ("c12", "c23", "c34", "c14", "c13", "c24", "c21", "c32", "c43"):
            _check_modulus(name, getattr(self, name))


@dataclass(frozen=True)
class BoundReport:
    """One evaluated inequality: lhs, rhs, margin and the verdict.

    ``satisfied`` is None when the report is not applicable (its
    precondition failed); no claim is made either way in that case.
    """

    name: str
    lhs: float
    rhs: float
    margin: float
    satisfied: bool | None
    inputs: Mapping[str, float] = field(default_factory=dict)
    applicable: bool = True

    @classmethod
    def evaluate(cls, name: str, lhs: float, rhs: float, inputs: Mapping[str, float]) -> "BoundReport":
        margin = rhs - lhs
        return cls(name, lhs, rhs, margin, margin >= -REPORT_TOLERANCE, dict(inputs))

    @classmethod
    def not_applicable(
        cls, name: str, lhs: float, rhs: float, inputs: Mapping[str, float]
    ) -> "BoundReport":
        return cls(name, lhs, rhs, rhs - lhs, None, dict(inputs), applicable=False)

    @property
    def boundary(self) -> bool:
        """True when the bound is saturated to within the report tolerance."""
        return self.applicable and abs(self.margin) <= REPORT_TOLERANCE


def lgi_parameter(c: LgiCorrelations) -> float:
    """Cyclic four-term sum ``|c12 + c23 + c34 - c14|`` in ``[0, 4]``."""
    return abs(c.c12 + c.c23 + c.c34 - c.c14)


def theorem1_bound(c13: float, c24: float) -> float:
    """Ceiling ``2 sqrt(1 + sqrt(1 - max(c13^2, c24^2)))`` for the cyclic sum.

    Lies in ``[2, 2*sqrt(2)]`` and reaches the top exactly when both
    auxiliary correlations vanish.
    """
    c13 = _check_unit("c13", c13)
    c24 = _check_unit("c24", c24)
    largest_sq = max(c13 * c13, c24 * c24)
    return 2.0 * math.sqrt(1.0 + math.sqrt(1.0 - largest_sq))


def theorem1_check(c: LgiCorrelations) -> BoundReport:
    """Cyclic sum against its auxiliary-correlation ceiling."""
    lhs = lgi_parameter(c)
    rhs = theorem1_bound(c.c13, c.c24)
    return BoundReport.evaluate("theorem1", lhs, rhs, {"lgi": lhs, "c13": c.c13, "c24": c.c24})


def intermediate_bounds(c: LgiCorrelations) -> tuple[BoundReport, ...]:
    """The four two-term chain inequalities behind the cyclic-sum ceiling.

    Each bounds the magnitude of a two-correlation combination by
    ``sqrt(2 (1 +/- aux))``, where ``aux`` is whichever auxiliary
    correlation shares an index with both terms.
    """
    echo = {"c12": c.c12, "c23": c.c23, "c34": c.c34, "c14": c.c14, "c13": c.c13, "c24": c.c24}
    return (
        BoundReport.evaluate(
            "intermediate_c12_c23", abs(c.c12 + c.c23), math.sqrt(2.0 * (1.0 + c.c13)), echo
        ),
        BoundReport.evaluate(
            "intermediate_c34_c14", abs(c.c34 - c.c14), math.sqrt(2.0 * (1.0 - c.c13)), echo
        ),
        BoundReport.evaluate(
            "intermediate_c23_c34", abs(c.c23 + c.c34), math.sqrt(2.0 * (1.0 + c.c24)), echo
        ),
        BoundReport.evaluate(
            "intermediate_c12_c14", abs(c.c12 - c.c14), math.sqrt(2.0 * (1.0 - c.c24)), echo
        ),
    )


def tlm_single_check(c_shared1: float, c_shared3: float, c13: float, name: str = "tlm_single") -> BoundReport:
    """Single-pivot product rule.

    For a pivot operator correlated with the outer pair by ``c_shared1`` and
    ``c_shared3``, the outer correlation ``c13`` can differ from the product
    of the shared ones by at most ``sqrt((1 - c_shared1^2)(1 - c_shared3^2))``.
    """
    c_shared1 = _check_unit("c_shared1", c_shared1)
    c_shared3 = _check_unit("c_shared3", c_shared3)
    c13 = _check_unit("c13", c13)
    lhs = abs(c13 - c_shared1 * c_shared3)
    rhs = math.sqrt((1.0 - c_shared1 * c_shared1) * (1.0 - c_shared3 * c_shared3))
    return BoundReport.evaluate(
        name, lhs, rhs, {"c_shared1": c_shared1, "c_shared3": c_shared3, "c13": c13}
    )


def tlm_check(c21: float, c23: float, c41: float, c43: float) -> BoundReport:
    """Two-pivot product rule: the difference of shared-correlation products
    is bounded by the sum of the two complementary square roots."""
    c21 = _check_unit("c21", c21)
    c23 = _check_unit("c23", c23)
    c41 = _check_unit("c41", c41)
    c43 = _check_unit("c43", c43)
    lhs = abs(c21 * c23 - c41 * c43)
    rhs = math.sqrt((1.0 - c21 * c21) * (1.0 - c23 * c23)) + math.sqrt(
        (1.0 - c41 * c41) * (1.0 - c43 * c43)
    )
    return BoundReport.evaluate(
        "theorem2", lhs, rhs, {"c21": c21, "c23": c23, "c41": c41, "c43": c43}
    )


def complementarity_check(lgi: float, c13: float, c24: float) -> BoundReport:
    """Quadratic trade-off: normalized to ``2*sqrt(2)``, the cyclic sum and
    both auxiliary correlations fit inside the unit ball together."""
    lgi = float(lgi)
    if not (math.isfinite(lgi) and 0.0 <= lgi <= 4.0):
        raise OutOfRange(f"lgi parameter must lie in [0, 4], got {lgi}")
    c13 = _check_unit("c13", c13)
    c24 = _check_unit("c24", c24)
    lhs = (lgi * lgi + c13 * c13 + c24 * c24) / 8.0
    return BoundReport.evaluate(
        "theorem3", lhs, 1.0, {"lgi": lgi, "c13": c13, "c24": c24}
    )


def blg_parameter(c: BlgCorrelations) -> float:
    """Hybrid two-party sum ``|cA1A2 + cA1B2 + cB1B2 - cB1A2|`` in ``[0, 4]``."""
    return abs(c.cA1A2 + c.cA1B2 + c.cB1B2 - c.cB1A2)


def theorem4_bound(cA1B1: float, cA2B2: float) -> float:
    """Same ceiling as :func:`theorem1_bound`, keyed by the equal-time
    cross-party correlations."""
    return theorem1_bound(_check_unit("cA1B1", cA1B1), _check_unit("cA2B2", cA2B2))


def theorem4_check(c: BlgCorrelations) -> BoundReport:
    """Two-party sum against its cross-correlation ceiling."""
    lhs = blg_parameter(c)
    rhs = theorem4_bound(c.cA1B1, c.cA2B2)
    return BoundReport.evaluate(
        "theorem4", lhs, rhs, {"blg": lhs, "cA1B1": c.cA1B1, "cA2B2": c.cA2B2}
    )


def complex_lgi_bounds(
    c: ComplexLgiCorrelations,
) -> tuple[bool, tuple[BoundReport, BoundReport]]:
    """Ceiling and ball constraint for the complex-valued cyclic sum.

    Both bounds require a symmetry precondition: the middle pair must
    correlate order-independently, or both edge pairs must. When it fails
    the reports come back flagged not applicable, with no satisfaction
    claim either way.
    """
    met = abs(c.c23 - c.c32) <= COMPLEX_EQUALITY_TOL or (
        abs(c.c12 - c.c21) <= COMPLEX_EQUALITY_TOL
        and abs(c.c34 - c.c43) <= COMPLEX_EQUALITY_TOL
    )
    lvalue = abs(c.c12 + c.c23 + c.c34 - c.c14)
    # the modulus tolerance band allows |Re| to poke past 1 by <= 1e-9
    re13 = min(max(c.c13.real, -1.0), 1.0)
    re24 = min(max(c.c24.real, -1.0), 1.0)
    ceiling = theorem1_bound(re13, re24)
    ball = (lvalue * lvalue + re13 * re13 + re24 * re24) / 8.0
    echo = {"lgi_modulus": lvalue, "re_c13": re13, "re_c24": re24}
    if met:
        reports = (
            BoundReport.evaluate("appendix_lgi", lvalue, ceiling, echo),
            BoundReport.evaluate("appendix_complementarity", ball, 1.0, echo),
        )
    else:
        reports = (
            BoundReport.not_applicable("appendix_lgi", lvalue, ceiling, echo),
            BoundReport.not_applicable("appendix_complementarity", ball, 1.0, echo),
        )
    return met, reports


@dataclass(frozen=True)
class ScheduleEvaluation:
    """Everything :func:`evaluate_schedule` derives from one schedule."""

    schedule: MeasurementSchedule
    correlations: LgiCorrelations
    lgi: float
    theorem1: BoundReport
    intermediates: tuple[BoundReport, ...]
    tlm_singles: tuple[BoundReport, ...]
    theorem2: BoundReport
    theorem3: BoundReport
    appendix_applicable: bool
    appendix: tuple[BoundReport, ...]
    matrix: CorrelationMatrix
    min_eigenvalue: float
    psd: BoundReport

    @property
    def reports(self) -> tuple[BoundReport, ...]:
        return (
            self.theorem1,
            *self.intermediates,
            *self.tlm_singles,
            self.theorem2,
            self.theorem3,
            *self.appendix,
            self.psd,
        )


def evaluate_schedule(
    rho: DensityMatrix,
    observable: HermitianOperator,
    hamiltonian: Hamiltonian,
    times: MeasurementSchedule,
) -> ScheduleEvaluation:
    """Evolve one observable to four times and run the full report suite.

    Produces the evolved operators, their 4x4 correlation matrix (with its
    smallest eigenvalue as a PSD report), the cyclic-sum report, the four
    chain intermediates, both single-pivot product rules, the two-pivot
    product rule, the ball constraint, and the complex-variant reports.

    Raises whatever the correlation layer raises; in particular
    ``DegenerateObservable`` when the evolved observable has no spread in
    ``rho`` at one of the times.
    """
    q1, q2, q3, q4 = evolve_many(observable, hamiltonian, times.times)
    matrix = build_correlation_matrix(rho, (q1, q2, q3, q4))
    e = matrix.entries
    corr = LgiCorrelations(
        c12=e[0, 1], c23=e[1, 2], c34=e[2, 3], c14=e[0, 3], c13=e[0, 2], c24=e[1, 3]
    )
    lvalue = lgi_parameter(corr)
    th1 = theorem1_check(corr)
    chain = intermediate_bounds(corr)
    singles = (
        tlm_single_check(corr.c12, corr.c23, corr.c13, name="tlm_single_q2"),
        tlm_single_check(corr.c14, corr.c34, corr.c13, name="tlm_single_q4"),
    )
    th2 = tlm_check(corr.c12, corr.c23, corr.c14, corr.c34)
    th3 = complementarity_check(lvalue, corr.c13, corr.c24)
    def cc(a, b):
        return complex_correlation(rho, a, b)

    complex_corr = ComplexLgiCorrelations(
        c12=cc(q1, q2),
        c23=cc(q2, q3),
        c34=cc(q3, q4),
        c14=cc(q1, q4),
        c13=cc(q1, q3),
        c24=cc(q2, q4),
        c21=cc(q2, q1),
        c32=cc(q3, q2),
        c43=cc(q4, q3),
    )
    applicable, appendix = complex_lgi_bounds(complex_corr)
    min_eig, _ = psd_check(matrix)
    psd_report = BoundReport.evaluate(
        "correlation_matrix_psd", -min_eig, 0.0, {"min_eigenvalue": min_eig}
    )
    return ScheduleEvaluation(
        schedule=times,
        correlations=corr,
        lgi=lvalue,
        theorem1=th1,
        intermediates=chain,
        tlm_singles=singles,
        theorem2=th2,
        theorem3=th3,
        appendix_applicable=applicable,
        appendix=appendix,
        matrix=matrix,
        min_eigenvalue=min_eig,
        psd=psd_report,
    )


@dataclass(frozen=True)
class BipartiteEvaluation:
    """Result of the two-party analogue of :func:`evaluate_schedule`."""

    schedule: MeasurementSchedule
    correlations: BlgCorrelations
    blg: float
    theorem4: BoundReport


def evaluate_bipartite_schedule(
    rho: DensityMatrix,
    alice_observable: HermitianOperator,
    bob_observable: HermitianOperator,
    hamiltonian: Hamiltonian,
    times: MeasurementSchedule,
) -> BipartiteEvaluation:
    """Evolve one observable per party and evaluate the two-party bound.

    Alice's operator is read at ``t1`` and ``t2``, Bob's at ``t3`` and
    ``t4``; the ceiling only needs the six pairwise correlations to come
    from a common state, so four independent times are allowed (the
    equal-time layout is the special case ``t3 = t1``, ``t4 = t2``).
    """
    a1, a2 = evolve_many(alice_observable, hamiltonian, (times.t1, times.t2))
    b1, b2 = evolve_many(bob_observable, hamiltonian, (times.t3, times.t4))

    def corr(x, y):
        return generalized_correlation(rho, x, y)

    blg_corr = BlgCorrelations(
        cA1A2=corr(a1, a2),
        cA1B2=corr(a1, b2),
        cB1B2=corr(b1, b2),
        cB1A2=corr(b1, a2),
        cA1B1=corr(a1, b1),
        cA2B2=corr(a2, b2),
    )
    return BipartiteEvaluation(
        schedule=times,
        correlations=blg_corr,
        blg=blg_parameter(blg_corr),
        theorem4=theorem4_check(blg_corr),
    )
