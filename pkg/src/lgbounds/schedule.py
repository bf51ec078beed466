"""Measurement schedules: four times plus an angular-frequency context."""

from __future__ import annotations

import math
from dataclasses import dataclass

__all__ = ["MeasurementSchedule"]


@dataclass(frozen=True)
class MeasurementSchedule:
    """Four measurement times and the angular frequency they are read against.

    No ordering is imposed: every formula downstream is defined for
    arbitrary real times.
    """

    t1: float
    t2: float
    t3: float
    t4: float
    omega: float = 1.0

    def __post_init__(self) -> None:
        for name in ("t1", "t2", "t3", "t4"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")
        if not (math.isfinite(self.omega) and self.omega > 0.0):
            raise ValueError(f"omega must be a positive finite frequency, got {self.omega}")

    @property
    def times(self) -> tuple[float, float, float, float]:
        return (self.t1, self.t2, self.t3, self.t4)
