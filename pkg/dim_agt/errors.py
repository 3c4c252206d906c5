from __future__ import annotations

from typing import Any


class DimAgtError(Exception):
    """Base class for every error raised by dim_agt."""


class SamplingExhausted(DimAgtError):
    def __init__(self, seed: int, attempts: int) -> None:
        super().__init__(f"no generic point found from seed {seed} after {attempts} rejections")
        self.seed = seed
        self.attempts = attempts


class ScalarModeError(DimAgtError, ValueError):
    pass


class LevelOverflow(DimAgtError, ValueError):
    def __init__(self, level: int, cap: int) -> None:
        super().__init__(f"state level {level} exceeds the cap {cap}")
        self.level = level
        self.cap = cap


class CostGuardError(DimAgtError, ValueError):
    pass


class EigenvalueCollision(DimAgtError, ArithmeticError):
    pass


class SingularSystem(DimAgtError, ArithmeticError):
    pass


class PoleAtZero(DimAgtError, ArithmeticError):
    pass


class EvaluationError(DimAgtError):
    """An evaluator failed at a specialization point; `point` is its descriptor."""

    def __init__(self, message: str, point: dict[str, Any]) -> None:
        super().__init__(f"{message} at {point}")
        self.point = point
