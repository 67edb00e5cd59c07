from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Optional


class OrderStatus(str, Enum):
    EXACT = "exact"
    GREATER_THAN = "greater-than"


class OutcomeKind(str, Enum):
    ELEMENT = "element"
    FACTOR = "factor"
    PRIME = "prime"


class UniformityStatus(str, Enum):
    UNIFORM = "uniform"
    FACTOR = "factor"


@dataclass(frozen=True)
class OrderResult:
    status: OrderStatus
    value: int

    @classmethod
    def exact(cls, m: int) -> "OrderResult":
        return cls(OrderStatus.EXACT, m)

    @classmethod
    def greater_than(cls, bound: int) -> "OrderResult":
        return cls(OrderStatus.GREATER_THAN, bound)

    @property
    def is_exact(self) -> bool:
        return self.status is OrderStatus.EXACT

    def __str__(self) -> str:
        return f"{self.status.value} {self.value}"


@dataclass(frozen=True)
class SmallFactorResult:
    found: Optional[int]
    scanned_bound: int


@dataclass(frozen=True)
class Outcome:
    kind: OutcomeKind
    value: Optional[int] = None
    target_order: Optional[int] = None

    @classmethod
    def element(cls, a: int, bound: int) -> "Outcome":
        return cls(OutcomeKind.ELEMENT, a, bound)

    @classmethod
    def factor(cls, f: int) -> "Outcome":
        return cls(OutcomeKind.FACTOR, f)

    @classmethod
    def prime(cls) -> "Outcome":
        return cls(OutcomeKind.PRIME)

    def __str__(self) -> str:
        if self.kind is OutcomeKind.PRIME:
            return "prime"
        return f"{self.kind.value} {self.value}"

    def to_dict(self) -> dict[str, Optional[str]]:
        return {
            "outcome": self.kind.value,
            "value": None if self.value is None else str(self.value),
            "target_order": None if self.target_order is None else str(self.target_order),
        }


@dataclass(frozen=True)
class UniformityResult:
    status: UniformityStatus
    factor: Optional[int] = None

    @property
    def is_uniform(self) -> bool:
        return self.status is UniformityStatus.UNIFORM


@dataclass
class HighOrderState:
    M: int = 1
    a: int = 2
    iteration: int = 0


@dataclass(frozen=True)
class IterationRecord:
    a: int
    order: int
    lcm_after: int
    scan_span: int


@dataclass
class HighOrderTrace:
    iterations: list[IterationRecord] = field(default_factory=list)
    window_violations: list[tuple[int, int]] = field(default_factory=list)
    final_step: str = ""

    @property
    def max_scan_span(self) -> int:
        return max((record.scan_span for record in self.iterations), default=0)

