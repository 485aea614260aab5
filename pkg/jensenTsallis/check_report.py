"""
Outcome records for numerical checks of inequalities and identities.
"""
import math
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, Optional

import numpy as np


def to_jsonable(value: Any) -> Any:
    """Recursively turn numpy values and domain objects into plain JSON types."""
    if hasattr(value, "to_dict"):
        return to_jsonable(value.to_dict())
    if isinstance(value, np.ndarray):
        return [to_jsonable(v) for v in value.tolist()]
    if isinstance(value, (np.floating, float)):
        value = float(value)
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        if math.isnan(value):
            return "nan"
        return value
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    return value


def format_number(value: float) -> str:
    """12 significant digits; infinities as `inf` / `-inf`."""
    value = float(value)
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    return format(value, ".12g")


@dataclass
class CheckReport:
    """
    Result of a sampled check: the largest violation seen and the input that produced it.

    verdict is "pass" iff worst_violation <= tolerance.
    """
    name: str
    samples: int
    worst_violation: float
    tolerance: float
    witness: Dict[str, Any] = field(default_factory=dict)
    seed: Optional[int] = None
    detail: str = ""
    verdict: str = field(init=False)

    def __post_init__(self):
        passed = not math.isnan(self.worst_violation) and self.worst_violation <= self.tolerance
        self.verdict = "pass" if passed else "fail"

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"

    def to_record(self) -> str:
        """Line-oriented text record."""
        record = (f"name={self.name} verdict={self.verdict} "
                  f"worst_violation={format_number(self.worst_violation)} "
                  f"samples={self.samples} seed={self.seed}")
        if self.detail:
            record += f" detail={self.detail!r}"
        return record

    def to_dict(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "verdict": self.verdict,
            "worst_violation": to_jsonable(self.worst_violation),
            "tolerance": self.tolerance,
            "samples": self.samples,
            "seed": self.seed,
            "detail": self.detail,
            "witness": to_jsonable(self.witness),
        }


class ViolationTracker:
    """
    Accumulates violations of one check, keeping the worst value and its witness.
    """

    def __init__(self, name: str, tolerance: float, seed: Optional[int] = None):
        self.name = name
        self.tolerance = tolerance
        self.seed = seed
        self.samples = 0
        self.worst = -math.inf
        self.witness: Dict[str, Any] = {}
        self.details = []

    def observe(self, violation: float, **witness: Any) -> None:
        """Record one sample; violation > 0 beyond tolerance means the claim failed."""
        self.samples += 1
        violation = float(violation)
        if math.isnan(violation) or violation > self.worst:
            if not math.isnan(self.worst):
                self.worst = violation
                self.witness = to_jsonable(witness)

    def observe_batch(self, violations: np.ndarray,
                      witness: Callable[[int], Dict[str, Any]]) -> None:
        """
        Record a vector of samples at once. `witness(k)` is only built for the
        sample k that becomes the new worst.
        """
        violations = np.asarray(violations, dtype=float).ravel()
        if violations.size == 0:
            return
        self.samples += violations.size
        nan = np.flatnonzero(np.isnan(violations))
        index = int(nan[0]) if nan.size else int(np.argmax(violations))
        violation = float(violations[index])
        if math.isnan(violation) or violation > self.worst:
            if not math.isnan(self.worst):
                self.worst = violation
                self.witness = to_jsonable(witness(index))

    def note(self, text: str) -> None:
        self.details.append(text)

    def report(self) -> CheckReport:
        worst = self.worst if self.samples else 0.0
        return CheckReport(
            name=self.name,
            samples=self.samples,
            worst_violation=worst,
            tolerance=self.tolerance,
            witness=self.witness,
            seed=self.seed,
            detail="; ".join(self.details),
        )
