"""
Report objects shared by the verifiers.

Checks never raise on a failed identity; they record the largest deviation
seen and the input that produced it.
"""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

DEFAULT_TOL = 1e-9


@dataclass
class CheckReport:
    """One named identity: max absolute deviation and the worst witness."""
    name: str
    max_deviation: float = 0.0
    witness: Optional[str] = None
    tol: float = DEFAULT_TOL
    skipped: Optional[str] = None
    checked: int = 0

    @property
    def passed(self) -> bool:
        return self.skipped is not None or self.max_deviation <= self.tol

    def update(self, deviation: float, witness: str) -> None:
        self.checked += 1
        if deviation > self.max_deviation or (self.witness is None and deviation > self.tol):
            self.max_deviation = float(deviation)
            self.witness = witness

    def skip(self, reason: str) -> "CheckReport":
        self.skipped = reason
        return self

    def to_dict(self) -> Dict[str, Any]:
        out: Dict[str, Any] = {
            "check": self.name,
            "max_deviation": self.max_deviation,
            "pass": self.passed,
        }
        if self.skipped:
            out["skipped"] = self.skipped
        elif not self.passed and self.witness:
            out["witness"] = self.witness
        return out


@dataclass
class SuiteReport:
    """A named group of checks, merged by max-reduction."""
    suite: str
    checks: List[CheckReport] = field(default_factory=list)

    def new_check(self, name: str, tol: float = DEFAULT_TOL) -> CheckReport:
        check = CheckReport(name=name, tol=tol)
        self.checks.append(check)
        return check

    @property
    def max_deviation(self) -> float:
        return max((c.max_deviation for c in self.checks if not c.skipped), default=0.0)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failing(self) -> List[CheckReport]:
        return [c for c in self.checks if not c.passed]

    def to_dict(self) -> Dict[str, Any]:
        out: Dict[str, Any] = {
            "suite": self.suite,
            "max_deviation": self.max_deviation,
            "pass": self.passed,
        }
        failing = self.failing()
        if failing:
            out["witness"] = f"{failing[0].name}: {failing[0].witness}"
        skipped = [c.name for c in self.checks if c.skipped]
        if skipped:
            out["skipped"] = skipped
        out["checks"] = [c.to_dict() for c in self.checks]
        return out


def merge_passed(suites: List[SuiteReport]) -> bool:
    return all(s.passed for s in suites)
