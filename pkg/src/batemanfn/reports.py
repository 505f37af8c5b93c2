"""Result records shared by the analysis, bounds and CLI layers."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Optional

from .exactpoly import Enclosure


def frac_str(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def enc_json(e: Optional[Enclosure]) -> Optional[dict]:
    return None if e is None else e.to_json()


@dataclass
class Violation:
    n: int
    t: Any  # Fraction, float or Enclosure
    lhs: Enclosure
    rhs: Enclosure
    reason: str = "violated"

    def to_json(self) -> dict:
        t = self.t
        if isinstance(t, Enclosure):
            t = t.to_json()
        elif isinstance(t, Fraction):
            t = frac_str(t)
        return {"n": self.n, "t": t, "lhs": self.lhs.to_json(), "rhs": self.rhs.to_json(), "reason": self.reason}


@dataclass
class CheckResult:
    name: str
    passed: bool
    margin: Optional[Enclosure] = None
    detail: str = ""

    def to_json(self) -> dict:
        return {"name": self.name, "passed": self.passed, "margin": enc_json(self.margin), "detail": self.detail}


@dataclass
class BoundReport:
    """Outcome of checking one inequality (or a family of checks) over a range of n."""

    bound_id: str
    n_range: tuple[int, int]
    sampling: str
    worst_margin: Optional[Enclosure] = None
    violations: list[Violation] = field(default_factory=list)
    checks: list[CheckResult] = field(default_factory=list)
    excluded: list = field(default_factory=list)  # n, or (clause, n) for partial domains
    samples: int = 0

    @property
    def passed(self) -> bool:
        return not self.violations and all(c.passed for c in self.checks)

    def note_margin(self, m: Enclosure) -> None:
        if self.worst_margin is None or m.lo < self.worst_margin.lo:
            self.worst_margin = m

    def to_json(self) -> dict:
        return {
            "bound": self.bound_id,
            "n_range": list(self.n_range),
            "sampling": self.sampling,
            "passed": self.passed,
            "worst_margin": enc_json(self.worst_margin),
            "violations": [v.to_json() for v in self.violations],
            "checks": [c.to_json() for c in self.checks],
            "excluded": [list(e) if isinstance(e, tuple) else e for e in self.excluded],
            "samples": self.samples,
        }
