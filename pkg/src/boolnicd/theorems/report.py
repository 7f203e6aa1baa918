from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from ..exactnum import format_rational


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of checking one claim at one parameter point.

    ``lhs``/``rhs`` hold exact values when the claim compares numbers;
    ``numeric`` marks the float-based arcsin sweeps.
    """

    claim: str
    n: int | None
    param: Fraction | None
    lhs: Fraction | float | None
    rhs: Fraction | float | None
    passed: bool
    notes: str = ""
    numeric: bool = False
    extra: dict = field(default_factory=dict, compare=False)

    def sort_key(self) -> tuple:
        return (self.claim, self.n if self.n is not None else -1, self.param if self.param is not None else -1, self.notes)

    def to_json(self) -> dict:
        def fmt(v):
            if v is None:
                return None
            if isinstance(v, float):
                return repr(v)
            return format_rational(v)

        out = {
            "claim": self.claim,
            "n": self.n,
            "param": fmt(self.param),
            "lhs": fmt(self.lhs),
            "rhs": fmt(self.rhs),
            "pass": self.passed,
            "notes": self.notes,
        }
        if self.numeric:
            out["numeric"] = True
        return out


def sort_reports(reports) -> list[VerificationReport]:
    return sorted(reports, key=VerificationReport.sort_key)
