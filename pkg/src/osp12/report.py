"""Verification report records and their JSON/text rendering."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

EXACT_ZERO = "exact-zero"


@dataclass(frozen=True)
class Check:
    name: str
    residual: float | str
    passed: bool

    @classmethod
    def exact(cls, name: str, is_zero: bool, residual: float | None = None) -> "Check":
        """An exact-arithmetic check: passes only on an identically zero residual."""
        if is_zero:
            return cls(name, EXACT_ZERO, True)
        return cls(name, float("nan") if residual is None else float(residual), False)

    @classmethod
    def numeric(cls, name: str, residual: float, tol: float) -> "Check":
        residual = float(residual)
        return cls(name, residual, bool(math.isfinite(residual) and residual <= tol))

    def to_json(self) -> dict:
        res = self.residual
        if isinstance(res, float) and not math.isfinite(res):
            res = str(res)
        return {"name": self.name, "residual": res, "pass": self.passed}


@dataclass
class VerificationReport:
    suite: str
    backend: str
    checks: list[Check] = field(default_factory=list)
    seed: int | None = None
    meta: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def summary(self) -> tuple[int, int]:
        return sum(c.passed for c in self.checks), len(self.checks)

    def max_residual(self) -> float:
        vals = [c.residual for c in self.checks if isinstance(c.residual, float)]
        return max(vals, default=0.0)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def to_json(self) -> dict:
        out = {
            "suite": self.suite,
            "backend": self.backend,
            "seed": self.seed,
            "checks": [c.to_json() for c in self.checks],
            "summary": {"passed": self.summary[0], "total": self.summary[1]},
            "pass": self.passed,
        }
        if self.meta:
            out["meta"] = self.meta
        return out

    def to_text(self) -> str:
        ok, total = self.summary
        head = f"{self.suite} [{self.backend}] {'PASS' if self.passed else 'FAIL'} {ok}/{total}"
        lines = [head]
        for c in self.checks:
            res = c.residual if isinstance(c.residual, str) else f"{c.residual:.3e}"
            lines.append(f"  {'ok  ' if c.passed else 'FAIL'} {c.name}: {res}")
        for k, v in self.meta.items():
            lines.append(f"  # {k}: {v}")
        return "\n".join(lines)


def dumps(reports: list[VerificationReport]) -> str:
    payload = [r.to_json() for r in reports]
    return json.dumps(payload[0] if len(payload) == 1 else payload, indent=2, sort_keys=False)
