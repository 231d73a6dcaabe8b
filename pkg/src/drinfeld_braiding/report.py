"""Structured pass/fail records shared by every verification suite."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from .series import Valuation


@dataclass
class Check:
    identity: str
    inputs: str
    passed: bool
    residual_valuation: Valuation | None = None
    required: int | None = None
    detail: dict = field(default_factory=dict)
    note: str = ""

    def to_dict(self) -> dict:
        out: dict[str, Any] = {"identity": self.identity, "inputs": self.inputs}
        if self.residual_valuation is not None:
            rv = self.residual_valuation
            out["residual_valuation"] = rv.to_json() if isinstance(rv, Valuation) else int(rv)
        if self.required is not None:
            out["required"] = self.required
        if self.detail:
            out["detail"] = self.detail
        if self.note:
            out["note"] = self.note
        out["pass"] = self.passed
        return out


@dataclass
class VerificationReport:
    suite: str
    checks: list[Check] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def overall(self) -> bool:
        return all(c.passed for c in self.checks)

    def add_residual(self, identity: str, inputs: str, residual, required: int, note: str = "") -> Check:
        """Record a check that passes iff the residual's valuation reaches ``required``.

        ``residual`` is a tensor (its valuation is taken) or a Valuation.
        """
        val = residual if isinstance(residual, int) else residual.valuation()
        check = Check(identity, inputs, int(val) >= required, val, required, note=note)
        self.checks.append(check)
        return check

    def add(self, identity: str, inputs: str, passed: bool, note: str = "", **detail) -> Check:
        check = Check(identity, inputs, bool(passed), detail=detail, note=note)
        self.checks.append(check)
        return check

    def extend(self, other: "VerificationReport") -> None:
        self.checks.extend(other.checks)
        self.notes.extend(other.notes)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "overall": self.overall,
            "n_checks": len(self.checks),
            "n_failed": len(self.failures()),
            "notes": list(self.notes),
            "checks": [c.to_dict() for c in self.checks],
        }

    def summary_line(self) -> str:
        status = "PASS" if self.overall else "FAIL"
        return f"[{status}] {self.suite}: {len(self.checks) - len(self.failures())}/{len(self.checks)} checks"

    def render_text(self, verbose: bool = False) -> str:
        lines = [self.summary_line()]
        for note in self.notes:
            lines.append(f"    note: {note}")
        for c in self.checks:
            if verbose or not c.passed:
                status = "ok  " if c.passed else "FAIL"
                extra = ""
                if c.residual_valuation is not None:
                    extra = f" residual={c.residual_valuation} required>={c.required}"
                if c.note:
                    extra += f" ({c.note})"
                lines.append(f"    {status} {c.identity} [{c.inputs}]{extra}")
        return "\n".join(lines)
