"""Structured pass/fail reporting shared by the verifiers."""

from __future__ import annotations

from dataclasses import dataclass

__all__ = ["CheckResult", "VerificationReport", "check_from_failures"]


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    details: tuple = ()

    def __str__(self):
        mark = "ok" if self.passed else "FAIL"
        suffix = f" ({'; '.join(self.details)})" if self.details else ""
        return f"{mark:4s} {self.name}{suffix}"


@dataclass(frozen=True)
class VerificationReport:
    subject: str
    checks: tuple

    @property
    def passed(self):
        return all(c.passed for c in self.checks)

    @property
    def failures(self):
        return tuple(c for c in self.checks if not c.passed)

    def text(self):
        lines = [f"verification: {self.subject}"]
        lines += [f"  {c}" for c in self.checks]
        lines.append(f"  => {'PASS' if self.passed else 'FAIL'}")
        return "\n".join(lines)


def check_from_failures(name, failures, limit=5):
    """A CheckResult that fails when the failure list is nonempty."""
    details = tuple(str(f) for f in failures[:limit])
    if len(failures) > limit:
        details += (f"... {len(failures) - limit} more",)
    return CheckResult(name, not failures, details)
