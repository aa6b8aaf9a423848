"""Structured pass/fail evidence for verification runs."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class CheckFailure:
    check: str
    subject: str
    detail: str


@dataclass
class VerificationReport:
    """Aggregated result of one verification suite.

    ``checks`` counts individual assertions; every failed one carries a
    witness description so reports are auditable.
    """

    name: str
    checks: int = 0
    failures: list = field(default_factory=list)

    @property
    def passed(self):
        return not self.failures

    def record(self, check, subject, ok, detail=""):
        self.checks += 1
        if not ok:
            self.failures.append(CheckFailure(check, subject, detail))
        return ok

    def merge(self, other):
        self.checks += other.checks
        self.failures.extend(other.failures)
        return self

    def sorted_failures(self):
        return sorted(self.failures, key=lambda f: (f.check, f.subject, f.detail))

    def to_dict(self):
        return {
            "name": self.name,
            "checks": self.checks,
            "passed": self.passed,
            "failures": [
                {"check": f.check, "subject": f.subject, "detail": f.detail}
                for f in self.sorted_failures()
            ],
        }

    def render_text(self):
        lines = [f"{self.name}: {'PASS' if self.passed else 'FAIL'} ({self.checks} checks)"]
        for f in self.sorted_failures():
            lines.append(f"  FAIL {f.check} [{f.subject}] {f.detail}")
        return "\n".join(lines)
