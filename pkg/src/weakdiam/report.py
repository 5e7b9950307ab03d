"""Verifier reports and the package's exception types."""
from dataclasses import dataclass, field


class WeakDiamError(Exception):
    """Base class for errors raised by this package."""


class VerificationError(WeakDiamError):
    """A verifier rejected an intermediate result; carries the report."""

    def __init__(self, stage, report):
        self.stage = stage
        self.report = report
        super().__init__(f"{stage}: {report.summary()}")


class ScaleRangeError(WeakDiamError):
    """A query needs a scale the web was not built for."""


@dataclass
class Violation:
    kind: str
    witness: dict

    def __str__(self):
        detail = ", ".join(f"{k}={v}" for k, v in self.witness.items())
        return f"{self.kind} ({detail})" if detail else self.kind


@dataclass
class Report:
    """Outcome of a verifier: ``ok`` unless some violation was recorded.

    Only the first counterexample of each kind is kept.
    """

    check: str
    violations: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.violations

    def __bool__(self):
        return self.ok

    def fail(self, kind, **witness):
        if self.first(kind) is None:
            self.violations.append(Violation(kind, witness))

    def first(self, kind):
        for v in self.violations:
            if v.kind == kind:
                return v
        return None

    def kinds(self):
        return [v.kind for v in self.violations]

    def summary(self):
        if self.ok:
            return "valid"
        return "; ".join(str(v) for v in self.violations)

    def to_dict(self):
        return {
            "check": self.check,
            "ok": self.ok,
            "violations": [{"kind": v.kind, **v.witness} for v in self.violations],
        }
