"""Verdicts, budgets and check reports.

Every decision procedure in the toolkit returns a CheckReport rather than a
bare bool, so that failures always carry a finite witness and budget
exhaustion is an honest third verdict instead of a silent pass.
"""

from dataclasses import dataclass, field

from .errors import SearchBudgetExceeded

PASS = "pass"
FAIL = "fail"
INCONCLUSIVE = "inconclusive"


class Budget:
    """A ticking step counter for exhaustive searches.

    tick() raises SearchBudgetExceeded once `limit` steps have been spent.
    A limit of None never exhausts.
    """

    def __init__(self, limit=None):
        self.limit = limit
        self.steps = 0

    def tick(self, n=1):
        self.steps += n
        if self.limit is not None and self.steps > self.limit:
            raise SearchBudgetExceeded(steps=self.steps)

    def sub(self):
        """Share the same counter (budgets are global per call, not nested)."""
        return self


@dataclass
class CheckReport:
    """Outcome of a single check.

    witness carries the finite counterexample (or certificate) as plain
    JSON-able data; details are human-readable one-liners.
    """

    name: str
    verdict: str
    details: list = field(default_factory=list)
    witness: dict = field(default_factory=dict)

    @property
    def ok(self):
        return self.verdict == PASS

    def to_json(self):
        return {
            "name": self.name,
            "verdict": self.verdict,
            "details": list(self.details),
            "witness": self.witness,
        }


def passed(name, details=(), witness=None):
    return CheckReport(name, PASS, list(details), witness or {})


def failed(name, details=(), witness=None):
    return CheckReport(name, FAIL, list(details), witness or {})


def inconclusive(name, details=(), witness=None):
    return CheckReport(name, INCONCLUSIVE, list(details), witness or {})


def guarded(name, budget, fn, *args, **kwargs):
    """Run fn, converting budget exhaustion into an inconclusive report."""
    try:
        return fn(*args, **kwargs)
    except SearchBudgetExceeded as exc:
        return inconclusive(
            name,
            ["budget exhausted after %s steps" % exc.steps],
            {"steps": exc.steps},
        )


def merge(name, reports):
    """Combine subreports: fail dominates, then inconclusive, else pass."""
    verdict = PASS
    details = []
    witness = {}
    for r in reports:
        details.extend("%s: %s" % (r.name, d) for d in r.details)
        if r.verdict == FAIL and verdict != FAIL:
            verdict = FAIL
            witness = r.witness
        elif r.verdict == INCONCLUSIVE and verdict == PASS:
            verdict = INCONCLUSIVE
            witness = r.witness
    return CheckReport(name, verdict, details, witness)
