"""Verdict records shared by every decider."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Callable

CERTIFIED_YES = "certified_yes"
CERTIFIED_NO = "certified_no"
INCONCLUSIVE = "inconclusive"
STATUSES = (CERTIFIED_YES, CERTIFIED_NO, INCONCLUSIVE)


@dataclass
class GradedVerdict:
    """Outcome of one decider.

    ``witness`` is the rendered certificate (element literals, units, a
    violating element); ``data`` keeps the structured form and ``verify``
    re-runs the exact check that justifies the status.
    """

    property: str
    status: str
    witness: str = ""
    bounds: tuple | None = None
    note: str = ""
    data: Any = field(default=None, compare=False, repr=False)
    verify: Callable[[], bool] | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"unknown status {self.status!r}")

    @property
    def certified(self) -> bool:
        return self.status != INCONCLUSIVE

    def recheck(self) -> bool:
        """Re-verify the witness; verdicts without a checker pass vacuously."""
        return True if self.verify is None else bool(self.verify())

    def summary(self) -> str:
        return self.witness or self.note
