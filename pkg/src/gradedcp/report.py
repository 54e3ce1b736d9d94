"""Analysis reports and their text / TSV serializations."""
from __future__ import annotations

import hashlib
from dataclasses import dataclass, field

from .exactalg import ParseError
from .verdict import GradedVerdict


def _clean(text: str) -> str:
    return " ".join(str(text).replace("\t", " ").split())


@dataclass
class AnalysisReport:
    """Ordered verdicts for one input, plus bounds and discrepancy notes."""

    kind: str
    source: str
    digest: str
    bounds: dict = field(default_factory=dict)
    verdicts: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    @classmethod
    def for_text(cls, kind: str, source: str, text: str, bounds: dict) -> "AnalysisReport":
        digest = hashlib.sha256(text.encode("utf-8")).hexdigest()[:16]
        return cls(kind, source, digest, dict(bounds))

    def add(self, v: GradedVerdict) -> None:
        self.verdicts.append(v)

    def status(self, prop: str) -> str | None:
        for v in self.verdicts:
            if v.property == prop:
                return v.status
        return None

    def to_tsv(self) -> str:
        lines = [f"# kind\t{self.kind}", f"# source\t{self.source}", f"# sha256\t{self.digest}"]
        for k, val in self.bounds.items():
            lines.append(f"# bound\t{k}={val}")
        for n in self.notes:
            lines.append(f"# note\t{_clean(n)}")
        for v in self.verdicts:
            lines.append(f"{v.property}\t{v.status}\t{_clean(v.summary())}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_tsv(cls, text: str) -> "AnalysisReport":
        rep = cls("", "", "")
        for lineno, raw in enumerate(text.splitlines(), start=1):
            if not raw:
                continue
            parts = raw.split("\t")
            if raw.startswith("#"):
                if len(parts) != 2:
                    raise ParseError(lineno, "header lines need two fields")
                key, val = parts[0][1:].strip(), parts[1]
                if key == "kind":
                    rep.kind = val
                elif key == "source":
                    rep.source = val
                elif key == "sha256":
                    rep.digest = val
                elif key == "bound":
                    name, _, num = val.partition("=")
                    rep.bounds[name] = int(num) if num.lstrip("-").isdigit() else num
                elif key == "note":
                    rep.notes.append(val)
                else:
                    raise ParseError(lineno, f"unknown header {key!r}")
                continue
            if len(parts) != 3:
                raise ParseError(lineno, "verdict lines need exactly three tab-separated fields")
            try:
                rep.verdicts.append(GradedVerdict(parts[0], parts[1], parts[2]))
            except ValueError as exc:
                raise ParseError(lineno, str(exc)) from None
        return rep

    def normalized(self) -> "AnalysisReport":
        """The report as it survives serialization (witness-or-reason only)."""
        return AnalysisReport(
            self.kind,
            self.source,
            self.digest,
            dict(self.bounds),
            [GradedVerdict(v.property, v.status, _clean(v.summary())) for v in self.verdicts],
            [_clean(n) for n in self.notes],
        )

    def to_text(self) -> str:
        head = f"{self.kind} {self.source} (sha256 {self.digest})"
        bounds = ", ".join(f"{k}={v}" for k, v in self.bounds.items())
        lines = [head, f"bounds: {bounds}" if bounds else "bounds: none"]
        width = max((len(v.property) for v in self.verdicts), default=0)
        for v in self.verdicts:
            lines.append(f"  {v.property.ljust(width)}  {v.status:<14} {_clean(v.summary())}")
        if self.notes:
            lines.append("notes:")
            lines += [f"  - {_clean(n)}" for n in self.notes]
        return "\n".join(lines) + "\n"
