"""Per-equation verdicts and their one-line text form."""
from __future__ import annotations

from dataclasses import dataclass, field

from ..series import Series, TensorSquare


@dataclass
class EquationResult:
    """Verdict for one equation; ``degree`` is the lowest failing weight on
    failure and the checked truncation on success."""

    name: str
    passed: bool
    degree: int | None
    residual: Series | None = None
    residual_terms: int = 0
    checked: bool = True
    note: str = ""

    @property
    def status(self) -> str:
        if not self.checked:
            return "SKIP"
        return "PASS" if self.passed else "FAIL"

    def line(self) -> str:
        deg = "-" if self.degree is None else str(self.degree)
        out = f"{self.name} {self.status} deg={deg} residual_terms={self.residual_terms}"
        if self.note:
            out += f"  # {self.note}"
        return out

    def as_dict(self) -> dict:
        return {"name": self.name, "status": self.status, "degree": self.degree,
                "residual_terms": self.residual_terms,
                "residual": None if self.residual is None else self.residual.pretty(),
                "note": self.note}


@dataclass
class Report:
    title: str
    results: list[EquationResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results if r.checked)

    def __getitem__(self, name: str) -> EquationResult:
        for r in self.results:
            if r.name == name:
                return r
        raise KeyError(name)

    def extend(self, other: "Report", prefix: str = ""):
        for r in other.results:
            r.name = prefix + r.name
            self.results.append(r)

    def lines(self) -> list[str]:
        return [r.line() for r in self.results]

    def text(self) -> str:
        return "\n".join(self.lines()) + "\n"

    def as_dict(self) -> dict:
        return {"title": self.title, "passed": self.passed,
                "results": [r.as_dict() for r in self.results]}


def from_residual(name: str, residual: Series) -> EquationResult:
    """Verdict for an equation written as ``residual == 0``."""
    if residual.is_zero():
        return EquationResult(name, True, residual.maxdeg)
    d = residual.min_weight()
    part = residual.homogeneous_part(d)
    return EquationResult(name, False, d, part, len(part.terms))


def from_tensor_residual(name: str, residual: TensorSquare, maxdeg: int) -> EquationResult:
    if residual.is_zero():
        return EquationResult(name, True, maxdeg)
    A = residual.alphabet
    by_deg: dict[int, int] = {}
    for (m1, m2) in residual.terms:
        d = A.weight(m1) + A.weight(m2)
        by_deg[d] = by_deg.get(d, 0) + 1
    d = min(by_deg)
    return EquationResult(name, False, d, None, by_deg[d])


def skipped(name: str, note: str) -> EquationResult:
    return EquationResult(name, True, None, checked=False, note=note)
