"""Normal forms in truncated quotients of a free algebra by a homogeneous
two-sided ideal.

The weight-d part of the ideal is spanned by ``g*I_{d-w(g)}``,
``I_{d-w(g)}*g`` and the relations of weight d; it is kept as a reduced
row-echelon basis whose pivots are the largest monomials.  The normal form
of a series is its unique representative free of pivot monomials.
"""
from __future__ import annotations

import gzip
import json
import logging
import os
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from pathlib import Path

from .families import Family, parse_family, relations as family_relations
from .linalg import Echelon
from .series import Alphabet, IncompatibleContext, Series, format_rational

log = logging.getLogger(__name__)

DEFAULT_CAP = 10 ** 7
CACHE_FORMAT_VERSION = 1


class CapExceeded(RuntimeError):
    """The requested truncation would enumerate too many monomials."""


class NotHomogeneous(ValueError):
    pass


@dataclass(frozen=True)
class Presentation:
    alphabet: Alphabet
    relations: tuple[Series, ...]
    label: str = ""

    def __post_init__(self):
        for r in self.relations:
            if r.alphabet != self.alphabet:
                raise IncompatibleContext("relation from a different alphabet")
            if not r.is_homogeneous():
                raise NotHomogeneous(f"relation {r.pretty()} is not homogeneous")

    @classmethod
    def of(cls, family: Family | str, maxdeg: int | None = None) -> "Presentation":
        if isinstance(family, str):
            family = parse_family(family)
        return cls(family.alphabet, tuple(family_relations(family, maxdeg)), family.name)


def check_cap(alphabet: Alphabet, maxdeg: int, cap: int = DEFAULT_CAP):
    total = sum(alphabet.monomial_counts(maxdeg))
    if total > cap:
        raise CapExceeded(
            f"{alphabet.name} up to weight {maxdeg} has {total} monomials (cap {cap})")


@dataclass
class NormalFormTable:
    presentation: Presentation
    maxdeg: int
    echelons: list[Echelon] = field(default_factory=list)

    @property
    def alphabet(self) -> Alphabet:
        return self.presentation.alphabet

    def rank(self, d: int) -> int:
        return self.echelons[d].rank

    def _check(self, s: Series):
        if s.alphabet != self.alphabet or s.maxdeg != self.maxdeg:
            raise IncompatibleContext(
                f"series in {s.alphabet.name}/{s.maxdeg} vs table "
                f"{self.alphabet.name}/{self.maxdeg}")

    def reduce(self, s: Series) -> Series:
        self._check(s)
        out = {}
        for d, terms in s.by_weight().items():
            ech = self.echelons[d]
            if ech.rank == 0:
                out.update(terms)
            else:
                out.update(ech.reduce(dict(terms)))
        return Series(self.alphabet, self.maxdeg, out, _trusted=True)

    def hilbert_dim(self, d: int) -> int:
        if not 0 <= d <= self.maxdeg:
            raise ValueError(f"degree {d} outside 0..{self.maxdeg}")
        return self.alphabet.monomial_counts(d)[d] - self.echelons[d].rank

    def hilbert_dims(self) -> list[int]:
        counts = self.alphabet.monomial_counts(self.maxdeg)
        return [counts[d] - self.echelons[d].rank for d in range(self.maxdeg + 1)]

    def equals_mod_ideal(self, a: Series, b: Series) -> bool:
        return self.reduce(a - b).is_zero()

    def first_failure(self, a: Series, b: Series):
        """``None`` if equal, else ``(degree, residual)`` for the lowest failing weight."""
        r = self.reduce(a - b)
        if r.is_zero():
            return None
        d = r.min_weight()
        return d, r.homogeneous_part(d)


def build_table(presentation: Presentation | Family | str, maxdeg: int,
                cap: int = DEFAULT_CAP) -> NormalFormTable:
    if not isinstance(presentation, Presentation):
        presentation = Presentation.of(presentation, maxdeg)
    A = presentation.alphabet
    check_cap(A, maxdeg, cap)
    weights = A.weights
    rel_by_weight: dict[int, list[dict]] = {}
    for r in presentation.relations:
        d = r.min_weight()
        if d is not None and d <= maxdeg:
            rel_by_weight.setdefault(d, []).append(dict(r.terms))
    echelons = []
    for d in range(maxdeg + 1):
        ech = Echelon()
        for i, w in enumerate(weights):
            if w > d:
                continue
            prev = echelons[d - w]
            for row in list(prev.rows.values()):
                ech.add({(i,) + m: c for m, c in row.items()})
                ech.add({m + (i,): c for m, c in row.items()})
        for row in rel_by_weight.get(d, []):
            ech.add(row)
        log.debug("%s degree %d: ideal rank %d", A.name, d, ech.rank)
        echelons.append(ech)
    return NormalFormTable(presentation, maxdeg, echelons)


# -- caching ------------------------------------------------------------------

def _cache_path(cache_dir, family: str, maxdeg: int) -> Path:
    safe = "".join(ch if ch.isalnum() else "_" for ch in family)
    return Path(cache_dir) / f"{safe}.d{maxdeg}.v{CACHE_FORMAT_VERSION}.json.gz"


def save_table(table: NormalFormTable, path) -> None:
    """Gzipped JSON: per degree, a list of ``[pivot, [[monomial, "p/q"], ...]]``."""
    data = {
        "format": CACHE_FORMAT_VERSION,
        "family": table.presentation.label or table.alphabet.name,
        "alphabet": table.alphabet.name,
        "maxdeg": table.maxdeg,
        "degrees": [
            [[list(p), [[list(m), format_rational(c)] for m, c in sorted(row.items())]]
             for p, row in sorted(e.rows.items())]
            for e in table.echelons
        ],
    }
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_suffix(path.suffix + f".tmp{os.getpid()}")
    with gzip.open(tmp, "wt", encoding="utf-8") as fh:
        json.dump(data, fh, separators=(",", ":"))
    os.replace(tmp, path)


def load_table(path, presentation: Presentation) -> NormalFormTable:
    with gzip.open(path, "rt", encoding="utf-8") as fh:
        data = json.load(fh)
    if data.get("format") != CACHE_FORMAT_VERSION or data["alphabet"] != presentation.alphabet.name:
        raise ValueError(f"cache file {path} does not match {presentation.alphabet.name}")
    echelons = []
    for rows in data["degrees"]:
        e = Echelon()
        for p, row in rows:
            r = {tuple(m): Fraction(c) for m, c in row}
            e.rows[tuple(p)] = r
            for col in r:
                if col != tuple(p):
                    e._col_rows.setdefault(col, set()).add(tuple(p))
        echelons.append(e)
    return NormalFormTable(presentation, data["maxdeg"], echelons)


def get_table(family: Family | str, maxdeg: int, cap: int = DEFAULT_CAP,
              cache_dir=None) -> NormalFormTable:
    """Table for a named family, memoized in-process and optionally on disk."""
    name = family if isinstance(family, str) else family.name
    name = parse_family(name).name
    if cache_dir is None:
        return _memo_table(name, maxdeg, cap)
    path = _cache_path(cache_dir, name, maxdeg)
    pres = Presentation.of(name, maxdeg)
    if path.exists():
        try:
            return load_table(path, pres)
        except (ValueError, KeyError, OSError) as exc:
            log.warning("ignoring unreadable table cache %s: %s", path, exc)
    table = _memo_table(name, maxdeg, cap)
    save_table(table, path)
    return table


@lru_cache(maxsize=32)
def _memo_table(name: str, maxdeg: int, cap: int) -> NormalFormTable:
    return build_table(Presentation.of(name, maxdeg), maxdeg, cap)


def reduce(table: NormalFormTable, s: Series) -> Series:
    return table.reduce(s)


def equals_mod_ideal(table: NormalFormTable, a: Series, b: Series) -> bool:
    return table.equals_mod_ideal(a, b)


def first_failure(table: NormalFormTable, a: Series, b: Series):
    return table.first_failure(a, b)


def hilbert_dim(table: NormalFormTable, d: int) -> int:
    return table.hilbert_dim(d)


def hilbert_dims(family: Family | str, maxdeg: int, cap: int = DEFAULT_CAP,
                 cache_dir=None) -> list[int]:
    return get_table(family, maxdeg, cap, cache_dir).hilbert_dims()


__all__ = [
    "Presentation", "NormalFormTable", "build_table", "reduce", "equals_mod_ideal",
    "first_failure", "hilbert_dim", "hilbert_dims", "get_table", "save_table",
    "load_table", "CapExceeded", "NotHomogeneous", "DEFAULT_CAP", "check_cap",
]
