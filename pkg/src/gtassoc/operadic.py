"""Insertion-coproduct morphisms and the operad / moperad / right-module
composition maps of the Drinfeld-Kohno families.

A partially defined map ``f: {1..m} -> {1..n}`` induces ``(-)^f`` from the
arity-n algebra to the arity-m algebra (contravariant).  Composition maps
are given by generator tables, extended multiplicatively and reduced to
normal form in the target.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Mapping

from .families import (CYCLOTOMIC, DK, ELLIPTIC, REDUCED_ELLIPTIC, Family, parse_family)
from .quotient import get_table
from .series import IncompatibleContext, Series, substitute


@dataclass(frozen=True)
class PartialMap:
    """Partially defined map from ``{1..m}`` to ``{1..n}``.

    ``levels[i-1]`` is the preimage of ``i``.  Elements in no level set go to
    the base point.  ``source_zero``/``target_zero`` mark the extra base point
    0 of doubly pointed sets; ``zero_level`` lists the elements of ``1..m``
    sent to 0 (only meaningful when both sides carry 0).
    """

    m: int
    n: int
    levels: tuple[frozenset, ...]
    source_zero: bool = False
    target_zero: bool = False
    zero_level: frozenset = frozenset()

    def __post_init__(self):
        levels = tuple(frozenset(s) for s in self.levels)
        object.__setattr__(self, "levels", levels)
        object.__setattr__(self, "zero_level", frozenset(self.zero_level))
        if len(levels) != self.n:
            raise ValueError(f"need {self.n} level sets, got {len(levels)}")
        seen = set(self.zero_level)
        for s in levels:
            if seen & s:
                raise ValueError("level sets must be disjoint")
            seen |= s
        if not all(1 <= k <= self.m for k in seen):
            raise ValueError(f"level sets must lie in 1..{self.m}")
        if self.target_zero and not self.source_zero:
            raise ValueError("a doubly pointed target needs a doubly pointed source")
        if self.zero_level and not self.target_zero:
            raise ValueError("zero_level needs a doubly pointed target")

    @classmethod
    def from_function(cls, m: int, n: int, f: Mapping[int, int], **kw) -> "PartialMap":
        levels = [set() for _ in range(n)]
        zero = set()
        for k, v in f.items():
            if v == 0:
                zero.add(k)
            elif v is not None:
                levels[v - 1].add(k)
        return cls(m, n, tuple(levels), zero_level=frozenset(zero), **kw)

    @classmethod
    def identity(cls, n: int, **kw) -> "PartialMap":
        return cls(n, n, tuple(frozenset({i}) for i in range(1, n + 1)), **kw)

    def __call__(self, k: int):
        """Image of ``k``: an index, 0, or None for the base point."""
        if k in self.zero_level:
            return 0
        for i, s in enumerate(self.levels, 1):
            if k in s:
                return i
        return None

    def preimage(self, i: int) -> frozenset:
        if i == 0:
            return self.zero_level
        return self.levels[i - 1]

    def compose(self, g: "PartialMap") -> "PartialMap":
        """``self o g`` where ``g: {1..l} -> {1..m}``."""
        if g.n != self.m:
            raise IncompatibleContext("maps are not composable")
        f = {}
        for k in range(1, g.m + 1):
            v = g(k)
            if v is None:
                continue
            f[k] = 0 if v == 0 else self(v)
        return PartialMap.from_function(g.m, self.n, f, source_zero=g.source_zero,
                                        target_zero=self.target_zero)

    def __str__(self):
        def fmt(s):
            return ",".join(map(str, sorted(s))) if s else "∅"

        body = "|".join(fmt(s) for s in self.levels)
        if self.target_zero:
            return f"pmap(0,{self.n}<-0,{self.m}: {fmt(self.zero_level)}|{body})"
        if self.source_zero:
            return f"pmap({self.n}<-0,{self.m}: {body})"
        return f"pmap({self.n}<-{self.m}: {body})"


_PMAP_RE = re.compile(r"^\s*pmap\(\s*(0\s*,\s*)?(\d+)\s*<-\s*(0\s*,\s*)?(\d+)\s*:(.*)\)\s*$")


def parse_pmap(text: str) -> PartialMap:
    """Parse ``pmap(n<-m: L1|...|Ln)``; ``pmap(0,n<-0,m: L0|L1|...|Ln)`` for
    doubly pointed maps and ``pmap(n<-0,m: ...)`` for the mixed case."""
    mt = _PMAP_RE.match(text)
    if not mt:
        raise ValueError(f"cannot parse partial map {text!r}")
    tz, n, sz, m, body = bool(mt.group(1)), int(mt.group(2)), bool(mt.group(3)), int(mt.group(4)), mt.group(5)
    parts = [p.strip() for p in body.split("|")]

    def parse_set(p):
        if p in ("", "∅", "{}"):
            return frozenset()
        return frozenset(int(x) for x in p.split(","))

    sets = [parse_set(p) for p in parts]
    zero = frozenset()
    if tz:
        zero, sets = sets[0], sets[1:]
    if len(sets) != n:
        raise ValueError(f"{text!r}: expected {n} level sets, found {len(sets)}")
    return PartialMap(m, n, tuple(sets), source_zero=sz or tz, target_zero=tz, zero_level=zero)


def _sum(series, alphabet, D):
    out = Series.zero(alphabet, D)
    for s in series:
        out = out + s
    return out


def _normal_form(x: Series, reduce: bool) -> Series:
    if not reduce:
        return x
    return get_table(x.alphabet.name, x.maxdeg).reduce(x)


def insertion_images(f: PartialMap, fam: Family, D: int) -> dict[str, Series]:
    """Generator images of ``(-)^f`` from the arity-``f.n`` algebra."""
    if fam.kind == DK and not f.source_zero:
        tgt = Family(DK, f.m)
        A = tgt.alphabet
        images = {}
        for i, j in itertools.combinations(range(1, f.n + 1), 2):
            terms = [tgt.t(k, l, D) for k in f.preimage(i) for l in f.preimage(j)]
            images[f"t[{i},{j}]"] = _sum(terms, A, D)
        return images
    if fam.kind == CYCLOTOMIC and f.target_zero:
        tgt = Family(CYCLOTOMIC, f.m, fam.N)
        A = tgt.alphabet
        G = range(fam.N)
        images = {}
        for i in range(1, f.n + 1):
            pre = sorted(f.preimage(i))
            terms = [tgt.k(j, D) for j in pre]
            terms += [tgt.tg(j, k, g, D) for j, k in itertools.combinations(pre, 2) for g in G]
            terms += [tgt.tg(j, k, g, D) for j in sorted(f.zero_level) for k in pre for g in G]
            images[f"k[{i}]"] = _sum(terms, A, D)
        for i, j in itertools.combinations(range(1, f.n + 1), 2):
            for a in G:
                terms = [tgt.tg(k, l, a, D) for k in f.preimage(i) for l in f.preimage(j)]
                images[f"t[{i},{j};{a}]"] = _sum(terms, A, D)
        return images
    raise IncompatibleContext(f"no insertion-coproduct morphism for {fam.name} with {f}")


def insertion_coproduct(f: PartialMap, x: Series, reduce: bool = True) -> Series:
    """``x^f`` for ``x`` in t(n): ``t_ij -> sum_{k in f^-1(i), l in f^-1(j)} t_kl``."""
    fam = parse_family(x.alphabet.name)
    if fam.kind != DK or fam.n != f.n:
        raise IncompatibleContext(f"{x.alphabet.name} is not t({f.n})")
    if f.source_zero:
        raise IncompatibleContext("use insertion_coproduct_cyclotomic for pointed-at-0 maps")
    images = insertion_images(f, fam, x.maxdeg)
    target = (Family(DK, f.m).alphabet, x.maxdeg)
    return _normal_form(substitute(x, images, target=target), reduce)


def insertion_coproduct_cyclotomic(f: PartialMap, x: Series, N: int | None = None,
                                   reduce: bool = True) -> Series:
    """Doubly pointed maps act tGamma(n,N) -> tGamma(m,N); maps with only the
    source doubly pointed send t(n) -> tGamma(m,N) via ``t_ij -> sum t_kl^0``."""
    fam = parse_family(x.alphabet.name)
    if fam.n != f.n:
        raise IncompatibleContext(f"arity {fam.n} does not match map target {f.n}")
    D = x.maxdeg
    if f.target_zero:
        if fam.kind != CYCLOTOMIC:
            raise IncompatibleContext("doubly pointed maps act on tGamma(n,N)")
        images = insertion_images(f, fam, D)
        target = Family(CYCLOTOMIC, f.m, fam.N)
    elif f.source_zero:
        if fam.kind != DK or N is None:
            raise IncompatibleContext("mixed pointing maps t(n) -> tGamma(m,N) and needs N")
        tgt = Family(CYCLOTOMIC, f.m, N)
        images = {}
        for i, j in itertools.combinations(range(1, f.n + 1), 2):
            terms = [tgt.tg(k, l, 0, D) for k in f.preimage(i) for l in f.preimage(j)]
            images[f"t[{i},{j}]"] = _sum(terms, tgt.alphabet, D)
        target = tgt
    else:
        return insertion_coproduct(f, x, reduce)
    return _normal_form(substitute(x, images, target=(target.alphabet, D)), reduce)


# -- generator tables for the composition maps -------------------------------

def _shift_host_pair(i, j, p, m):
    """Target pairs of host pair ``i<j`` when slot ``p`` is widened to ``m`` strands."""
    if p < i:
        return [(i + m - 1, j + m - 1)]
    if p == i:
        return [(k, j + m - 1) for k in range(i, i + m)]
    if p < j:
        return [(i, j + m - 1)]
    if p == j:
        return [(i, k) for k in range(j, j + m)]
    return [(i, j)]


def _shift_index(i, p, m):
    if p < i:
        return [i + m - 1]
    if p == i:
        return list(range(i, i + m))
    return [i]


def operad_tables(n: int, m: int, p: int, D: int):
    """Generator images for ``o_p: t(n) + t(m) -> t(n+m-1)``."""
    if not 1 <= p <= n:
        raise ValueError(f"slot {p} outside 1..{n}")
    tgt = Family(DK, n + m - 1)
    A = tgt.alphabet
    host = {f"t[{i},{j}]": _sum([tgt.t(a, b, D) for a, b in _shift_host_pair(i, j, p, m)], A, D)
            for i, j in itertools.combinations(range(1, n + 1), 2)}
    guest = {f"t[{i},{j}]": tgt.t(i + p - 1, j + p - 1, D)
             for i, j in itertools.combinations(range(1, m + 1), 2)}
    return host, guest, tgt


def _compose(host: Series, guest: Series, host_images, guest_images, tgt: Family, reduce: bool):
    D = host.maxdeg
    if guest.maxdeg != D:
        raise IncompatibleContext("host and guest must share maxdeg")
    ctx = (tgt.alphabet, D)
    h = substitute(host, host_images, target=ctx)
    g = substitute(guest, guest_images, target=ctx)
    return _normal_form(h * g, reduce)


def _family(x: Series, *kinds) -> Family:
    fam = parse_family(x.alphabet.name)
    if fam.kind not in kinds:
        raise IncompatibleContext(f"{x.alphabet.name} is not a {'/'.join(kinds)} series")
    return fam


def operad_compose(p: int, host: Series, guest: Series, reduce: bool = True) -> Series:
    """Partial composition ``host o_p guest`` in the chord-diagram operad."""
    n = _family(host, DK).n
    m = _family(guest, DK).n
    hi, gi, tgt = operad_tables(n, m, p, host.maxdeg)
    return _compose(host, guest, hi, gi, tgt, reduce)


def module_tables(n: int, m: int, p: int, N: int, D: int):
    """Generator images for ``o_p: tGamma(n,N) + t(m) -> tGamma(n+m-1,N)``."""
    if not 1 <= p <= n:
        raise ValueError(f"slot {p} outside 1..{n}")
    tgt = Family(CYCLOTOMIC, n + m - 1, N)
    A = tgt.alphabet
    G = range(N)
    host = {}
    for j in range(1, n + 1):
        if p < j:
            img = tgt.k(j + m - 1, D)
        elif p == j:
            terms = [tgt.k(k, D) for k in range(j, j + m)]
            terms += [tgt.tg(l, r, g, D) for l, r in itertools.combinations(range(j, j + m), 2)
                      for g in G]
            img = _sum(terms, A, D)
        else:
            img = tgt.k(j, D)
        host[f"k[{j}]"] = img
    for i, j in itertools.combinations(range(1, n + 1), 2):
        for a in G:
            host[f"t[{i},{j};{a}]"] = _sum(
                [tgt.tg(x, y, a, D) for x, y in _shift_host_pair(i, j, p, m)], A, D)
    guest = {f"t[{i},{j}]": tgt.tg(i + p - 1, j + p - 1, 0, D)
             for i, j in itertools.combinations(range(1, m + 1), 2)}
    return host, guest, tgt


def moperad_compose_module(p: int, host: Series, guest: Series, reduce: bool = True) -> Series:
    """Right-module composition ``tGamma(n,N) o_p t(m)``."""
    hf = _family(host, CYCLOTOMIC)
    m = _family(guest, DK).n
    hi, gi, tgt = module_tables(hf.n, m, p, hf.N, host.maxdeg)
    return _compose(host, guest, hi, gi, tgt, reduce)


def monoid_tables(n: int, m: int, N: int, D: int):
    """Generator images for ``o_0: tGamma(n,N) + tGamma(m,N) -> tGamma(n+m,N)``.

    The guest keeps labels ``1..m`` and the host is shifted to ``m+1..m+n``.
    """
    tgt = Family(CYCLOTOMIC, n + m, N)
    A = tgt.alphabet
    G = range(N)
    host = {}
    for i in range(1, n + 1):
        terms = [tgt.k(i + m, D)] + [tgt.tg(r, i + m, g, D) for r in range(1, m + 1) for g in G]
        host[f"k[{i}]"] = _sum(terms, A, D)
    for i, j in itertools.combinations(range(1, n + 1), 2):
        for a in G:
            host[f"t[{i},{j};{a}]"] = tgt.tg(i + m, j + m, a, D)
    guest = {f"k[{k}]": tgt.k(k, D) for k in range(1, m + 1)}
    for k, l in itertools.combinations(range(1, m + 1), 2):
        for a in G:
            guest[f"t[{k},{l};{a}]"] = tgt.tg(k, l, a, D)
    return host, guest, tgt


def moperad_compose_monoid(host: Series, guest: Series, reduce: bool = True) -> Series:
    """Monoid composition ``host o_0 guest``."""
    hf = _family(host, CYCLOTOMIC)
    gf = _family(guest, CYCLOTOMIC)
    if hf.N != gf.N:
        raise IncompatibleContext(f"group orders differ: {hf.N} vs {gf.N}")
    hi, gi, tgt = monoid_tables(hf.n, gf.n, hf.N, host.maxdeg)
    return _compose(host, guest, hi, gi, tgt, reduce)


def elliptic_tables(kind: str, n: int, m: int, p: int, D: int):
    """Generator images for ``o_p: tell(n) + t(m) -> tell(n+m-1)`` (or tellbar)."""
    if not 1 <= p <= n:
        raise ValueError(f"slot {p} outside 1..{n}")
    src = Family(kind, n)
    tgt = Family(kind, n + m - 1)
    A = tgt.alphabet
    host = {}
    for g in src.alphabet.generators:
        name = g.name
        if name.startswith("t["):
            i, j = (int(v) for v in name[2:-1].split(","))
            host[name] = _sum([tgt.t(a, b, D) for a, b in _shift_host_pair(i, j, p, m)], A, D)
        else:
            i = int(name[2:-1])
            build = tgt.alpha if name[0] == "a" else tgt.beta
            host[name] = _sum([build(k, D) for k in _shift_index(i, p, m)], A, D)
    guest = {f"t[{i},{j}]": tgt.t(i + p - 1, j + p - 1, D)
             for i, j in itertools.combinations(range(1, m + 1), 2)}
    return host, guest, tgt


def elliptic_module_compose(p: int, host: Series, guest: Series, reduce: bool = True) -> Series:
    """Right-module composition ``tell(n) o_p t(m)`` (also for tellbar)."""
    hf = _family(host, ELLIPTIC, REDUCED_ELLIPTIC)
    m = _family(guest, DK).n
    hi, gi, tgt = elliptic_tables(hf.kind, hf.n, m, p, host.maxdeg)
    return _compose(host, guest, hi, gi, tgt, reduce)


# -- the partial maps behind the tables ----------------------------------------

def coproduct_map(n: int, m: int, p: int) -> PartialMap:
    """``{1..n+m-1} -> {1..n}`` collapsing ``p..p+m-1`` onto ``p``."""
    f = {}
    for k in range(1, n + m):
        f[k] = k if k < p else (p if k < p + m else k - m + 1)
    return PartialMap.from_function(n + m - 1, n, f)


def insertion_map(n: int, m: int, p: int) -> PartialMap:
    """``{1..n+m-1} -> {1..m}`` defined on ``p..p+m-1`` only."""
    return PartialMap.from_function(n + m - 1, m, {k: k - p + 1 for k in range(p, p + m)})


__all__ = [
    "PartialMap", "parse_pmap", "insertion_coproduct", "insertion_coproduct_cyclotomic",
    "operad_compose", "moperad_compose_module", "moperad_compose_monoid",
    "elliptic_module_compose", "operad_tables", "module_tables", "monoid_tables",
    "elliptic_tables", "coproduct_map", "insertion_map", "insertion_images",
]
