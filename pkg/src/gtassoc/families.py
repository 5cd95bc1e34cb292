"""Generator alphabets, relation lists and group actions for the
Drinfeld-Kohno families ``t(n)``, ``tGamma(n,N)``, ``tell(n)``, ``tellbar(n)``
and free alphabets.

Symmetric generators are identified at the naming level: ``t[i,j]`` always
has ``i < j``, and ``t[j,i;a]`` is stored as ``t[i,j;-a mod N]``.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .series import (Alphabet, Generator, IncompatibleContext, Series, SeriesDomainError,
                     bracket, substitute)

FREE, DK, CYCLOTOMIC, ELLIPTIC, REDUCED_ELLIPTIC = (
    "Free", "DK", "CyclotomicDK", "EllipticDK", "ReducedEllipticDK")


@dataclass(frozen=True)
class Family:
    kind: str
    n: int = 0
    N: int = 1
    names: tuple[str, ...] = ()

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("arity must be non-negative")
        if self.kind == CYCLOTOMIC and self.N < 1:
            raise ValueError("group order N must be >= 1")
        if self.kind not in (FREE, DK, CYCLOTOMIC, ELLIPTIC, REDUCED_ELLIPTIC):
            raise ValueError(f"unknown family kind {self.kind!r}")

    @property
    def name(self) -> str:
        if self.kind == FREE:
            return f"free({','.join(self.names)})"
        if self.kind == DK:
            return f"t({self.n})"
        if self.kind == CYCLOTOMIC:
            return f"tGamma({self.n},{self.N})"
        if self.kind == ELLIPTIC:
            return f"tell({self.n})"
        return f"tellbar({self.n})"

    def __str__(self):
        return self.name

    @property
    def alphabet(self) -> Alphabet:
        return _alphabet(self)

    # -- element builders --------------------------------------------
    def t(self, i: int, j: int, maxdeg: int) -> Series:
        """``t_ij`` (also accepts ``i > j``)."""
        if self.kind not in (DK, ELLIPTIC, REDUCED_ELLIPTIC):
            raise SeriesDomainError(f"{self.name} has no t_ij generators")
        if i == j:
            raise ValueError("t_ii is not a generator")
        i, j = min(i, j), max(i, j)
        return Series.gen(self.alphabet, maxdeg, f"t[{i},{j}]")

    def tg(self, i: int, j: int, a: int, maxdeg: int) -> Series:
        """Cyclotomic ``t_ij^a``; ``t_ji^a`` is ``t_ij^{-a}``."""
        if self.kind != CYCLOTOMIC:
            raise SeriesDomainError(f"{self.name} has no t_ij^a generators")
        if i == j:
            raise ValueError("t_ii^a is not a generator")
        if i > j:
            i, j, a = j, i, -a
        return Series.gen(self.alphabet, maxdeg, f"t[{i},{j};{a % self.N}]")

    def k(self, i: int, maxdeg: int) -> Series:
        """Cyclotomic ``t_0i``."""
        if self.kind != CYCLOTOMIC:
            raise SeriesDomainError(f"{self.name} has no t_0i generators")
        return Series.gen(self.alphabet, maxdeg, f"k[{i}]")

    def alpha(self, i: int, maxdeg: int) -> Series:
        return self._ab("a", i, maxdeg)

    def beta(self, i: int, maxdeg: int) -> Series:
        return self._ab("b", i, maxdeg)

    def _ab(self, letter, i, maxdeg):
        if self.kind == ELLIPTIC:
            return Series.gen(self.alphabet, maxdeg, f"{letter}[{i}]")
        if self.kind == REDUCED_ELLIPTIC:
            if i < self.n:
                return Series.gen(self.alphabet, maxdeg, f"{letter}[{i}]")
            out = Series.zero(self.alphabet, maxdeg)
            for j in range(1, self.n):
                out = out - Series.gen(self.alphabet, maxdeg, f"{letter}[{j}]")
            return out
        raise SeriesDomainError(f"{self.name} has no alpha/beta generators")

    def letter(self, name: str, maxdeg: int) -> Series:
        return Series.gen(self.alphabet, maxdeg, name)

    def central_element(self, maxdeg: int) -> Series:
        """Sum of all generators: the central ``c`` of t(3), and of tGamma(2,N)."""
        if self.kind not in (DK, CYCLOTOMIC):
            raise SeriesDomainError(f"no designated central element for {self.name}")
        A = self.alphabet
        out = Series.zero(A, maxdeg)
        for g in A.generators:
            out = out + Series.gen(A, maxdeg, g.name)
        return out


def _parse_int_args(s: str) -> list[int]:
    return [int(p) for p in s.split(",")] if s.strip() else []


_FAMILY_RE = re.compile(r"^\s*([A-Za-z]+)\s*\((.*)\)\s*$")


def parse_family(text: str) -> Family:
    m = _FAMILY_RE.match(text)
    if not m:
        raise ValueError(f"cannot parse family name {text!r}")
    head, args = m.group(1), m.group(2)
    if head == "free":
        names = tuple(a.strip() for a in args.split(",") if a.strip())
        return Family(FREE, names=names)
    vals = _parse_int_args(args)
    if head == "t" and len(vals) == 1:
        return Family(DK, vals[0])
    if head == "tGamma" and len(vals) == 2:
        return Family(CYCLOTOMIC, vals[0], vals[1])
    if head == "tell" and len(vals) == 1:
        return Family(ELLIPTIC, vals[0])
    if head == "tellbar" and len(vals) == 1:
        return Family(REDUCED_ELLIPTIC, vals[0])
    raise ValueError(f"unknown family {text!r}")


def family_of(alphabet: Alphabet) -> Family:
    if alphabet.name.startswith("free("):
        return Family(FREE, names=alphabet.names)
    return parse_family(alphabet.name)


def alphabet_from_name(name: str) -> Alphabet:
    name = name.strip()
    if name.startswith("free(") and ":" in name:
        inner = name[5:-1]
        names, weights = [], []
        for part in inner.split(","):
            nm, _, w = part.partition(":")
            names.append(nm.strip())
            weights.append(int(w) if w else 1)
        return Alphabet.free(*names, weights=weights)
    return parse_family(name).alphabet


@lru_cache(maxsize=None)
def _alphabet(fam: Family) -> Alphabet:
    gens: list[Generator] = []
    n = fam.n
    pairs = list(itertools.combinations(range(1, n + 1), 2))
    if fam.kind == FREE:
        return Alphabet.free(*fam.names)
    if fam.kind == DK:
        gens = [Generator(f"t[{i},{j}]") for i, j in pairs]
    elif fam.kind == CYCLOTOMIC:
        gens = [Generator(f"k[{i}]") for i in range(1, n + 1)]
        gens += [Generator(f"t[{i},{j};{a}]") for i, j in pairs for a in range(fam.N)]
    else:
        m = n if fam.kind == ELLIPTIC else n - 1
        gens = [Generator(f"a[{i}]", 1, (1, 0)) for i in range(1, m + 1)]
        gens += [Generator(f"b[{i}]", 1, (0, 1)) for i in range(1, m + 1)]
        gens += [Generator(f"t[{i},{j}]", 2, (1, 1)) for i, j in pairs]
    return Alphabet(fam.name, tuple(gens))


# -- relations ------------------------------------------------------------

def _normalized_key(s: Series):
    items = s.sorted_terms()
    lead = items[-1][1]
    return tuple((m, c / lead) for m, c in items)


def _dedupe(rels: list[Series]) -> list[Series]:
    out, seen = [], set()
    for r in rels:
        if r.is_zero():
            continue
        key = _normalized_key(r)
        if key in seen:
            continue
        seen.add(key)
        out.append(r)
    return out


def relation_weight(fam: Family) -> int:
    return 4 if fam.kind in (ELLIPTIC, REDUCED_ELLIPTIC) else 2


def relations(fam: Family, maxdeg: int | None = None) -> list[Series]:
    """Defining relations of the family as homogeneous series (zero and
    proportional duplicates removed, generation order preserved)."""
    if maxdeg is None:
        maxdeg = relation_weight(fam)
    return list(_relations(fam, maxdeg))


@lru_cache(maxsize=None)
def _relations(fam: Family, D: int) -> tuple[Series, ...]:
    n = fam.n
    idx = range(1, n + 1)
    rels: list[Series] = []
    if fam.kind == FREE:
        return ()
    if fam.kind == DK:
        t = lambda i, j: fam.t(i, j, D)
        for i, j, k in itertools.permutations(idx, 3):
            if i < j:
                rels.append(bracket(t(i, j), t(i, k) + t(k, j)))
        for i, j, k, l in itertools.permutations(idx, 4):
            if i < j and k < l and (i, j) < (k, l):
                rels.append(bracket(t(i, j), t(k, l)))
    elif fam.kind == CYCLOTOMIC:
        G = range(fam.N)
        tg = lambda i, j, a: fam.tg(i, j, a, D)
        k0 = lambda i: fam.k(i, D)
        sum_t = lambda i, j: sum((tg(i, j, a) for a in G), Series.zero(fam.alphabet, D))
        # (b)
        for i, j, k in itertools.permutations(idx, 3):
            if j < k:
                for a in G:
                    rels.append(bracket(k0(i), tg(j, k, a)))
        for i, j, k, l in itertools.permutations(idx, 4):
            if i < j and k < l and (i, j) < (k, l):
                for a in G:
                    for b in G:
                        rels.append(bracket(tg(i, j, a), tg(k, l, b)))
        # (c)
        for i, j, k in itertools.permutations(idx, 3):
            for a in G:
                for b in G:
                    rels.append(bracket(tg(i, j, a), tg(i, k, a + b) + tg(j, k, b)))
        # (d)
        for i, j in itertools.permutations(idx, 2):
            rels.append(bracket(k0(i), k0(j) + sum_t(i, j)))
        # (e)
        for i, j in itertools.permutations(idx, 2):
            for a in G:
                rels.append(bracket(k0(i) + k0(j) + sum_t(i, j), tg(i, j, a)))
    else:
        # build in tell(n) and substitute the eliminated generators if reduced
        full = Family(ELLIPTIC, n)
        t = lambda i, j: full.t(i, j, D)
        al = lambda i: full.alpha(i, D)
        be = lambda i: full.beta(i, D)
        zero = Series.zero(full.alphabet, D)
        for i, j, k, l in itertools.permutations(idx, 4):
            if i < j and k < l and (i, j) < (k, l):
                rels.append(bracket(t(i, j), t(k, l)))          # (b)
        for i, j, k in itertools.permutations(idx, 3):
            if i < j:
                rels.append(bracket(t(i, j), t(i, k) + t(j, k)))  # (c)
        for i, j in itertools.permutations(idx, 2):
            rels.append(bracket(al(i), be(j)) - t(i, j))         # (d)
        for i, j in itertools.combinations(idx, 2):
            rels.append(bracket(al(i), al(j)))                   # (e)
            rels.append(bracket(be(i), be(j)))
        for i in idx:
            s = sum((t(i, j) for j in idx if j != i), zero)
            rels.append(bracket(al(i), be(i)) + s)               # (f)
        for i, j, k in itertools.permutations(idx, 3):
            if j < k:
                rels.append(bracket(al(i), t(j, k)))             # (g)
                rels.append(bracket(be(i), t(j, k)))
        for i, j in itertools.combinations(idx, 2):
            rels.append(bracket(al(i) + al(j), t(i, j)))         # (h)
            rels.append(bracket(be(i) + be(j), t(i, j)))
        if fam.kind == REDUCED_ELLIPTIC:
            images = _reduction_images(fam, D)
            rels = [substitute(r, images) for r in rels]
    return tuple(_dedupe(rels))


def _reduction_images(fam: Family, D: int) -> dict[str, Series]:
    """Images of tell(n) generators in tellbar(n)."""
    images = {}
    for i in range(1, fam.n + 1):
        images[f"a[{i}]"] = fam.alpha(i, D)
        images[f"b[{i}]"] = fam.beta(i, D)
    for i, j in itertools.combinations(range(1, fam.n + 1), 2):
        images[f"t[{i},{j}]"] = fam.t(i, j, D)
    return images


def reduce_elliptic(x: Series) -> Series:
    """Project a tell(n) series to tellbar(n) by killing sum(alpha), sum(beta)."""
    fam = parse_family(x.alphabet.name)
    if fam.kind != ELLIPTIC:
        raise IncompatibleContext("expected a tell(n) series")
    bar = Family(REDUCED_ELLIPTIC, fam.n)
    return substitute(x, _reduction_images(bar, x.maxdeg))


# -- actions -------------------------------------------------------------

def _check_perm(sigma: Sequence[int], n: int):
    if sorted(sigma) != list(range(1, n + 1)):
        raise ValueError(f"{tuple(sigma)} is not a permutation of 1..{n}")


def permutation_images(fam: Family, sigma: Sequence[int], D: int) -> dict[str, Series]:
    sigma = tuple(sigma)
    if len(sigma) != fam.n:
        raise IncompatibleContext(f"permutation of {len(sigma)} letters on arity-{fam.n} family")
    _check_perm(sigma, fam.n)
    s = lambda i: sigma[i - 1]
    images = {}
    for g in fam.alphabet.generators:
        kind, idx = _split_name(g.name)
        if kind == "t":
            images[g.name] = fam.t(s(idx[0]), s(idx[1]), D)
        elif kind == "tg":
            images[g.name] = fam.tg(s(idx[0]), s(idx[1]), idx[2], D)
        elif kind == "k":
            images[g.name] = fam.k(s(idx[0]), D)
        elif kind == "a":
            images[g.name] = fam.alpha(s(idx[0]), D)
        elif kind == "b":
            images[g.name] = fam.beta(s(idx[0]), D)
    return images


def symmetric_action(sigma: Sequence[int], x: Series) -> Series:
    """Left action of a permutation (one-line notation, 1-based) on a family element."""
    fam = parse_family(x.alphabet.name)
    if fam.kind == FREE:
        raise IncompatibleContext("no symmetric-group action on a free alphabet")
    return substitute(x, permutation_images(fam, sigma, x.maxdeg), target=(x.alphabet, x.maxdeg))


def gamma_action(gamma: Sequence[int], x: Series) -> Series:
    """Left action of ``gamma`` in (Z/N)^n on tGamma(n,N)."""
    fam = parse_family(x.alphabet.name)
    if fam.kind != CYCLOTOMIC:
        raise IncompatibleContext("Gamma-action needs a tGamma(n,N) series")
    gamma = tuple(gamma)
    if len(gamma) != fam.n:
        raise IncompatibleContext(f"gamma tuple of length {len(gamma)} on arity {fam.n}")
    D = x.maxdeg
    images = {}
    for g in fam.alphabet.generators:
        kind, idx = _split_name(g.name)
        if kind == "k":
            images[g.name] = fam.k(idx[0], D)
        else:
            i, j, a = idx
            images[g.name] = fam.tg(i, j, a + gamma[i - 1] - gamma[j - 1], D)
    return substitute(x, images, target=(x.alphabet, D))


_NAME_RE = re.compile(r"^([a-z]+)\[([0-9,;]+)\]$")


def _split_name(name: str):
    m = _NAME_RE.match(name)
    if not m:
        return name, ()
    head, body = m.group(1), m.group(2)
    if ";" in body:
        ij, a = body.split(";")
        i, j = ij.split(",")
        return "tg", (int(i), int(j), int(a))
    return head, tuple(int(p) for p in body.split(","))


def parse_permutation(text: str) -> tuple[int, ...]:
    m = re.match(r"^\s*(?:perm\((.*)\)|\((.*)\)|([0-9, -]+))\s*$", text)
    if not m:
        raise ValueError(f"expected perm(...), got {text!r}")
    return tuple(_parse_int_args(next(g for g in m.groups() if g is not None)))


def parse_gamma(text: str) -> tuple[int, ...]:
    m = re.match(r"^\s*(?:gamma\((.*)\)|\((.*)\)|([0-9, -]+))\s*$", text)
    if not m:
        raise ValueError(f"expected gamma(...), got {text!r}")
    return tuple(_parse_int_args(next(g for g in m.groups() if g is not None)))


def compose_permutations(sigma, tau):
    """``(sigma tau)(i) = sigma(tau(i))``."""
    return tuple(sigma[t - 1] for t in tau)


__all__ = [
    "Family", "FREE", "DK", "CYCLOTOMIC", "ELLIPTIC", "REDUCED_ELLIPTIC",
    "parse_family", "alphabet_from_name", "relations", "symmetric_action",
    "gamma_action", "parse_permutation", "parse_gamma", "compose_permutations",
    "reduce_elliptic", "relation_weight", "permutation_images", "family_of",
]
