"""Computable Malcev models: free groups, a free group times the scalar
line, and the semidirect model of the relative completion of F2 with
respect to ``F2 -> Z/N``.

Elements are group-like truncated series, optionally paired with a rational
scalar (the line factor) or a residue mod N.  Weights count free letters:
the letter ``X`` standing for ``x^N`` has weight 1 like every other letter.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .series import (Alphabet, IncompatibleContext, Series, SeriesDomainError, exp,
                     format_rational, inverse, is_grouplike, log, parse_rational, substitute)


@dataclass(frozen=True)
class MalcevModel:
    """The ambient group: group-likes in ``alphabet`` (times the scalar line
    when ``scalar``; semidirect with Z/N when ``N > 1``).

    ``action`` names how residue 1 acts on the series part: ``"relative"``
    for the relative completion of F2 (letters ``X, Y0..``), ``"cyclic"``
    for the plain shift ``t{a} -> t{a+1}`` fixing letters without an index.
    """

    alphabet: Alphabet
    maxdeg: int
    N: int = 1
    scalar: bool = False
    action: str = "relative"

    def identity(self) -> "GroupElement":
        return GroupElement(self, Series.one(self.alphabet, self.maxdeg))

    def exp(self, lie: Series, scalar=0, residue: int = 0) -> "GroupElement":
        return GroupElement(self, exp(lie), Fraction(scalar), residue % self.N)

    def letter(self, name: str) -> Series:
        return Series.gen(self.alphabet, self.maxdeg, name)


@dataclass(frozen=True)
class GroupElement:
    model: MalcevModel
    series: Series
    scalar: Fraction = Fraction(0)
    residue: int = 0

    def __post_init__(self):
        m = self.model
        if self.series.alphabet != m.alphabet or self.series.maxdeg != m.maxdeg:
            raise IncompatibleContext("series does not live in the model's algebra")
        if self.series.constant_term() != 1:
            raise SeriesDomainError("group elements have constant term 1")
        if not 0 <= self.residue < m.N:
            raise ValueError(f"residue {self.residue} outside [0, {m.N})")
        if self.scalar and not m.scalar:
            raise ValueError("this model has no scalar-line factor")
        object.__setattr__(self, "scalar", Fraction(self.scalar))

    def log(self) -> Series:
        return log(self.series)

    def is_grouplike(self) -> bool:
        return is_grouplike(self.series)

    def is_identity(self) -> bool:
        return self.residue == 0 and self.scalar == 0 and self.series == 1

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        return group_mul(self, other)

    def __str__(self):
        parts = [self.series.pretty()]
        if self.model.scalar:
            parts.append(format_rational(self.scalar))
        if self.model.N > 1:
            parts.append(f"{self.residue} mod {self.model.N}")
        return "(" + ", ".join(parts) + ")"


# -- the Z/N action on the relative completion ---------------------------------

def relative_alphabet(N: int) -> Alphabet:
    """Letters ``X`` (for ``x^N``) and ``Y0..Y{N-1}`` (for ``x^a y x^-a``)."""
    return Alphabet.free("X", *(f"Y{a}" for a in range(N)))


@lru_cache(maxsize=None)
def _shift_images(N: int, maxdeg: int, a: int) -> dict:
    """Images of the letters under the action of residue ``a``.

    Residue 1 acts by conjugation with the order-N element ``X^{-1/N} x``: it
    fixes ``X`` and sends ``Y_b`` to ``e^{-X/N} Y_{b+1} e^{X/N}`` (for the last
    slot, ``e^{(N-1)X/N} Y_0 e^{-(N-1)X/N}``).
    """
    A = relative_alphabet(N)
    X = Series.gen(A, maxdeg, "X")
    if a == 0:
        return {g: Series.gen(A, maxdeg, g) for g in A.names}
    if a == 1:
        out = {"X": X}
        left, right = exp(-X / N), exp(X / N)
        for b in range(N - 1):
            out[f"Y{b}"] = left * Series.gen(A, maxdeg, f"Y{b + 1}") * right
        k = Fraction(N - 1, N)
        out[f"Y{N - 1}"] = exp(X * k) * Series.gen(A, maxdeg, "Y0") * exp(-X * k)
        return out
    prev = _shift_images(N, maxdeg, a - 1)
    one = _shift_images(N, maxdeg, 1)
    return {g: substitute(s, one) for g, s in prev.items()}


_INDEXED = re.compile(r"^(.*?)(\d+)$")


@lru_cache(maxsize=None)
def _cyclic_images(alphabet: Alphabet, maxdeg: int, N: int, a: int) -> dict:
    out = {}
    for name in alphabet.names:
        mt = _INDEXED.match(name)
        target = f"{mt.group(1)}{(int(mt.group(2)) + a) % N}" if mt else name
        out[name] = Series.gen(alphabet, maxdeg, target)
    return out


def residue_action(model: MalcevModel, a: int, v: Series) -> Series:
    """``a * v``: the action of the residue ``a`` on the series part."""
    a %= model.N
    if a == 0:
        return v
    if model.action == "cyclic":
        return substitute(v, _cyclic_images(model.alphabet, v.maxdeg, model.N, a))
    return substitute(v, _shift_images(model.N, v.maxdeg, a))


# -- group law ------------------------------------------------------------------

def _same_model(g: GroupElement, h: GroupElement):
    if g.model != h.model:
        raise IncompatibleContext("group elements from different Malcev models")


def group_mul(g: GroupElement, h: GroupElement) -> GroupElement:
    """Product; semidirect elements multiply as ``(u,a)(v,b) = (u (a*v), a+b)``."""
    _same_model(g, h)
    m = g.model
    v = residue_action(m, g.residue, h.series) if m.N > 1 else h.series
    return GroupElement(m, g.series * v, g.scalar + h.scalar, (g.residue + h.residue) % m.N)


def group_inv(g: GroupElement) -> GroupElement:
    m = g.model
    u = inverse(g.series)
    if m.N > 1 and g.residue:
        u = residue_action(m, -g.residue, u)
    return GroupElement(m, u, -g.scalar, (-g.residue) % m.N)


def power(g: GroupElement, s) -> GroupElement:
    """``g^s = exp(s log g)``; elements with a nonzero residue only take
    integral exponents, evaluated as repeated products."""
    s = Fraction(s)
    m = g.model
    if g.residue:
        if s.denominator != 1:
            raise SeriesDomainError(
                f"non-integral power {format_rational(s)} of an element with residue {g.residue}")
        base = g if s >= 0 else group_inv(g)
        out = m.identity()
        sq = base
        k = abs(s.numerator)
        while k:
            if k & 1:
                out = group_mul(out, sq)
            sq = group_mul(sq, sq)
            k >>= 1
        return out
    return GroupElement(m, exp(g.log() * s), g.scalar * s, 0)


def commutator(g: GroupElement, h: GroupElement) -> GroupElement:
    return group_mul(group_mul(g, h), group_mul(group_inv(g), group_inv(h)))


# -- word contexts ----------------------------------------------------------------

@dataclass(frozen=True)
class WordContext:
    """A named group presentation together with images of its generators in a model."""

    name: str
    model: MalcevModel
    generators: dict = field(hash=False, compare=False)

    def generator(self, letter: str) -> GroupElement:
        try:
            return self.generators[letter]
        except KeyError:
            raise ValueError(f"unknown generator {letter!r} in {self.name}") from None


def _free_letters(k: int) -> list[str]:
    if k == 1:
        return ["x"]
    if k == 2:
        return ["x", "y"]
    return [f"x{i}" for i in range(1, k + 1)]


_CTX_RE = re.compile(r"^\s*(F\((\d+)\)(xZ)?|relF2\((\d+)\)|PB3)\s*$")


def make_context(name: str, maxdeg: int) -> WordContext:
    """Contexts ``F(k)``, ``F(2)xZ``, ``relF2(N)`` and ``PB3``."""
    mt = _CTX_RE.match(name)
    if not mt:
        raise ValueError(f"unknown group context {name!r}")
    if mt.group(2):
        k = int(mt.group(2))
        letters = _free_letters(k)
        model = MalcevModel(Alphabet.free(*letters), maxdeg, scalar=bool(mt.group(3)))
        gens = {a: model.exp(model.letter(a)) for a in letters}
        if model.scalar:
            gens["c"] = GroupElement(model, Series.one(model.alphabet, maxdeg), Fraction(1))
        return WordContext(name.strip(), model, gens)
    if mt.group(4):
        N = int(mt.group(4))
        if N < 1:
            raise ValueError("relF2 needs N >= 1")
        model = MalcevModel(relative_alphabet(N), maxdeg, N=N)
        X = model.letter("X")
        gens = {"x": GroupElement(model, exp(X / N), residue=1 % N),
                "y": model.exp(model.letter("Y0"))}
        return WordContext(f"relF2({N})", model, gens)
    model = MalcevModel(Alphabet.free("x", "y"), maxdeg, scalar=True)
    ex, ey = exp(model.letter("x")), exp(model.letter("y"))
    gens = {
        "x12": GroupElement(model, ex),
        "x23": GroupElement(model, ey),
        "x13": GroupElement(model, inverse(ex) * inverse(ey), Fraction(1)),
    }
    return WordContext("PB3", model, gens)


def parse_word(text: str) -> list[tuple[str, Fraction]]:
    """Whitespace-separated ``gen^exp`` tokens; a bare ``gen`` means ``gen^1``."""
    word = []
    for tok in text.split():
        gen, sep, e = tok.partition("^")
        if not gen or (sep and not e):
            raise ValueError(f"bad word token {tok!r}")
        word.append((gen, parse_rational(e) if sep else Fraction(1)))
    return word


def format_word(word) -> str:
    return " ".join(f"{g}^{format_rational(Fraction(e))}" for g, e in word)


def word_eval(word, context: WordContext) -> GroupElement:
    """Left-to-right product of generator powers."""
    if isinstance(word, str):
        word = parse_word(word)
    out = context.model.identity()
    for gen, e in word:
        out = group_mul(out, power(context.generator(gen), e))
    return out


def pb3_embed(word, maxdeg: int) -> GroupElement:
    """Image of a word in ``x12, x13, x23`` in the model F2 x (scalar line)."""
    return word_eval(word, make_context("PB3", maxdeg))


def relcomp_f2(word, N: int, maxdeg: int) -> GroupElement:
    """Image of a word in ``x, y`` in the relative completion model."""
    return word_eval(word, make_context(f"relF2({N})", maxdeg))


def residue_of_word(word, N: int) -> int:
    """The projection ``x -> 1, y -> 0`` to Z/N of an integral word."""
    if isinstance(word, str):
        word = parse_word(word)
    total = Fraction(0)
    for gen, e in word:
        if gen == "x":
            total += e
        elif gen != "y":
            raise ValueError(f"unknown generator {gen!r}")
    if total.denominator != 1:
        raise SeriesDomainError("residue of a non-integral word")
    return int(total) % N


__all__ = [
    "MalcevModel", "GroupElement", "WordContext", "group_mul", "group_inv", "power",
    "commutator", "residue_action", "make_context", "parse_word", "format_word", "word_eval",
    "pb3_embed", "relcomp_f2", "residue_of_word", "relative_alphabet",
]
