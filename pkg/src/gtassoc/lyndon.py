"""Lyndon words and their standard bracketing: a basis of the free Lie
algebra, graded by weight."""
from __future__ import annotations

from functools import lru_cache

from .series import Alphabet, Series, bracket


def lyndon_words(k: int, length: int) -> list[tuple[int, ...]]:
    """Lyndon words of exactly ``length`` letters over ``0..k-1`` (Duval's
    generator), in lexicographic order."""
    out = []
    if length == 0 or k == 0:
        return out
    w = [-1]
    while w:
        w[-1] += 1
        if len(w) == length:
            out.append(tuple(w))
        m = len(w)
        while len(w) < length:
            w.append(w[len(w) - m])
        while w and w[-1] == k - 1:
            w.pop()
    return out


def is_lyndon(word) -> bool:
    word = tuple(word)
    return bool(word) and all(word < word[i:] for i in range(1, len(word)))


def standard_factorization(word: tuple[int, ...]):
    """``word = u v`` with ``v`` the longest proper Lyndon suffix."""
    for i in range(1, len(word)):
        if is_lyndon(word[i:]):
            return word[:i], word[i:]
    raise ValueError(f"{word} has no standard factorization")


def lyndon_basis(alphabet: Alphabet, d: int) -> list[tuple[int, ...]]:
    """Lyndon words of total weight ``d`` (lexicographic order)."""
    return list(_lyndon_by_weight(alphabet, d))


@lru_cache(maxsize=None)
def _lyndon_by_weight(alphabet: Alphabet, d: int):
    weights = alphabet.weights
    k = len(weights)
    wmin = min(weights) if weights else 1
    out = []
    for length in range(1, d // wmin + 1):
        for w in lyndon_words(k, length):
            if sum(weights[i] for i in w) == d:
                out.append(w)
    return tuple(sorted(out))


def lyndon_bracket(alphabet: Alphabet, maxdeg: int, word: tuple[int, ...]) -> Series:
    """Standard bracketing of a Lyndon word as a series."""
    if len(word) == 1:
        return Series.gen(alphabet, maxdeg, alphabet.generators[word[0]].name)
    u, v = standard_factorization(word)
    return bracket(lyndon_bracket(alphabet, maxdeg, u), lyndon_bracket(alphabet, maxdeg, v))


def format_word(alphabet: Alphabet, word) -> str:
    return "".join(alphabet.generators[i].name for i in word)


__all__ = ["lyndon_words", "is_lyndon", "standard_factorization", "lyndon_basis",
           "lyndon_bracket", "format_word"]
