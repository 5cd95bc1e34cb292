"""Truncated series in a free associative algebra on a weighted alphabet.

A :class:`Series` is a finitely supported map from monomials to exact
rationals, cut off at a maximal total weight ``maxdeg``.  Monomials are
stored as tuples of generator indices into the owning :class:`Alphabet`.
Every generator is primitive for the coproduct, so exp/log exchange
primitive (Lie) series and group-like series.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping


class IncompatibleContext(ValueError):
    """Raised when series from different alphabets or truncations meet."""


class SeriesDomainError(ValueError):
    """Raised when an operation is applied outside its domain."""


Monomial = tuple  # tuple[int, ...], indices into Alphabet.generators


@dataclass(frozen=True)
class Generator:
    name: str
    weight: int = 1
    bidegree: tuple[int, int] | None = None

    def __post_init__(self):
        if self.weight < 1:
            raise ValueError(f"generator {self.name!r} must have weight >= 1")
        if self.bidegree is not None and sum(self.bidegree) != self.weight:
            raise ValueError(f"bidegree of {self.name!r} does not add up to its weight")


@dataclass(frozen=True)
class Alphabet:
    """An ordered generator alphabet.  The declaration order is the letter order."""

    name: str
    generators: tuple[Generator, ...]
    _index: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        index = {}
        for i, g in enumerate(self.generators):
            if g.name in index:
                raise ValueError(f"duplicate generator name {g.name!r} in {self.name}")
            index[g.name] = i
        object.__setattr__(self, "_index", index)

    @classmethod
    def free(cls, *names: str, weights: Iterable[int] | None = None) -> "Alphabet":
        ws = list(weights) if weights is not None else [1] * len(names)
        gens = tuple(Generator(n, w) for n, w in zip(names, ws))
        label = f"free({','.join(names)})"
        if weights is not None and any(w != 1 for w in ws):
            label = f"free({','.join(f'{n}:{w}' for n, w in zip(names, ws))})"
        return cls(label, gens)

    def __len__(self):
        return len(self.generators)

    @cached_property
    def weights(self) -> tuple[int, ...]:
        return tuple(g.weight for g in self.generators)

    @cached_property
    def names(self) -> tuple[str, ...]:
        return tuple(g.name for g in self.generators)

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"no generator {name!r} in alphabet {self.name}") from None

    def __contains__(self, name) -> bool:
        return name in self._index

    def weight(self, mono: Monomial) -> int:
        w = self.weights
        return sum(w[i] for i in mono)

    def monomials(self, d: int) -> list[Monomial]:
        """All monomials of total weight exactly ``d``, in increasing order."""
        out = []
        w = self.weights
        n = len(w)

        def rec(prefix, rest):
            if rest == 0:
                out.append(tuple(prefix))
                return
            for i in range(n):
                if w[i] <= rest:
                    prefix.append(i)
                    rec(prefix, rest - w[i])
                    prefix.pop()

        rec([], d)
        out.sort()
        return out

    def monomial_counts(self, maxdeg: int) -> list[int]:
        """Number of monomials of each weight 0..maxdeg."""
        counts = [0] * (maxdeg + 1)
        counts[0] = 1
        for d in range(1, maxdeg + 1):
            counts[d] = sum(counts[d - w] for w in self.weights if w <= d)
        return counts

    def format_monomial(self, mono: Monomial) -> str:
        if not mono:
            return "1"
        return ".".join(self.generators[i].name for i in mono)

    def parse_monomial(self, text: str) -> Monomial:
        text = text.strip()
        if text == "1":
            return ()
        return tuple(self.index(part) for part in split_monomial(text))


def split_monomial(text: str) -> list[str]:
    """Split ``t[1,2].a[1].x`` on the dots that are not inside brackets."""
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch == "[":
            depth += 1
        elif ch == "]":
            depth -= 1
        if ch == "." and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    if any(not p for p in parts):
        raise ValueError(f"malformed monomial {text!r}")
    return parts


def monomial_key(alphabet: Alphabet, mono: Monomial):
    """Sort key: total weight first, then lexicographic in letter order."""
    return (alphabet.weight(mono), mono)


def _frac(c) -> Fraction:
    return c if isinstance(c, Fraction) else Fraction(c)


class Series:
    """Element of the free algebra on ``alphabet``, truncated at ``maxdeg``.

    Values are treated as immutable; every operation returns a new series.
    """

    __slots__ = ("alphabet", "maxdeg", "terms", "_by_weight")

    def __init__(self, alphabet: Alphabet, maxdeg: int, terms: Mapping | None = None,
                 *, _trusted: bool = False):
        if maxdeg < 0:
            raise ValueError("maxdeg must be non-negative")
        self.alphabet = alphabet
        self.maxdeg = maxdeg
        self._by_weight = None
        if _trusted:
            self.terms = terms
            return
        clean = {}
        if terms:
            w = alphabet.weights
            for m, c in terms.items():
                m = tuple(m)
                if sum(w[i] for i in m) > maxdeg:
                    continue
                c = _frac(c)
                if c:
                    clean[m] = clean.get(m, 0) + c
            clean = {m: c for m, c in clean.items() if c}
        self.terms = clean

    # -- constructors -------------------------------------------------
    @classmethod
    def zero(cls, alphabet: Alphabet, maxdeg: int) -> "Series":
        return cls(alphabet, maxdeg, {}, _trusted=True)

    @classmethod
    def one(cls, alphabet: Alphabet, maxdeg: int) -> "Series":
        return cls(alphabet, maxdeg, {(): Fraction(1)}, _trusted=True)

    @classmethod
    def scalar(cls, alphabet: Alphabet, maxdeg: int, c) -> "Series":
        return cls(alphabet, maxdeg, {(): c})

    @classmethod
    def gen(cls, alphabet: Alphabet, maxdeg: int, name: str, coeff=1) -> "Series":
        return cls(alphabet, maxdeg, {(alphabet.index(name),): coeff})

    @classmethod
    def monomial(cls, alphabet: Alphabet, maxdeg: int, names: Iterable[str], coeff=1) -> "Series":
        return cls(alphabet, maxdeg, {tuple(alphabet.index(n) for n in names): coeff})

    def like(self, terms) -> "Series":
        return Series(self.alphabet, self.maxdeg, terms)

    # -- basic queries ------------------------------------------------
    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def constant_term(self) -> Fraction:
        return self.terms.get((), Fraction(0))

    def __getitem__(self, mono) -> Fraction:
        if isinstance(mono, str):
            mono = self.alphabet.parse_monomial(mono)
        return self.terms.get(tuple(mono), Fraction(0))

    def coefficient(self, *names: str) -> Fraction:
        return self.terms.get(tuple(self.alphabet.index(n) for n in names), Fraction(0))

    def weight_of(self, mono: Monomial) -> int:
        return self.alphabet.weight(mono)

    def by_weight(self) -> dict[int, list]:
        if self._by_weight is None:
            w = self.alphabet.weights
            buckets: dict[int, list] = {}
            for m, c in self.terms.items():
                buckets.setdefault(sum(w[i] for i in m), []).append((m, c))
            self._by_weight = buckets
        return self._by_weight

    def min_weight(self) -> int | None:
        bw = self.by_weight()
        return min(bw) if bw else None

    def homogeneous_part(self, d: int) -> "Series":
        return Series(self.alphabet, self.maxdeg, dict(self.by_weight().get(d, [])), _trusted=True)

    def is_homogeneous(self) -> bool:
        return len(self.by_weight()) <= 1

    def truncate(self, maxdeg: int) -> "Series":
        """Re-truncate to a (usually smaller) degree; the context changes to ``maxdeg``."""
        return Series(self.alphabet, maxdeg, self.terms)

    def sorted_terms(self) -> list:
        a = self.alphabet
        return sorted(self.terms.items(), key=lambda mc: monomial_key(a, mc[0]))

    # -- arithmetic ---------------------------------------------------
    def _check(self, other: "Series"):
        if not isinstance(other, Series):
            raise TypeError(f"expected Series, got {type(other).__name__}")
        if other.alphabet != self.alphabet or other.maxdeg != self.maxdeg:
            raise IncompatibleContext(
                f"context mismatch: {self.alphabet.name}/{self.maxdeg} vs "
                f"{other.alphabet.name}/{other.maxdeg}")

    def _coerce(self, other):
        if isinstance(other, Series):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return Series.scalar(self.alphabet, self.maxdeg, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms = dict(self.terms)
        for m, c in other.terms.items():
            v = terms.get(m, 0) + c
            if v:
                terms[m] = v
            else:
                terms.pop(m, None)
        return Series(self.alphabet, self.maxdeg, terms, _trusted=True)

    __radd__ = __add__

    def __neg__(self):
        return Series(self.alphabet, self.maxdeg, {m: -c for m, c in self.terms.items()}, _trusted=True)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "Series":
        c = _frac(c)
        if not c:
            return Series.zero(self.alphabet, self.maxdeg)
        return Series(self.alphabet, self.maxdeg, {m: c * v for m, v in self.terms.items()}, _trusted=True)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, Series):
            return NotImplemented
        self._check(other)
        return _mul(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(Fraction(1) / _frac(other))
        return NotImplemented

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise SeriesDomainError("only non-negative integer powers of series")
        result = Series.one(self.alphabet, self.maxdeg)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Series.scalar(self.alphabet, self.maxdeg, other)
        if not isinstance(other, Series):
            return NotImplemented
        return (self.alphabet == other.alphabet and self.maxdeg == other.maxdeg
                and self.terms == other.terms)

    def __hash__(self):
        return hash((self.alphabet.name, self.maxdeg, frozenset(self.terms.items())))

    def __repr__(self):
        return f"Series({self.alphabet.name}, maxdeg={self.maxdeg}, {self.pretty()})"

    def pretty(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.sorted_terms():
            coeff = format_rational(c)
            parts.append(f"{coeff}*{self.alphabet.format_monomial(m)}" if m else coeff)
        return " + ".join(parts)


def _mul(a: Series, b: Series) -> Series:
    D = a.maxdeg
    aw, bw = a.by_weight(), b.by_weight()
    out: dict = {}
    for w1, ta in aw.items():
        for w2, tb in bw.items():
            if w1 + w2 > D:
                continue
            for m1, c1 in ta:
                for m2, c2 in tb:
                    m = m1 + m2
                    v = out.get(m, 0) + c1 * c2
                    if v:
                        out[m] = v
                    else:
                        del out[m]
    return Series(a.alphabet, D, out, _trusted=True)


def bracket(a: Series, b: Series) -> Series:
    """Commutator ``ab - ba``."""
    return a * b - b * a


lie_bracket = bracket


def nested_bracket(*xs: Series) -> Series:
    """Right-nested bracket ``[x1, [x2, [..., xn]]]``."""
    out = xs[-1]
    for x in reversed(xs[:-1]):
        out = bracket(x, out)
    return out


def add(a: Series, b: Series) -> Series:
    return a + b


def mul(a: Series, b: Series) -> Series:
    return a * b


# -- Hopf structure -----------------------------------------------------

class TensorSquare:
    """Truncated element of A (x) A; keys are pairs of monomials."""

    __slots__ = ("alphabet", "maxdeg", "terms")

    def __init__(self, alphabet: Alphabet, maxdeg: int, terms: dict):
        self.alphabet = alphabet
        self.maxdeg = maxdeg
        self.terms = {k: v for k, v in terms.items() if v}

    def __eq__(self, other):
        if not isinstance(other, TensorSquare):
            return NotImplemented
        return (self.alphabet == other.alphabet and self.maxdeg == other.maxdeg
                and self.terms == other.terms)

    def __mul__(self, other: "TensorSquare") -> "TensorSquare":
        if other.alphabet != self.alphabet or other.maxdeg != self.maxdeg:
            raise IncompatibleContext("tensor squares from different contexts")
        w = self.alphabet.weight
        out: dict = {}
        for (a1, a2), c in self.terms.items():
            wa = w(a1) + w(a2)
            for (b1, b2), d in other.terms.items():
                if wa + w(b1) + w(b2) > self.maxdeg:
                    continue
                k = (a1 + b1, a2 + b2)
                out[k] = out.get(k, 0) + c * d
        return TensorSquare(self.alphabet, self.maxdeg, out)

    def __sub__(self, other):
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) - v
        return TensorSquare(self.alphabet, self.maxdeg, out)

    def is_zero(self):
        return not self.terms

    def __repr__(self):
        f = self.alphabet.format_monomial
        body = " + ".join(f"{c}*{f(a)}(x){f(b)}" for (a, b), c in sorted(self.terms.items()))
        return f"TensorSquare({body or '0'})"


def _deshuffle(mono: Monomial):
    n = len(mono)
    for mask in range(1 << n):
        left = tuple(mono[i] for i in range(n) if mask >> i & 1)
        right = tuple(mono[i] for i in range(n) if not mask >> i & 1)
        yield left, right


def coproduct(a: Series) -> TensorSquare:
    """Coproduct with every generator primitive, extended multiplicatively."""
    out: dict = {}
    for m, c in a.terms.items():
        for k in _deshuffle(m):
            out[k] = out.get(k, 0) + c
    return TensorSquare(a.alphabet, a.maxdeg, out)


def tensor(a: Series, b: Series) -> TensorSquare:
    a._check(b)
    w = a.alphabet.weight
    out = {}
    for m1, c1 in a.terms.items():
        w1 = w(m1)
        for m2, c2 in b.terms.items():
            if w1 + w(m2) <= a.maxdeg:
                out[(m1, m2)] = c1 * c2
    return TensorSquare(a.alphabet, a.maxdeg, out)


def counit(a: Series) -> Fraction:
    return a.constant_term()


def is_grouplike(g: Series) -> bool:
    if g.constant_term() != 1:
        return False
    return coproduct(g) == tensor(g, g)


def is_primitive(a: Series) -> bool:
    if a.constant_term() != 0:
        return False
    expected = {}
    for m, c in a.terms.items():
        expected[((), m)] = expected.get(((), m), 0) + c
        expected[(m, ())] = expected.get((m, ()), 0) + c
    return coproduct(a) == TensorSquare(a.alphabet, a.maxdeg, expected)


# -- exp / log / BCH ----------------------------------------------------

def exp(a: Series) -> Series:
    if a.constant_term() != 0:
        raise SeriesDomainError("exp needs a series with zero constant term")
    result = Series.one(a.alphabet, a.maxdeg)
    term = result
    for n in range(1, a.maxdeg + 1):
        term = (term * a).scale(Fraction(1, n))
        if term.is_zero():
            break
        result = result + term
    return result


def log(g: Series) -> Series:
    if g.constant_term() != 1:
        raise SeriesDomainError("log needs a series with constant term 1")
    u = g - 1
    result = Series.zero(g.alphabet, g.maxdeg)
    power = Series.one(g.alphabet, g.maxdeg)
    for n in range(1, g.maxdeg + 1):
        power = power * u
        if power.is_zero():
            break
        result = result + power.scale(Fraction((-1) ** (n + 1), n))
    return result


def inverse(g: Series) -> Series:
    """Multiplicative inverse of a series with nonzero constant term."""
    c = g.constant_term()
    if c == 0:
        raise SeriesDomainError("series with zero constant term is not invertible")
    u = Series.one(g.alphabet, g.maxdeg) - g.scale(1 / c)
    result = Series.one(g.alphabet, g.maxdeg)
    power = result
    for _ in range(g.maxdeg):
        power = power * u
        if power.is_zero():
            break
        result = result + power
    return result.scale(1 / c)


def bch(a: Series, b: Series) -> Series:
    """``log(exp(a) exp(b))`` within the truncation."""
    a._check(b)
    return log(exp(a) * exp(b))


# -- substitution -------------------------------------------------------

def substitute(a: Series, images: Mapping[str, Series], target: tuple[Alphabet, int] | None = None) -> Series:
    """Algebra morphism sending each generator name to its image series.

    Images may contain lower-weight terms (constant terms included); the
    result is truncated at the images' common ``maxdeg``.
    """
    imgs = [None] * len(a.alphabet)
    ctx = None
    for name, s in images.items():
        if name not in a.alphabet:
            continue
        if ctx is None:
            ctx = (s.alphabet, s.maxdeg)
        elif (s.alphabet, s.maxdeg) != ctx:
            raise IncompatibleContext("substitution images live in different contexts")
        imgs[a.alphabet.index(name)] = s
    if ctx is None:
        if target is None:
            if a.alphabet.generators:
                raise SeriesDomainError("no images given and no target context")
            ctx = (a.alphabet, a.maxdeg)
        else:
            ctx = target
    elif target is not None and target != ctx:
        raise IncompatibleContext("images do not live in the requested target")
    used = {i for m in a.terms for i in m}
    missing = [a.alphabet.generators[i].name for i in sorted(used) if imgs[i] is None]
    if missing:
        raise SeriesDomainError(f"no image for generator(s) {', '.join(missing)}")
    alph, D = ctx
    one = Series.one(alph, D)
    cache: dict = {(): one}

    def prod(m):
        r = cache.get(m)
        if r is None:
            r = prod(m[:-1]) * imgs[m[-1]]
            cache[m] = r
        return r

    out: dict = {}
    for m, c in sorted(a.terms.items()):
        p = prod(m)
        for k, v in p.terms.items():
            nv = out.get(k, 0) + c * v
            if nv:
                out[k] = nv
            else:
                del out[k]
    return Series(alph, D, out, _trusted=True)


# -- Dynkin projection (used to read off Lie components) ------------------

def dynkin(a: Series) -> Series:
    """Dynkin map: each monomial w of length n goes to [w1,[w2,...]]/n.

    On a Lie series this is the identity (Dynkin-Specht-Wever).
    """
    out: dict = {}
    for m, c in a.terms.items():
        if not m:
            continue
        for k, v in _left_bracket_word(m).items():
            out[k] = out.get(k, 0) + c * v / len(m)
    return Series(a.alphabet, a.maxdeg, out)


def _left_bracket_word(m: Monomial) -> dict:
    # [m0,[m1,[...,m_{n-1}]]] expanded; built right to left
    cur = {(m[-1],): Fraction(1)}
    for letter in reversed(m[:-1]):
        nxt: dict = {}
        for w, c in cur.items():
            k1 = (letter,) + w
            k2 = w + (letter,)
            nxt[k1] = nxt.get(k1, 0) + c
            nxt[k2] = nxt.get(k2, 0) - c
        cur = {k: v for k, v in nxt.items() if v}
    return cur


def is_lie(a: Series) -> bool:
    """Fast primitivity test via the Dynkin-Specht-Wever criterion."""
    if a.constant_term() != 0:
        return False
    return dynkin(a) == a


# -- textual format -------------------------------------------------------

def parse_rational(text: str) -> Fraction:
    text = text.strip()
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise ValueError(f"bad rational {text!r}") from None


def format_rational(c: Fraction) -> str:
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_series(s: Series) -> str:
    lines = [f"alphabet {s.alphabet.name}", f"maxdeg {s.maxdeg}"]
    for m, c in s.sorted_terms():
        lines.append(f"{format_rational(c)} {s.alphabet.format_monomial(m)}")
    return "\n".join(lines) + "\n"


def parse_series(text: str, resolve_alphabet=None) -> Series:
    """Parse the line-oriented series format.

    ``resolve_alphabet`` maps an alphabet name to an :class:`Alphabet`; the
    default understands every family name known to :mod:`gtassoc.families`.
    """
    if resolve_alphabet is None:
        from .families import alphabet_from_name as resolve_alphabet
    alphabet = None
    maxdeg = None
    terms: dict = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, _, rest = line.partition(" ")
        rest = rest.strip()
        if head == "alphabet":
            alphabet = resolve_alphabet(rest)
        elif head == "maxdeg":
            maxdeg = int(rest)
        else:
            if alphabet is None or maxdeg is None:
                raise ValueError(f"line {lineno}: term before alphabet/maxdeg header")
            if not rest:
                raise ValueError(f"line {lineno}: expected '<rational> <monomial>'")
            c = parse_rational(head)
            m = alphabet.parse_monomial(rest)
            if alphabet.weight(m) > maxdeg:
                raise ValueError(f"line {lineno}: monomial exceeds maxdeg")
            terms[m] = terms.get(m, 0) + c
    if alphabet is None or maxdeg is None:
        raise ValueError("series text lacks alphabet or maxdeg header")
    return Series(alphabet, maxdeg, terms)


def random_series(alphabet: Alphabet, maxdeg: int, rng, density: float = 0.3,
                  constant: bool = True, coeff_range: int = 3) -> Series:
    """Sparse random series, for property tests."""
    terms = {}
    for d in range(0 if constant else 1, maxdeg + 1):
        for m in alphabet.monomials(d):
            if rng.random() < density:
                num = rng.randint(-coeff_range, coeff_range)
                den = rng.randint(1, 3)
                terms[m] = Fraction(num, den)
    return Series(alphabet, maxdeg, terms)


def random_lie(alphabet: Alphabet, maxdeg: int, rng, nterms: int = 4, mindeg: int = 1) -> Series:
    """Random Lie series built from random brackets of generators."""
    out = Series.zero(alphabet, maxdeg)
    gens = [Series.gen(alphabet, maxdeg, g.name) for g in alphabet.generators]
    for _ in range(nterms):
        depth = rng.randint(mindeg, max(mindeg, maxdeg))
        letters = [rng.choice(gens) for _ in range(depth)]
        term = nested_bracket(*letters) if depth > 1 else letters[0]
        out = out + term.scale(Fraction(rng.randint(-3, 3), rng.randint(1, 3)))
    return out


__all__ = [
    "Alphabet", "Generator", "Series", "TensorSquare", "IncompatibleContext",
    "SeriesDomainError", "add", "mul", "bracket", "lie_bracket", "nested_bracket",
    "coproduct", "tensor", "counit", "is_grouplike", "is_primitive", "is_lie",
    "exp", "log", "inverse", "bch", "substitute", "dynkin", "format_series",
    "parse_series", "parse_rational", "format_rational", "monomial_key",
    "random_series", "random_lie", "split_monomial",
]
