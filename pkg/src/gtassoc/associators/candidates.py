"""Candidate associators, GT-type elements and their text files.

Letter conventions (fixed so that files are self-describing):

* ``phi`` and ``f`` live in ``free(x,y)``;
* ``psi`` lives in ``free(k,t0,...,t{N-1})`` where ``k`` stands for the
  0-1 chord and ``t{a}`` for the 1-2 chord with label ``a``;
* ``aplus`` and ``aminus`` live in ``free(a,b)`` (alpha_1 and beta_2 of the
  reduced elliptic algebra in arity 2);
* the cyclotomic ``g`` lives in ``free(X,Y0,...,Y{N-1})`` with ``X`` for
  ``x^N`` and ``Y{a}`` for ``x^a y x^-a``;
* ``gplus`` and ``gminus`` live in ``free(A,B)``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from ..malcev import relative_alphabet
from ..series import (Alphabet, IncompatibleContext, Series, exp, format_rational,
                      format_series, is_grouplike, parse_rational, parse_series)


def xy_alphabet() -> Alphabet:
    return Alphabet.free("x", "y")


def psi_alphabet(N: int) -> Alphabet:
    return Alphabet.free("k", *(f"t{a}" for a in range(N)))


def ab_alphabet() -> Alphabet:
    return Alphabet.free("a", "b")


def gell_alphabet() -> Alphabet:
    return Alphabet.free("A", "B")


def _expect(s: Series, alphabet: Alphabet, what: str):
    if s.alphabet != alphabet:
        raise IncompatibleContext(f"{what} must live in {alphabet.name}, got {s.alphabet.name}")


def _same_maxdeg(*series: Series):
    if len({s.maxdeg for s in series}) > 1:
        raise IncompatibleContext("all series of one element must share maxdeg")


@dataclass(frozen=True)
class DrinfeldCandidate:
    lam: Fraction
    phi: Series

    def __post_init__(self):
        object.__setattr__(self, "lam", Fraction(self.lam))
        _expect(self.phi, xy_alphabet(), "phi")

    @property
    def maxdeg(self) -> int:
        return self.phi.maxdeg

    @classmethod
    def trivial(cls, lam, maxdeg: int) -> "DrinfeldCandidate":
        return cls(lam, Series.one(xy_alphabet(), maxdeg))


@dataclass(frozen=True)
class CyclotomicCandidate:
    lam: Fraction
    phi: Series
    psi: Series
    N: int

    def __post_init__(self):
        object.__setattr__(self, "lam", Fraction(self.lam))
        _expect(self.phi, xy_alphabet(), "phi")
        _expect(self.psi, psi_alphabet(self.N), "psi")
        _same_maxdeg(self.phi, self.psi)

    @property
    def maxdeg(self) -> int:
        return self.phi.maxdeg

    @property
    def drinfeld(self) -> DrinfeldCandidate:
        return DrinfeldCandidate(self.lam, self.phi)

    @classmethod
    def trivial(cls, lam, N: int, maxdeg: int) -> "CyclotomicCandidate":
        return cls(lam, Series.one(xy_alphabet(), maxdeg), Series.one(psi_alphabet(N), maxdeg), N)


@dataclass(frozen=True)
class EllipticCandidate:
    lam: Fraction
    phi: Series
    aplus: Series
    aminus: Series

    def __post_init__(self):
        object.__setattr__(self, "lam", Fraction(self.lam))
        _expect(self.phi, xy_alphabet(), "phi")
        _expect(self.aplus, ab_alphabet(), "aplus")
        _expect(self.aminus, ab_alphabet(), "aminus")
        _same_maxdeg(self.phi, self.aplus, self.aminus)

    @property
    def maxdeg(self) -> int:
        return self.phi.maxdeg

    @property
    def drinfeld(self) -> DrinfeldCandidate:
        return DrinfeldCandidate(self.lam, self.phi)

    @classmethod
    def trivial(cls, lam, maxdeg: int) -> "EllipticCandidate":
        one = Series.one(ab_alphabet(), maxdeg)
        return cls(lam, Series.one(xy_alphabet(), maxdeg), one, one)


def _check_mu(mu: Fraction):
    if mu == 0:
        raise ValueError("mu must be nonzero")


@dataclass(frozen=True)
class GTElement:
    mu: Fraction
    f: Series

    def __post_init__(self):
        object.__setattr__(self, "mu", Fraction(self.mu))
        _check_mu(self.mu)
        _expect(self.f, xy_alphabet(), "f")

    @property
    def maxdeg(self) -> int:
        return self.f.maxdeg

    @classmethod
    def identity(cls, maxdeg: int) -> "GTElement":
        return cls(Fraction(1), Series.one(xy_alphabet(), maxdeg))


@dataclass(frozen=True)
class GTGammaElement:
    mu: Fraction
    f: Series
    g: Series
    N: int

    def __post_init__(self):
        object.__setattr__(self, "mu", Fraction(self.mu))
        _check_mu(self.mu)
        _expect(self.f, xy_alphabet(), "f")
        _expect(self.g, relative_alphabet(self.N), "g")
        _same_maxdeg(self.f, self.g)

    @property
    def maxdeg(self) -> int:
        return self.f.maxdeg

    @property
    def gt(self) -> GTElement:
        return GTElement(self.mu, self.f)

    @classmethod
    def identity(cls, N: int, maxdeg: int) -> "GTGammaElement":
        return cls(Fraction(1), Series.one(xy_alphabet(), maxdeg),
                   Series.one(relative_alphabet(N), maxdeg), N)


@dataclass(frozen=True)
class GTEllElement:
    mu: Fraction
    f: Series
    gplus: Series
    gminus: Series

    def __post_init__(self):
        object.__setattr__(self, "mu", Fraction(self.mu))
        _check_mu(self.mu)
        _expect(self.f, xy_alphabet(), "f")
        _expect(self.gplus, gell_alphabet(), "gplus")
        _expect(self.gminus, gell_alphabet(), "gminus")
        _same_maxdeg(self.f, self.gplus, self.gminus)

    @property
    def maxdeg(self) -> int:
        return self.f.maxdeg

    @property
    def gt(self) -> GTElement:
        return GTElement(self.mu, self.f)

    @classmethod
    def identity(cls, maxdeg: int) -> "GTEllElement":
        A = gell_alphabet()
        # g_+ and g_- are the generator words A and B themselves
        return cls(Fraction(1), Series.one(xy_alphabet(), maxdeg),
                   exp(Series.gen(A, maxdeg, "A")), exp(Series.gen(A, maxdeg, "B")))


def all_grouplike(*series: Series) -> bool:
    return all(is_grouplike(s) for s in series)


# -- text files -------------------------------------------------------------------

_BLOCK_RE = re.compile(r"^([a-z]+):\s*$")


def _split_blocks(text: str):
    header = None
    scalars: dict[str, str] = {}
    blocks: dict[str, list[str]] = {}
    current = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        line = line.strip()
        mt = _BLOCK_RE.match(line)
        if header is None:
            header = line
            continue
        if mt:
            current = mt.group(1)
            if current in blocks:
                raise ValueError(f"line {lineno}: duplicate block {current!r}")
            blocks[current] = []
        elif current is None:
            key, _, val = line.partition(" ")
            if not val:
                raise ValueError(f"line {lineno}: expected '<key> <value>'")
            scalars[key] = val.strip()
        else:
            blocks[current].append(line)
    if header is None:
        raise ValueError("empty file")
    return header, scalars, {k: parse_series("\n".join(v)) for k, v in blocks.items()}


def _need(mapping: dict, key: str, what: str):
    if key not in mapping:
        raise ValueError(f"{what} file lacks {key!r}")
    return mapping[key]


def _parse_kind(header: str, expected: str) -> tuple[str, int | None]:
    """``candidate cyclotomic(2)`` -> (``cyclotomic``, 2); ``gtgamma(2)`` -> (``gtgamma``, 2)."""
    mt = re.match(r"^(\w+)(?:\s+(\w+))?(?:\((\d+)\))?$", header.replace(" (", "("))
    if not mt:
        raise ValueError(f"bad header {header!r}")
    head, kind, n = mt.group(1), mt.group(2), mt.group(3)
    if expected == "candidate":
        if head != "candidate" or kind is None:
            raise ValueError(f"expected a 'candidate <kind>' header, got {header!r}")
        return kind, int(n) if n else None
    if kind is not None:
        raise ValueError(f"bad GT header {header!r}")
    return head, int(n) if n else None


def parse_candidate(text: str):
    header, scalars, blocks = _split_blocks(text)
    kind, N = _parse_kind(header, "candidate")
    lam = parse_rational(_need(scalars, "lambda", "candidate"))
    phi = _need(blocks, "phi", "candidate")
    if kind == "drinfeld" and N is None:
        return DrinfeldCandidate(lam, phi)
    if kind == "cyclotomic" and N is not None:
        return CyclotomicCandidate(lam, phi, _need(blocks, "psi", "candidate"), N)
    if kind == "elliptic" and N is None:
        return EllipticCandidate(lam, phi, _need(blocks, "aplus", "candidate"),
                                 _need(blocks, "aminus", "candidate"))
    raise ValueError(f"unknown candidate kind in header {header!r}")


def _block(name: str, s: Series) -> str:
    return f"{name}:\n{format_series(s)}"


def format_candidate(c) -> str:
    if isinstance(c, DrinfeldCandidate):
        head, blocks = "candidate drinfeld", [("phi", c.phi)]
    elif isinstance(c, CyclotomicCandidate):
        head, blocks = f"candidate cyclotomic({c.N})", [("phi", c.phi), ("psi", c.psi)]
    elif isinstance(c, EllipticCandidate):
        head, blocks = "candidate elliptic", [("phi", c.phi), ("aplus", c.aplus),
                                              ("aminus", c.aminus)]
    else:
        raise TypeError(f"not a candidate: {type(c).__name__}")
    return f"{head}\nlambda {format_rational(c.lam)}\n" + "".join(_block(n, s) for n, s in blocks)


def parse_gt(text: str):
    header, scalars, blocks = _split_blocks(text)
    kind, N = _parse_kind(header, "gt")
    mu = parse_rational(_need(scalars, "mu", "GT"))
    f = _need(blocks, "f", "GT")
    if kind == "gt" and N is None:
        return GTElement(mu, f)
    if kind == "gtgamma" and N is not None:
        return GTGammaElement(mu, f, _need(blocks, "g", "GT"), N)
    if kind == "gtell" and N is None:
        return GTEllElement(mu, f, _need(blocks, "gplus", "GT"), _need(blocks, "gminus", "GT"))
    raise ValueError(f"unknown GT kind in header {header!r}")


def format_gt(g) -> str:
    if isinstance(g, GTElement):
        head, blocks = "gt", [("f", g.f)]
    elif isinstance(g, GTGammaElement):
        head, blocks = f"gtgamma({g.N})", [("f", g.f), ("g", g.g)]
    elif isinstance(g, GTEllElement):
        head, blocks = "gtell", [("f", g.f), ("gplus", g.gplus), ("gminus", g.gminus)]
    else:
        raise TypeError(f"not a GT element: {type(g).__name__}")
    return f"{head}\nmu {format_rational(g.mu)}\n" + "".join(_block(n, s) for n, s in blocks)
