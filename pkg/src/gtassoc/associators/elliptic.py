"""Elliptic associators (lambda, phi, A+, A-) and the group GT_ell.

``A+`` and ``A-`` are series in ``a, b`` standing for ``alpha_1`` and
``beta_2`` of the reduced elliptic algebra in arity 2.  Both equations are
evaluated in U(tellbar(3)), where the ``t_ij`` have weight 2 and the
``alpha_i``, ``beta_i`` weight 1.

Two readings of the nonagon equation are available: ``"printed"`` takes it
as displayed; ``"operadic"`` uses ``phi(t_jk, t_ij)``, the inverse of the
displayed ``phi(t_ij, t_jk)``, in each of the three factors.  Together with
the mixed equation (identical in both readings) only the latter admits
solutions beyond degree 3 for ``lambda != 0``.
"""
from __future__ import annotations

from fractions import Fraction

from ..families import REDUCED_ELLIPTIC, Family
from ..quotient import DEFAULT_CAP, get_table
from ..series import Series, exp, inverse, log, substitute
from .candidates import EllipticCandidate, GTEllElement, ab_alphabet
from .drinfeld import (_check_maxdeg, act_phi, at, check_drinfeld, compose_f, grouplike_result,
                       solve_lie_system, truncate_to)
from .report import Report, from_residual

SIGNS = ("plus", "minus")
READINGS = ("printed", "operadic")
DEFAULT_READING = "printed"


def _a_at(A: Series, alpha: Series, beta: Series) -> Series:
    return substitute(A, {"a": alpha, "b": beta})


def nonagon_product(c: EllipticCandidate, sign: str, reading: str = DEFAULT_READING) -> Series:
    """Left side of the nonagon equation for ``A+`` or ``A-``, in U(tellbar(3))."""
    A = {"plus": c.aplus, "minus": c.aminus}[sign]
    D, lam, phi = c.maxdeg, c.lam, c.phi
    fam = Family(REDUCED_ELLIPTIC, 3)
    t12, t13, t23 = fam.t(1, 2, D), fam.t(1, 3, D), fam.t(2, 3, D)
    al = [None] + [fam.alpha(i, D) for i in (1, 2, 3)]
    be = [None] + [fam.beta(i, D) for i in (1, 2, 3)]
    if reading not in READINGS:
        raise ValueError(f"unknown reading {reading!r}")

    def P(u, v):
        return at(phi, v, u) if reading == "operadic" else at(phi, u, v)

    h = -lam / 2
    return (P(t12, t23) * _a_at(A, al[1], be[2] + be[3]) * exp((t12 + t13) * h)
            * P(t23, t13) * _a_at(A, al[2], be[3] + be[1]) * exp((t23 + t12) * h)
            * P(t13, t12) * _a_at(A, al[3], be[1] + be[2]) * exp((t13 + t23) * h))


def mixed_sides(c: EllipticCandidate) -> tuple[Series, Series]:
    """``(e^{lam t12}, [u, v])`` with the group commutator ``u v u^-1 v^-1``."""
    D, lam, phi = c.maxdeg, c.lam, c.phi
    fam = Family(REDUCED_ELLIPTIC, 3)
    t12, t13, t23 = fam.t(1, 2, D), fam.t(1, 3, D), fam.t(2, 3, D)
    al1, al2 = fam.alpha(1, D), fam.alpha(2, D)
    be1, be2, be3 = fam.beta(1, D), fam.beta(2, D), fam.beta(3, D)
    p123, p12_13 = at(phi, t12, t23), at(phi, t12, t13)
    u = p123 * _a_at(c.aplus, al1, be2 + be3) * inverse(p123)
    half = exp(t12 * (-lam / 2))
    v = half * p12_13 * _a_at(c.aminus, al2, be1 + be3) * inverse(p12_13) * half
    return exp(t12 * lam), u * v * inverse(u) * inverse(v)


def _residuals(c: EllipticCandidate, reading: str, cache_dir=None, cap: int = DEFAULT_CAP):
    table = get_table(Family(REDUCED_ELLIPTIC, 3), c.maxdeg, cap, cache_dir)
    out = {f"nonagon_{s}": table.reduce(nonagon_product(c, s, reading) - 1) for s in SIGNS}
    lhs, rhs = mixed_sides(c)
    out["mixed"] = table.reduce(lhs - rhs)
    return out


def check_elliptic(c: EllipticCandidate, reading: str = DEFAULT_READING,
                   cache_dir=None, cap: int = DEFAULT_CAP) -> Report:
    if reading not in READINGS:
        raise ValueError(f"unknown reading {reading!r}; choose from {', '.join(READINGS)}")
    rep = Report("elliptic")
    rep.extend(check_drinfeld(c.drinfeld, cache_dir, cap))
    rep.results.append(grouplike_result("aplus_grouplike", c.aplus))
    rep.results.append(grouplike_result("aminus_grouplike", c.aminus))
    for name, res in _residuals(c, reading, cache_dir, cap).items():
        rep.results.append(from_residual(name, res))
    return rep


def solve_elliptic(phi_candidate, degree_one=None, reading: str = "operadic", cache_dir=None):
    """Degree-by-degree ``A+, A-`` completing a Drinfeld candidate; returns
    ``(candidate, free_parameters)``.

    The degree-1 parts enter the weight-2 equations quadratically, so they
    are fixed up front: ``degree_one = ((p+, q+), (p-, q-))`` gives
    ``log A+ = p+ a + q+ b + ...`` and likewise for ``A-``.  The mixed
    equation needs ``q+ p- - p+ q- = lambda``; the default is
    ``A+ ~ e^a`` and ``A- ~ e^{-lambda b}``.
    """
    lam, phi = phi_candidate.lam, phi_candidate.phi
    D = phi.maxdeg
    AB = ab_alphabet()
    if degree_one is None:
        degree_one = ((1, 0), (0, -lam))
    a, b = Series.gen(AB, 1, "a"), Series.gen(AB, 1, "b")
    start = [a * Fraction(p) + b * Fraction(q) for p, q in degree_one]

    def equations(gs, d):
        c = EllipticCandidate(lam, truncate_to(phi, d), gs[0], gs[1])
        out = {}
        for name, res in _residuals(c, reading, cache_dir).items():
            for m, v in res.homogeneous_part(d).terms.items():
                out[(name, m)] = v
        return out

    (lp, lm), free = solve_lie_system([AB, AB], D, equations, start=start, carry=True)
    return EllipticCandidate(lam, phi, exp(lp), exp(lm)), free


# -- GT_ell ------------------------------------------------------------------------

def _g_at(g: Series, A: Series, B: Series) -> Series:
    """``g(A, B)`` for group-like ``A, B`` through their logarithms."""
    return substitute(g, {"A": log(A), "B": log(B)})


def gtell_compose(h1: GTEllElement, h2: GTEllElement) -> GTEllElement:
    _check_maxdeg(h1, h2)
    return GTEllElement(h1.mu * h2.mu, compose_f(h2.mu, h1.f, h2.f),
                        _g_at(h1.gplus, h2.gplus, h2.gminus),
                        _g_at(h1.gminus, h2.gplus, h2.gminus))


def gtell_act(h: GTEllElement, c: EllipticCandidate) -> EllipticCandidate:
    _check_maxdeg(h, c)
    return EllipticCandidate(h.mu * c.lam, act_phi(h.f, c.lam, c.phi),
                             _g_at(h.gplus, c.aplus, c.aminus),
                             _g_at(h.gminus, c.aplus, c.aminus))


__all__ = ["READINGS", "DEFAULT_READING", "check_elliptic", "solve_elliptic", "nonagon_product", "mixed_sides",
           "gtell_compose", "gtell_act", "SIGNS"]
