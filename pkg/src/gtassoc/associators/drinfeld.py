"""Drinfeld associators: checker, degree-by-degree solver, and the GT group
law and action."""
from __future__ import annotations

import logging
from fractions import Fraction

from ..families import Family, DK
from ..linalg import solve_linear
from ..lyndon import format_word, lyndon_basis, lyndon_bracket
from ..operadic import insertion_coproduct, parse_pmap
from ..quotient import DEFAULT_CAP, get_table
from ..series import Series, bch, dynkin, exp, log, substitute
from .candidates import DrinfeldCandidate, GTElement, xy_alphabet
from .report import EquationResult, Report, from_residual, skipped

logger = logging.getLogger(__name__)


class SolverError(RuntimeError):
    """The linear system at some degree has no solution."""

    def __init__(self, degree: int, message: str = ""):
        super().__init__(message or f"inconsistent associator equations at degree {degree}")
        self.degree = degree


# -- evaluation helpers --------------------------------------------------------------

def at(phi: Series, u: Series, v: Series) -> Series:
    """``phi(u, v)``: substitute Lie series ``u, v`` for the letters x, y."""
    return substitute(phi, {"x": u, "y": v})


def at_group(phi: Series, A: Series, B: Series) -> Series:
    """``phi(A, B)`` for group-like arguments, through their logarithms."""
    return substitute(phi, {"x": log(A), "y": log(B)})


def swap(phi: Series) -> Series:
    D = phi.maxdeg
    A = phi.alphabet
    return at(phi, Series.gen(A, D, "y"), Series.gen(A, D, "x"))


def xy(D: int) -> tuple[Series, Series]:
    A = xy_alphabet()
    return Series.gen(A, D, "x"), Series.gen(A, D, "y")


def grouplike_result(name: str, g: Series) -> EquationResult:
    """Group-likeness via Dynkin-Specht-Wever on the logarithm."""
    if g.constant_term() != 1:
        return EquationResult(name, False, 0, g.homogeneous_part(0), 1)
    ell = log(g)
    return from_residual(name, dynkin(ell) - ell)


# -- the three equations ------------------------------------------------------------

def duality_residual(phi: Series) -> Series:
    return phi * swap(phi) - 1


def hexagon_residual(phi: Series, lam) -> Series:
    """``e^{lx/2} phi(y,x) e^{ly/2} phi(z,y) e^{lz/2} phi(x,z) - 1`` with ``z = -x-y``."""
    lam = Fraction(lam)
    x, y = xy(phi.maxdeg)
    z = -x - y
    h = lam / 2
    prod = (exp(x * h) * at(phi, y, x) * exp(y * h) * at(phi, z, y)
            * exp(z * h) * at(phi, x, z))
    return prod - 1


def pentagon_sides(phi: Series, cache_dir=None, cap: int = DEFAULT_CAP):
    D = phi.maxdeg
    t4 = Family(DK, 4)

    def t(i, j):
        return t4.t(i, j, D)

    lhs = at(phi, t(2, 3), t(3, 4)) * at(phi, t(1, 2) + t(1, 3), t(2, 4) + t(3, 4)) * at(phi, t(1, 2), t(2, 3))
    rhs = at(phi, t(1, 2), t(2, 3) + t(2, 4)) * at(phi, t(1, 3) + t(2, 3), t(3, 4))
    return lhs, rhs, get_table(t4, D, cap, cache_dir)


def pentagon_residual(phi: Series, cache_dir=None, cap: int = DEFAULT_CAP) -> Series:
    lhs, rhs, table = pentagon_sides(phi, cache_dir, cap)
    return table.reduce(lhs - rhs)


def in_t3(phi: Series) -> Series:
    """``phi(t12, t23)`` in U(t3)."""
    t3 = Family(DK, 3)
    D = phi.maxdeg
    return at(phi, t3.t(1, 2, D), t3.t(2, 3, D))


def unit_residual(phi: Series) -> Series:
    """``phi^{1,0,2} - 1``: forgetting the middle strand must kill phi."""
    image = insertion_coproduct(parse_pmap("pmap(3<-2: 1|∅|2)"), in_t3(phi))
    return image - 1


def check_drinfeld(c: DrinfeldCandidate, cache_dir=None, cap: int = DEFAULT_CAP) -> Report:
    phi = c.phi
    rep = Report("drinfeld")
    rep.results.append(grouplike_result("grouplike", phi))
    rep.results.append(from_residual("unit", unit_residual(phi)))
    rep.results.append(from_residual("duality", duality_residual(phi)))
    rep.results.append(from_residual("pentagon", pentagon_residual(phi, cache_dir, cap)))
    rep.results.append(from_residual("hexagon", hexagon_residual(phi, c.lam)))
    return rep


# -- solver -------------------------------------------------------------------------

def _equations(phi: Series, lam, d: int) -> dict:
    """Degree-d components of every equation, keyed by (equation, monomial)."""
    out = {}
    for tag, res in (("duality", duality_residual(phi)),
                     ("pentagon", pentagon_residual(phi)),
                     ("hexagon", hexagon_residual(phi, lam))):
        for m, c in res.homogeneous_part(d).terms.items():
            out[(tag, m)] = c
    return out


def _lift(s: Series, D: int) -> Series:
    return Series(s.alphabet, D, s.terms)


def solve_lie_system(alphabets, maxdeg: int, equations, start=None, carry: bool = False):
    """Find Lie series ``L_1..L_r`` (``L_i`` in ``alphabets[i]``) with
    ``equations([exp(L_1), ...], d)`` empty for ``d = 1..maxdeg``.

    ``equations(gs, d)`` returns the degree-d components of all residuals as a
    dict.  At each degree the unknowns are coefficients on Lyndon brackets;
    the system is linear because a degree-d perturbation only enters the
    degree-d residuals linearly.  Free directions are zeroed and returned as
    ``(degree, Lyndon word)`` pairs (prefixed by the unknown's index when
    there are several).  ``start`` optionally fixes the Lie series up to its
    own ``maxdeg``; solving resumes at the next degree.

    With ``carry``, a free direction of degree ``e`` stays open as an unknown
    at every later degree ``d < 2e`` (where it still enters linearly), since
    lower-degree parts can couple it into higher residuals.  Only directions
    still open at the end, or expiring, are zeroed and reported.
    """
    lies = list(start) if start else [Series.zero(A, 0) for A in alphabets]
    free_params = []
    pending = []  # (degree, label, per-unknown Lie deltas)

    def shifted(deltas, d):
        return [lie + _lift(x, d) for lie, x in zip(lies, deltas)]

    def label(d, i, w):
        word = format_word(alphabets[i], w)
        return (d, word) if len(alphabets) == 1 else (d, i, word)

    for d in range(lies[0].maxdeg + 1, maxdeg + 1):
        lies = [_lift(lie, d) for lie in lies]
        free_params.extend(lab for e, lab, _ in pending if 2 * e <= d)
        pending = [p for p in pending if 2 * p[0] > d]
        base = equations([exp(lie) for lie in lies], d)
        unknowns = list(pending)
        for i, A in enumerate(alphabets):
            for w in lyndon_basis(A, d):
                deltas = [Series.zero(B, d) for B in alphabets]
                deltas[i] = lyndon_bracket(A, d, w)
                unknowns.append((d, label(d, i, w), deltas))
        columns = []
        for _, _, deltas in unknowns:
            eq = equations([exp(lie) for lie in shifted(deltas, d)], d)
            col = {k: eq.get(k, 0) - base.get(k, 0) for k in set(eq) | set(base)}
            columns.append({k: v for k, v in col.items() if v})
        x, free = solve_linear(columns, {k: -v for k, v in base.items()})
        if x is None:
            raise SolverError(d)
        lies = shifted([_combine(unknowns, x, i, d) for i in range(len(alphabets))], d)
        if carry:
            # kernel vector for each free column: x_j = 1, other free columns 0
            pending = []
            for j in free:
                y, _ = solve_linear(columns, {k: -v for k, v in columns[j].items()})
                y = list(y)
                y[j] = 1
                e, lab, _ = unknowns[j]
                pending.append((e, lab, [_combine(unknowns, y, i, d) for i in range(len(alphabets))]))
        else:
            free_params.extend(unknowns[j][1] for j in free)
        logger.debug("degree %d solved: %d unknowns, %d free", d, len(unknowns), len(free))
    free_params.extend(lab for _, lab, _ in pending)
    return lies, free_params


def _combine(unknowns, coeffs, i: int, d: int) -> Series:
    out = Series.zero(unknowns[0][2][i].alphabet, d)
    for c, (_, _, deltas) in zip(coeffs, unknowns):
        if c:
            out = out + _lift(deltas[i], d) * c
    return out


def solve_lie_degreewise(alphabet, maxdeg: int, equations):
    """Single-unknown form of :func:`solve_lie_system`."""
    (lie,), free = solve_lie_system([alphabet], maxdeg, lambda gs, d: equations(gs[0], d))
    return lie, free


def truncate_to(s: Series, d: int) -> Series:
    """Drop terms above weight ``d`` and set ``maxdeg = d``."""
    w = s.alphabet.weight
    return Series(s.alphabet, d, {m: c for m, c in s.terms.items() if w(m) <= d})


def solve_drinfeld(lam, maxdeg: int):
    """Lie series ``phi`` with ``exp(phi)`` a lambda-associator up to ``maxdeg``.

    Returns ``(candidate, free_parameters)``; the latter lists ``(degree,
    Lyndon word)`` for every direction left undetermined (set to 0).
    """
    if maxdeg < 1:
        raise ValueError("maxdeg must be at least 1")
    lam = Fraction(lam)
    lie, free = solve_lie_degreewise(xy_alphabet(), maxdeg,
                                     lambda phi, d: _equations(phi, lam, d))
    return DrinfeldCandidate(lam, exp(lie)), free


def rescale(c: DrinfeldCandidate, s) -> DrinfeldCandidate:
    """``(s*lambda, phi(s x, s y))``."""
    s = Fraction(s)
    x, y = xy(c.maxdeg)
    return DrinfeldCandidate(c.lam * s, at(c.phi, x * s, y * s))


# -- GT --------------------------------------------------------------------------------

def _check_maxdeg(*objs):
    if len({o.maxdeg for o in objs}) > 1:
        raise ValueError("maxdeg mismatch: " + ", ".join(str(o.maxdeg) for o in objs))


def compose_f(mu2, f1: Series, f2: Series) -> Series:
    """``f1(x^{mu2}, f2(x,y) y^{mu2} f2(y,x)) f2(x,y)``."""
    x, y = xy(f2.maxdeg)
    A = exp(x * mu2)
    B = f2 * exp(y * mu2) * swap(f2)
    return at_group(f1, A, B) * f2


def gt_compose(g1: GTElement, g2: GTElement) -> GTElement:
    _check_maxdeg(g1, g2)
    return GTElement(g1.mu * g2.mu, compose_f(g2.mu, g1.f, g2.f))


def act_phi(f: Series, lam, phi: Series) -> Series:
    """``f(e^{lam x}, phi(x,y) e^{lam y} phi(y,x)) phi(x,y)``, computed in the
    free subalgebra generated by x = t12 and y = t23."""
    x, y = xy(phi.maxdeg)
    lam = Fraction(lam)
    return at_group(f, exp(x * lam), phi * exp(y * lam) * swap(phi)) * phi


def gt_act(g: GTElement, c: DrinfeldCandidate) -> DrinfeldCandidate:
    _check_maxdeg(g, c)
    return DrinfeldCandidate(g.mu * c.lam, act_phi(g.f, c.lam, c.phi))


def gt_inverse_swap_residual(f: Series) -> Series:
    return f * swap(f) - 1


def gt_relation2_residual(g: GTElement) -> Series:
    """``x^nu f(x,y) y^nu f(y,z) z^nu f(z,x) - 1`` with ``z = (xy)^{-1}`` in the
    free-group model, ``nu = (mu-1)/2``."""
    nu = (g.mu - 1) / 2
    x, y = xy(g.maxdeg)
    z = bch(-y, -x)
    f = g.f
    prod = (exp(x * nu) * f * exp(y * nu) * at(f, y, z) * exp(z * nu) * at(f, z, x))
    return prod - 1


def verify_gt(g: GTElement) -> Report:
    rep = Report("gt")
    rep.results.append(grouplike_result("grouplike", g.f))
    rep.results.append(from_residual("relation1", gt_inverse_swap_residual(g.f)))
    rep.results.append(from_residual("relation2", gt_relation2_residual(g)))
    rep.results.append(skipped("relation3", "not checked: lives in the completed PB4"))
    return rep


__all__ = [
    "SolverError", "solve_lie_system", "solve_lie_degreewise", "truncate_to", "at", "at_group", "swap", "check_drinfeld", "solve_drinfeld", "rescale",
    "hexagon_residual", "pentagon_residual", "duality_residual", "unit_residual",
    "gt_compose", "gt_act", "verify_gt", "compose_f", "act_phi", "in_t3",
]
