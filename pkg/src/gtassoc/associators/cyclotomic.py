"""Cyclotomic associators (lambda, phi, psi) and the group GT^Gamma.

``psi`` is a series in ``k, t0, ..., t{N-1}`` standing for ``t_01`` and
``t_12^a`` in tGamma(2,N).  Two readings of the two defining equations are
available:

``"printed"``
    the equations taken as displayed, with the out-of-range label ``N+1``
    read as ``N-1``; the mixed equation in U(tGamma(3,N)) and the twisted
    equation tested against 1 in U(tGamma(2,N)).

``"operadic"``
    every factor rebuilt from the insertion-coproduct maps: the mixed
    pentagon ``psi^{01,2,3} psi^{0,1,23} = psi^{0,1,2} psi^{0,12,3} phi(t23,t12)``
    and the twisted equation with its second factor the image of psi under
    the transposition of 1 and 2, tested modulo the central element ``c``
    (that is, in the free factor spanned by ``t_01`` and ``t_12^a``).
    This reading is solvable degree by degree; for N = 1 it accepts
    ``psi = phi(t12, t01)``.

The printed reading has no solution with ``lambda != 0``: the weight-1 part
of its twisted product is a nonzero multiple of ``c`` plus labels.
"""
from __future__ import annotations

from fractions import Fraction

from ..families import CYCLOTOMIC, Family, gamma_action, symmetric_action
from ..malcev import GroupElement, MalcevModel, group_inv, group_mul, power, relative_alphabet
from ..operadic import insertion_images, parse_pmap
from ..quotient import DEFAULT_CAP, get_table
from ..series import IncompatibleContext, Series, exp, inverse, substitute
from .candidates import CyclotomicCandidate, GTGammaElement, psi_alphabet
from .drinfeld import (_check_maxdeg, act_phi, at, check_drinfeld, compose_f, grouplike_result,
                       solve_lie_degreewise, truncate_to)
from .report import Report, from_residual

READINGS = ("printed", "operadic")
DEFAULT_READING = "printed"


def _sum(terms, alphabet, D):
    out = Series.zero(alphabet, D)
    for t in terms:
        out = out + t
    return out


def psi_in_t2(psi: Series, N: int) -> dict[str, Series]:
    """Images of the psi letters in tGamma(2,N)."""
    fam = Family(CYCLOTOMIC, 2, N)
    D = psi.maxdeg
    images = {"k": fam.k(1, D)}
    images.update({f"t{a}": fam.tg(1, 2, a, D) for a in range(N)})
    return images


def _psi_at(psi: Series, k: Series, slots: list[Series]) -> Series:
    images = {"k": k}
    images.update({f"t{a}": s for a, s in enumerate(slots)})
    return substitute(psi, images)


def _psi_through(psi: Series, N: int, pmap: str) -> Series:
    """``psi^f`` for a doubly pointed map ``f`` into arity 2."""
    f = parse_pmap(pmap)
    D = psi.maxdeg
    imgs = insertion_images(f, Family(CYCLOTOMIC, 2, N), D)
    return _psi_at(psi, imgs["k[1]"], [imgs[f"t[1,2;{a}]"] for a in range(N)])


def _phi_123(phi: Series, N: int, swapped: bool = False) -> Series:
    """``phi(t12, t23)`` (or ``phi(t23, t12)``) pushed into tGamma(3,N) by
    ``t_ij -> t_ij^0``."""
    fam = Family(CYCLOTOMIC, 3, N)
    D = phi.maxdeg
    u, v = fam.tg(1, 2, 0, D), fam.tg(2, 3, 0, D)
    return at(phi, v, u) if swapped else at(phi, u, v)


def mixed_sides(c: CyclotomicCandidate, reading: str = DEFAULT_READING):
    N, D, psi = c.N, c.maxdeg, c.psi
    if reading == "operadic":
        lhs = (_psi_through(psi, N, "pmap(0,2<-0,3: 1|2|3)")
               * _psi_through(psi, N, "pmap(0,2<-0,3: ∅|1|2,3)"))
        rhs = (_psi_through(psi, N, "pmap(0,2<-0,3: ∅|1|2)")
               * _psi_through(psi, N, "pmap(0,2<-0,3: ∅|1,2|3)")
               * _phi_123(c.phi, N, swapped=True))
        return lhs, rhs
    if reading != "printed":
        raise ValueError(f"unknown reading {reading!r}")
    fam = Family(CYCLOTOMIC, 3, N)
    A = fam.alphabet
    G = range(N)
    k1, k2 = fam.k(1, D), fam.k(2, D)
    sum12 = _sum([fam.tg(1, 2, a, D) for a in G], A, D)
    sum13 = _sum([fam.tg(1, 3, a, D) for a in G], A, D)
    plain = [fam.tg(1, 2, a, D) for a in G]
    doubled = [fam.tg(1, 2, a, D) + fam.tg(1, 3, a, D) for a in G]
    lhs = _psi_at(psi, k1 + sum12 + sum13, plain) * _psi_at(psi, k1, doubled)
    rhs = (_psi_at(psi, k1, plain) * _psi_at(psi, k1 + k2 + sum12, doubled)
           * _phi_123(c.phi, N))
    return lhs, rhs


def twisted_product(c: CyclotomicCandidate, reading: str = DEFAULT_READING) -> Series:
    """Left side of the twisted equation, in U(tGamma(2,N))."""
    N, D, lam = c.N, c.maxdeg, c.lam
    fam = Family(CYCLOTOMIC, 2, N)
    std = substitute(c.psi, psi_in_t2(c.psi, N))
    if reading == "operadic":
        other = symmetric_action((2, 1), std)
    elif reading == "printed":
        other = _psi_at(c.psi, fam.k(1, D), [fam.tg(1, 2, -a, D) for a in range(N)])
    else:
        raise ValueError(f"unknown reading {reading!r}")
    half = exp(fam.tg(1, 2, 0, D) * (lam / 2))
    twisted = gamma_action((0, 1), other * half * inverse(std))
    return (exp(fam.k(1, D) * (lam / N)) * std * half * inverse(other)
            * exp(fam.k(2, D) * (lam / N)) * twisted)


def kill_center(x: Series, N: int) -> Series:
    """Project U(tGamma(2,N)) onto the free algebra on ``k, t0..``: ``c -> 0``."""
    P = psi_alphabet(N)
    D = x.maxdeg
    k = Series.gen(P, D, "k")
    ts = [Series.gen(P, D, f"t{a}") for a in range(N)]
    images = {"k[1]": k, "k[2]": -k - _sum(ts, P, D)}
    images.update({f"t[1,2;{a}]": ts[a] for a in range(N)})
    return substitute(x, images, target=(P, D))


def _residuals(c: CyclotomicCandidate, reading: str, cache_dir=None,
               cap: int = DEFAULT_CAP) -> tuple[Series, Series]:
    N, D = c.N, c.maxdeg
    lhs, rhs = mixed_sides(c, reading)
    mixed = get_table(Family(CYCLOTOMIC, 3, N), D, cap, cache_dir).reduce(lhs - rhs)
    prod = twisted_product(c, reading)
    if reading == "operadic":
        twisted = kill_center(prod, N) - 1
    else:
        twisted = get_table(Family(CYCLOTOMIC, 2, N), D, cap, cache_dir).reduce(prod - 1)
    return mixed, twisted


def check_cyclotomic(c: CyclotomicCandidate, reading: str = DEFAULT_READING,
                     cache_dir=None, cap: int = DEFAULT_CAP) -> Report:
    if reading not in READINGS:
        raise ValueError(f"unknown reading {reading!r}; choose from {', '.join(READINGS)}")
    rep = Report(f"cyclotomic({c.N})")
    rep.extend(check_drinfeld(c.drinfeld, cache_dir, cap))
    rep.results.append(grouplike_result("psi_grouplike", c.psi))
    mixed, twisted = _residuals(c, reading, cache_dir, cap)
    rep.results.append(from_residual("mixed_pentagon", mixed))
    rep.results.append(from_residual("twisted", twisted))
    return rep


def solve_cyclotomic(phi_candidate, N: int, reading: str = "operadic"):
    """Degree-by-degree psi completing a Drinfeld candidate; returns
    ``(candidate, free_parameters)``.  Raises :class:`SolverError` when the
    chosen reading has no solution at some degree."""
    lam, phi = phi_candidate.lam, phi_candidate.phi
    D = phi.maxdeg

    def equations(psi, d):
        c = CyclotomicCandidate(lam, truncate_to(phi, d), psi, N)
        out = {}
        for tag, res in zip(("mixed", "twisted"), _residuals(c, reading)):
            for m, v in res.homogeneous_part(d).terms.items():
                out[(tag, m)] = v
        return out

    lie, free = solve_lie_degreewise(psi_alphabet(N), D, equations)
    return CyclotomicCandidate(lam, phi, exp(lie), N), free


# -- GT^Gamma ------------------------------------------------------------------------

def _relative_model(N: int, D: int) -> MalcevModel:
    return MalcevModel(relative_alphabet(N), D, N=N)


def _letter_images(rho_x: GroupElement, rho_y: GroupElement, N: int) -> dict[str, Series]:
    """Logs of the images of ``X = x^N`` and ``Y_a = x^a y x^-a``."""
    images = {"X": power(rho_x, N).log()}
    conj = rho_x.model.identity()
    for a in range(N):
        ya = group_mul(group_mul(conj, rho_y), group_inv(conj))
        images[f"Y{a}"] = ya.log()
        conj = group_mul(conj, rho_x)
    return images


def compose_g(mu2, g1: Series, g2: Series, N: int) -> Series:
    """``g1(theta(X), theta(Y0), ...) g2`` where ``theta`` is the endomorphism
    of the relative completion with ``x -> x^{mu2}`` and
    ``y -> g2 y^{mu2} g2^{-1}``."""
    D = g2.maxdeg
    model = _relative_model(N, D)
    mu2 = Fraction(mu2)
    theta_x = GroupElement(model, exp(model.letter("X") * (mu2 / N)), residue=1 % N)
    theta_y = GroupElement(model, g2 * exp(model.letter("Y0") * mu2) * inverse(g2))
    return substitute(g1, _letter_images(theta_x, theta_y, N)) * g2


def gtgamma_compose(h1: GTGammaElement, h2: GTGammaElement) -> GTGammaElement:
    if h1.N != h2.N:
        raise IncompatibleContext(f"group orders differ: {h1.N} vs {h2.N}")
    _check_maxdeg(h1, h2)
    return GTGammaElement(h1.mu * h2.mu, compose_f(h2.mu, h1.f, h2.f),
                          compose_g(h2.mu, h1.g, h2.g, h1.N), h1.N)


def act_psi(g: Series, lam, psi: Series, N: int) -> Series:
    """``g(rho(X), rho(Y0), ...) psi`` with ``rho(x) = (e^{(lam/N) k}, 1)`` and
    ``rho(y) = psi e^{lam t0} psi^{-1}``; residue 1 shifts ``t_a -> t_{a+1}``."""
    D = psi.maxdeg
    lam = Fraction(lam)
    model = MalcevModel(psi_alphabet(N), D, N=N, action="cyclic")
    rho_x = GroupElement(model, exp(model.letter("k") * (lam / N)), residue=1 % N)
    rho_y = GroupElement(model, psi * exp(model.letter("t0") * lam) * inverse(psi))
    return substitute(g, _letter_images(rho_x, rho_y, N)) * psi


def gtgamma_act(h: GTGammaElement, c: CyclotomicCandidate) -> CyclotomicCandidate:
    if h.N != c.N:
        raise IncompatibleContext(f"group orders differ: {h.N} vs {c.N}")
    _check_maxdeg(h, c)
    return CyclotomicCandidate(h.mu * c.lam, act_phi(h.f, c.lam, c.phi),
                               act_psi(h.g, c.lam, c.psi, c.N), c.N)


__all__ = ["READINGS", "DEFAULT_READING", "check_cyclotomic", "solve_cyclotomic", "mixed_sides", "twisted_product",
           "kill_center", "gtgamma_compose", "gtgamma_act", "compose_g", "act_psi", "psi_in_t2"]
