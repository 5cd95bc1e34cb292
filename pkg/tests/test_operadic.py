import itertools
import random

import pytest
from hypothesis import given, strategies as st

from gtassoc.families import (CYCLOTOMIC, DK, ELLIPTIC, REDUCED_ELLIPTIC, Family, gamma_action, relations,
                              symmetric_action)
from gtassoc.operadic import (PartialMap, coproduct_map, elliptic_module_compose, insertion_coproduct,
                              insertion_coproduct_cyclotomic, insertion_map, moperad_compose_module,
                              moperad_compose_monoid, operad_compose, parse_pmap)
from gtassoc.quotient import get_table
from gtassoc.series import IncompatibleContext, Series, random_series

from oracle import block_permutation

seeds = st.integers(0, 2**32).map(random.Random)
D = 3


def gens(fam, d=D):
    return [Series.gen(fam.alphabet, d, name) for name in fam.alphabet.names]


def rand_elem(fam, rng, d=D):
    return random_series(fam.alphabet, d, rng, density=0.15)


def nf(x):
    return get_table(x.alphabet.name, x.maxdeg).reduce(x)


def random_pmap(rng, m, n):
    return PartialMap.from_function(m, n, {k: rng.choice([None] + list(range(1, n + 1))) for k in range(1, m + 1)})


# -- insertion coproducts ---------------------------------------------------------

def test_notation_example():
    fam6 = Family(DK, 6)
    f = parse_pmap("pmap(3<-6: 1,3|2|5)")
    t3 = Family(DK, 3)
    assert insertion_coproduct(f, t3.t(1, 2, 2)) == nf(fam6.t(1, 2, 2) + fam6.t(2, 3, 2))
    assert insertion_coproduct(f, t3.t(1, 3, 2)) == nf(fam6.t(1, 5, 2) + fam6.t(3, 5, 2))
    assert insertion_coproduct(f, t3.t(2, 3, 2)) == fam6.t(2, 5, 2)


def test_identity_map_is_identity():
    x = Family(DK, 3).t(1, 2, 2) * Family(DK, 3).t(2, 3, 2)
    assert insertion_coproduct(PartialMap.identity(3), x) == nf(x)
    fam = Family(CYCLOTOMIC, 2, 2)
    y = fam.k(1, 2) * fam.tg(1, 2, 1, 2)
    assert insertion_coproduct_cyclotomic(PartialMap.identity(2, source_zero=True, target_zero=True), y) == nf(y)


def test_singly_pointed_map_sends_t_to_untwisted_generators():
    f = parse_pmap("pmap(2<-0,2: 1|2)")
    x = Family(DK, 2).t(1, 2, 2)
    assert insertion_coproduct_cyclotomic(f, x, N=3) == Family(CYCLOTOMIC, 2, 3).tg(1, 2, 0, 2)


def test_parse_pmap_errors():
    with pytest.raises(ValueError):
        parse_pmap("pmap(2<-3: 1|2|3)")
    with pytest.raises(ValueError):
        parse_pmap("pmap(2<-3: 1,2|2)")
    with pytest.raises(IncompatibleContext):
        insertion_coproduct(PartialMap.identity(2), Family(DK, 3).t(1, 2, 2))


@pytest.mark.parametrize("n", [2, 3, 4])
def test_insertion_coproduct_is_functorial_on_generators(n):
    rng = random.Random(n)
    fam = Family(DK, n)
    for _ in range(4):
        m, l = rng.randint(1, 4), rng.randint(1, 4)
        f, g = random_pmap(rng, m, n), random_pmap(rng, l, m)
        for x in gens(fam, 2):
            assert insertion_coproduct(f.compose(g), x) == insertion_coproduct(g, insertion_coproduct(f, x))


def test_insertion_coproduct_respects_relations():
    rng = random.Random(11)
    fam = Family(DK, 4)
    for _ in range(5):
        f = random_pmap(rng, rng.randint(2, 5), 4)
        for r in relations(fam, 3):
            assert insertion_coproduct(f, r).is_zero()


def test_cyclotomic_insertion_is_functorial():
    rng = random.Random(2)
    fam = Family(CYCLOTOMIC, 2, 2)
    for _ in range(4):
        m, l = rng.randint(1, 3), rng.randint(1, 3)
        f = PartialMap.from_function(m, 2, {k: rng.choice([None, 0, 1, 2]) for k in range(1, m + 1)},
                                     source_zero=True, target_zero=True)
        g = PartialMap.from_function(l, m, {k: rng.choice([None, 0] + list(range(1, m + 1))) for k in range(1, l + 1)},
                                     source_zero=True, target_zero=True)
        for x in gens(fam, 2):
            lhs = insertion_coproduct_cyclotomic(f.compose(g), x)
            rhs = insertion_coproduct_cyclotomic(g, insertion_coproduct_cyclotomic(f, x))
            assert lhs == rhs


# -- operad structure ---------------------------------------------------------------

def test_composition_examples():
    t2, t3 = Family(DK, 2), Family(DK, 3)
    x, one = t2.t(1, 2, 2), Series.one(t2.alphabet, 2)
    assert operad_compose(1, x, one) == nf(t3.t(1, 3, 2) + t3.t(2, 3, 2))
    assert operad_compose(1, one, x) == t3.t(1, 2, 2)
    assert operad_compose(2, x, one) == nf(t3.t(1, 2, 2) + t3.t(1, 3, 2))
    assert operad_compose(2, one, x) == t3.t(2, 3, 2)


def test_unit_guest_relabels_host():
    unit = Series.one(Family(DK, 1).alphabet, D)
    x = gens(Family(DK, 3))[0]
    for p in (1, 2, 3):
        assert operad_compose(p, x, unit) == x


def test_composition_agrees_with_insertion_maps():
    rng = random.Random(5)
    for n, m in [(2, 2), (3, 2), (2, 3)]:
        for p in range(1, n + 1):
            a, b = rand_elem(Family(DK, n), rng), rand_elem(Family(DK, m), rng)
            expected = insertion_coproduct(coproduct_map(n, m, p), a) * insertion_coproduct(insertion_map(n, m, p), b)
            assert operad_compose(p, a, b) == nf(expected)


def arity_triples():
    for na, nb, nc in itertools.product((1, 2, 3), repeat=3):
        if na + nb + nc - 2 <= 4 and max(na, nb, nc) <= 3:
            yield na, nb, nc


@given(seeds)
def test_sequential_axiom(rng):
    na, nb, nc = rng.choice([t for t in arity_triples() if t[0] + t[1] - 1 <= 3])
    a, b, c = (rand_elem(Family(DK, k), rng) for k in (na, nb, nc))
    i = rng.randint(1, na)
    j = rng.randint(i, i + nb - 1)
    lhs = operad_compose(j, operad_compose(i, a, b), c)
    rhs = operad_compose(i, a, operad_compose(j - i + 1, b, c))
    assert lhs == rhs


@given(seeds)
def test_parallel_axiom(rng):
    na = rng.choice((2, 3))
    nb, nc = rng.choice((1, 2)), rng.choice((1, 2))
    a, b, c = (rand_elem(Family(DK, k), rng) for k in (na, nb, nc))
    i, j = sorted(rng.sample(range(1, na + 1), 2))
    # c inserted at j, b at i < j: either order gives the same result
    lhs = operad_compose(j + nb - 1, operad_compose(i, a, b), c)
    rhs = operad_compose(i, operad_compose(j, a, c), b)
    assert lhs == rhs


@given(seeds)
def test_equivariance(rng):
    n, m = rng.choice([(2, 2), (3, 1), (2, 1), (3, 2)])
    a, b = rand_elem(Family(DK, n), rng), rand_elem(Family(DK, m), rng)
    p = rng.randint(1, n)
    sigma = tuple(rng.sample(range(1, n + 1), n))
    tau = tuple(rng.sample(range(1, m + 1), m))
    sizes = [m if k == p else 1 for k in range(1, n + 1)]
    outer = block_permutation(sigma, sizes)
    inner = tuple(list(range(1, p)) + [p - 1 + t for t in tau] + list(range(p + m, n + m)))
    composed = operad_compose(p, a, b)
    # host side
    assert operad_compose(sigma[p - 1], symmetric_action(sigma, a), b) == nf(symmetric_action(outer, composed))
    # guest side
    assert operad_compose(p, a, symmetric_action(tau, b)) == nf(symmetric_action(inner, composed))


# -- cyclotomic moperad -------------------------------------------------------------

def test_module_composition_example():
    N = 3
    host = Family(CYCLOTOMIC, 1, N).k(1, 2)
    unit = Series.one(Family(DK, 2).alphabet, 2)
    tgt = Family(CYCLOTOMIC, 2, N)
    expected = tgt.k(1, 2) + tgt.k(2, 2) + sum((tgt.tg(1, 2, g, 2) for g in range(N)), Series.zero(tgt.alphabet, 2))
    assert moperad_compose_module(1, host, unit) == nf(expected)


def test_module_and_monoid_units():
    fam = Family(CYCLOTOMIC, 2, 2)
    x = fam.k(1, D) * fam.tg(1, 2, 1, D)
    assert moperad_compose_module(2, x, Series.one(Family(DK, 1).alphabet, D)) == nf(x)
    empty = Series.one(Family(CYCLOTOMIC, 0, 2).alphabet, D)
    assert moperad_compose_monoid(x, empty) == nf(x)


@given(seeds)
def test_module_axioms(rng):
    N = 2
    h = rand_elem(Family(CYCLOTOMIC, 2, N), rng)
    b, c = rand_elem(Family(DK, 2), rng), rand_elem(Family(DK, 2), rng)
    # sequential: (h o_1 b) o_2 c = h o_1 (b o_2 c)
    assert moperad_compose_module(2, moperad_compose_module(1, h, b), c) == \
        moperad_compose_module(1, h, operad_compose(2, b, c))
    # parallel: (h o_1 b) o_3 c = (h o_2 c) o_1 b
    assert moperad_compose_module(3, moperad_compose_module(1, h, b), c) == \
        moperad_compose_module(1, moperad_compose_module(2, h, c), b)


@given(seeds)
def test_moperad_compatibility_diagram(rng):
    N = 2
    m1 = rand_elem(Family(CYCLOTOMIC, 1, N), rng)
    m2 = rand_elem(Family(CYCLOTOMIC, 1, N), rng)
    p = rand_elem(Family(DK, 2), rng)
    product = moperad_compose_monoid(m1, m2)
    # slot inside the guest block
    assert moperad_compose_module(1, product, p) == moperad_compose_monoid(m1, moperad_compose_module(1, m2, p))
    # slot inside the host block
    assert moperad_compose_module(2, product, p) == moperad_compose_monoid(moperad_compose_module(1, m1, p), m2)


@given(seeds)
def test_gamma_equivariance(rng):
    N = 2
    h = rand_elem(Family(CYCLOTOMIC, 2, N), rng)
    g = rand_elem(Family(CYCLOTOMIC, 1, N), rng)
    b = rand_elem(Family(DK, 2), rng)
    gam = (rng.randrange(N), rng.randrange(N))
    delta = (rng.randrange(N),)
    p = rng.randint(1, 2)
    extended = tuple(gam[:p - 1]) + (gam[p - 1],) * 2 + tuple(gam[p:])
    assert moperad_compose_module(p, gamma_action(gam, h), b) == \
        nf(gamma_action(extended, moperad_compose_module(p, h, b)))
    assert moperad_compose_monoid(gamma_action(gam, h), gamma_action(delta, g)) == \
        nf(gamma_action(delta + gam, moperad_compose_monoid(h, g)))


# -- elliptic module ----------------------------------------------------------------

def test_elliptic_composition_example():
    tell1, tell2 = Family(ELLIPTIC, 1), Family(ELLIPTIC, 2)
    unit = Series.one(Family(DK, 2).alphabet, 4)
    assert elliptic_module_compose(1, tell1.alpha(1, 4), unit) == nf(tell2.alpha(1, 4) + tell2.alpha(2, 4))


@pytest.mark.parametrize("kind", [ELLIPTIC, REDUCED_ELLIPTIC])
def test_elliptic_module_axioms(kind):
    rng = random.Random(17)
    Dm = 4
    for _ in range(3):
        h1 = random_series(Family(kind, 1).alphabet, Dm, rng, density=0.3)
        h2 = random_series(Family(kind, 2).alphabet, Dm, rng, density=0.05)
        b = random_series(Family(DK, 2).alphabet, Dm, rng, density=0.3)
        c = random_series(Family(DK, 2).alphabet, Dm, rng, density=0.3)
        unit = Series.one(Family(DK, 1).alphabet, Dm)
        assert elliptic_module_compose(1, h1, unit) == nf(h1)
        # sequential
        assert elliptic_module_compose(2, elliptic_module_compose(1, h1, b), c) == \
            elliptic_module_compose(1, h1, operad_compose(2, b, c))
        # parallel
        assert elliptic_module_compose(3, elliptic_module_compose(1, h2, b), c) == \
            elliptic_module_compose(1, elliptic_module_compose(2, h2, c), b)
        # equivariance under the transposition of the two host strands
        sw = (2, 1)
        lhs = elliptic_module_compose(2, symmetric_action(sw, h2), b)
        rhs = symmetric_action(block_permutation(sw, [2, 1]), elliptic_module_compose(1, h2, b))
        assert lhs == nf(rhs)
