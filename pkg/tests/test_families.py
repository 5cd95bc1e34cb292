import itertools
import random

import pytest
from hypothesis import given, strategies as st

from gtassoc.families import (CYCLOTOMIC, DK, ELLIPTIC, REDUCED_ELLIPTIC, Family, compose_permutations,
                              gamma_action, parse_family, parse_gamma, parse_permutation, reduce_elliptic,
                              relations, symmetric_action)
from gtassoc.quotient import get_table
from gtassoc.series import IncompatibleContext, Series, bracket, random_series

seeds = st.integers(0, 2**32).map(random.Random)


def test_relation_counts():
    assert relations(Family(DK, 2)) == []
    assert len(relations(Family(DK, 3))) == 3
    # 3 * 4 ordered triples with i<j give 12 three-index relations, 3 disjoint pairs
    assert len(relations(Family(DK, 4))) == 15
    for N in (1, 2, 3):
        assert len(relations(Family(CYCLOTOMIC, 2, N))) == N + 2


def test_single_elliptic_relation_at_arity_one():
    fam = Family(ELLIPTIC, 1)
    (rel,) = relations(fam)
    a, b = fam.alpha(1, 4), fam.beta(1, 4)
    assert rel == bracket(a, b)


def test_parse_family_round_trip():
    for name in ("t(4)", "tGamma(2,3)", "tell(2)", "tellbar(3)", "free(x,y,z)"):
        assert parse_family(name).name == name
    with pytest.raises(ValueError):
        parse_family("nonsense(1)")


def test_symmetric_action_examples():
    t3 = Family(DK, 3)
    assert symmetric_action((1, 2, 3), t3.t(1, 3, 2)) == t3.t(1, 3, 2)
    assert symmetric_action((2, 1, 3), t3.t(1, 2, 2)) == t3.t(1, 2, 2)
    assert symmetric_action((2, 1, 3), t3.t(1, 3, 2)) == t3.t(2, 3, 2)


def test_gamma_action_examples():
    fam = Family(CYCLOTOMIC, 2, 2)
    t0, t1 = fam.tg(1, 2, 0, 2), fam.tg(1, 2, 1, 2)
    assert gamma_action((0, 0), t1) == t1
    assert gamma_action((1, 0), t0) == t1
    assert gamma_action((0, 1), t0) == t1


def test_action_errors():
    with pytest.raises(IncompatibleContext):
        symmetric_action((2, 1), Family(DK, 3).t(1, 2, 2))
    with pytest.raises(ValueError):
        symmetric_action((1, 1, 3), Family(DK, 3).t(1, 2, 2))
    with pytest.raises(IncompatibleContext):
        gamma_action((0, 0), Family(DK, 2).t(1, 2, 2))


def test_lenient_permutation_parsing():
    for text in ("perm(2,1,3)", "(2,1,3)", "2,1,3"):
        assert parse_permutation(text) == (2, 1, 3)
    assert parse_gamma("gamma(1,0)") == (1, 0)


ACTION_FAMILIES = [Family(DK, 3), Family(DK, 4), Family(CYCLOTOMIC, 2, 2), Family(CYCLOTOMIC, 3, 2),
                   Family(ELLIPTIC, 2), Family(REDUCED_ELLIPTIC, 3)]


@pytest.mark.parametrize("fam", ACTION_FAMILIES, ids=str)
def test_permutations_preserve_the_ideal(fam):
    D = 4 if fam.kind in (ELLIPTIC, REDUCED_ELLIPTIC) else 3
    table = get_table(fam, D)
    for sigma in itertools.permutations(range(1, fam.n + 1)):
        for r in relations(fam, D):
            assert table.reduce(symmetric_action(sigma, r)).is_zero()


@given(seeds)
def test_symmetric_action_is_a_group_action(rng):
    fam = Family(DK, 4)
    x = random_series(fam.alphabet, 3, rng, density=0.05)
    perms = list(itertools.permutations(range(1, 5)))
    s, t = rng.choice(perms), rng.choice(perms)
    assert symmetric_action(s, symmetric_action(t, x)) == symmetric_action(compose_permutations(s, t), x)


@given(seeds)
def test_gamma_action_is_a_group_action_and_preserves_ideal(rng):
    N = 3
    fam = Family(CYCLOTOMIC, 2, N)
    x = random_series(fam.alphabet, 3, rng, density=0.1)
    g = (rng.randrange(N), rng.randrange(N))
    h = (rng.randrange(N), rng.randrange(N))
    gh = tuple((a + b) % N for a, b in zip(g, h))
    assert gamma_action(g, gamma_action(h, x)) == gamma_action(gh, x)
    table = get_table(fam, 3)
    for r in relations(fam, 3):
        assert table.reduce(gamma_action(g, r)).is_zero()


def test_reduction_kills_the_sums():
    fam = Family(ELLIPTIC, 3)
    sa = fam.alpha(1, 4) + fam.alpha(2, 4) + fam.alpha(3, 4)
    sb = fam.beta(1, 4) + fam.beta(2, 4) + fam.beta(3, 4)
    assert reduce_elliptic(sa).is_zero() and reduce_elliptic(sb).is_zero()
    bar = get_table(Family(REDUCED_ELLIPTIC, 3), 4)
    for r in relations(fam, 4):
        assert bar.reduce(reduce_elliptic(r)).is_zero()


def test_central_element_is_sum_of_generators():
    c = Family(DK, 3).central_element(2)
    assert c == sum((Series.gen(c.alphabet, 2, n) for n in c.alphabet.names), Series.zero(c.alphabet, 2))
