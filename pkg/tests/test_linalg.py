import random
from fractions import Fraction

from hypothesis import given, strategies as st

from gtassoc.linalg import Echelon, solve_linear
from gtassoc.lyndon import is_lyndon, lyndon_basis, lyndon_bracket, lyndon_words, standard_factorization
from gtassoc.series import Alphabet, is_lie


def witt(k, n):
    """Number of Lyndon words of length n over k letters, by Moebius inversion."""
    def mobius(m):
        res, p = 1, 2
        while p * p <= m:
            if m % p == 0:
                m //= p
                if m % p == 0:
                    return 0
                res = -res
            p += 1
        return -res if m > 1 else res
    return sum(mobius(d) * k ** (n // d) for d in range(1, n + 1) if n % d == 0) // n


def test_solve_linear_unique_solution():
    cols = [{"a": 1, "b": 1}, {"a": 1, "b": -1}]
    x, free = solve_linear(cols, {"a": 3, "b": 1})
    assert x == [2, 1] and free == []


def test_solve_linear_free_and_inconsistent():
    x, free = solve_linear([{"a": 1}, {"a": 2}], {"a": 4})
    assert free == [1] and x[0] * 1 + x[1] * 2 == 4
    x, _ = solve_linear([{"a": 1}, {"a": 2}], {"b": 1})
    assert x is None


@given(st.integers(0, 2**32).map(random.Random))
def test_solve_linear_random_consistent(rng):
    n = rng.randint(1, 5)
    cols = [{k: Fraction(rng.randint(-3, 3)) for k in range(6)} for _ in range(n)]
    truth = [Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(n)]
    rhs = {k: sum(c.get(k, 0) * t for c, t in zip(cols, truth)) for k in range(6)}
    x, free = solve_linear(cols, rhs)
    assert x is not None
    for k in range(6):
        assert sum(c.get(k, 0) * v for c, v in zip(cols, x)) == rhs[k]


def test_echelon_rank():
    e = Echelon()
    assert e.add({0: 1, 1: 2})
    assert not e.add({0: 2, 1: 4})
    assert e.add({1: 1})
    assert e.rank == 2
    assert e.reduce({0: 5, 1: 7}) == {}


def test_lyndon_counts_match_witt_formula():
    for k in (2, 3):
        for n in range(1, 7):
            words = lyndon_words(k, n)
            assert len(words) == witt(k, n)
            assert all(is_lyndon(w) for w in words)


def test_standard_factorization():
    assert standard_factorization((0, 0, 1)) == ((0,), (0, 1))
    assert standard_factorization((0, 1, 1)) == ((0, 1), (1,))


def test_lyndon_brackets_are_independent_lie_elements():
    A = Alphabet.free("x", "y")
    e = Echelon()
    for d in range(1, 6):
        for w in lyndon_basis(A, d):
            b = lyndon_bracket(A, 5, w)
            assert is_lie(b)
            assert e.add(dict(b.terms))
    assert e.rank == sum(witt(2, d) for d in range(1, 6))


def test_weighted_lyndon_basis_matches_pbw():
    # U(free Lie on a:1, t:2) has Hilbert series 1/(1 - s - s^2); PBW turns
    # the Lyndon counts per weight into that series
    A = Alphabet.free("a", "t", weights=[1, 2])
    D = 8
    series = [1] + [0] * D
    for w in range(1, D + 1):
        for _ in lyndon_basis(A, w):
            # multiply by 1/(1 - s^w)
            for d in range(w, D + 1):
                series[d] += series[d - w]
    fib = [1, 1]
    while len(fib) <= D:
        fib.append(fib[-1] + fib[-2])
    assert series == fib[:D + 1]
