import itertools
from fractions import Fraction
from math import factorial

import pytest

from stochlab.colorlab import descent_set_probability


def brute_force_descent_law(n: int) -> dict[tuple[int, ...], Fraction]:
    """Exact-descent-set law of a uniform permutation of {1..n+1} by
    exhaustive enumeration: sign sequence -> probability."""
    counts: dict[tuple[int, ...], int] = {}
    for perm in itertools.permutations(range(1, n + 2)):
        u = tuple(-1 if perm[i] > perm[i + 1] else 1 for i in range(n))
        counts[u] = counts.get(u, 0) + 1
    total = factorial(n + 1)
    return {u: Fraction(c, total) for u, c in counts.items()}


@pytest.mark.parametrize("n", range(7))
def test_matches_permutation_enumeration(n):
    law = brute_force_descent_law(n)
    for u in itertools.product((1, -1), repeat=n):
        assert descent_set_probability(u) == law.get(u, Fraction(0))


def test_empty_sequence():
    assert descent_set_probability(()) == 1


def test_single_ascent():
    assert descent_set_probability((1,)) == Fraction(1, 2)


def test_ascent_descent():
    # permutations of {1,2,3} with descent set exactly {2}: 132 and 231
    assert descent_set_probability((1, -1)) == Fraction(1, 3)


def test_double_descent():
    # only 321 is decreasing
    assert descent_set_probability((-1, -1)) == Fraction(1, 6)


def test_all_ascents():
    for n in range(1, 9):
        assert descent_set_probability((1,) * n) == Fraction(1, factorial(n + 1))


@pytest.mark.parametrize("n", range(9))
def test_partition_of_unity(n):
    total = sum(
        descent_set_probability(u) for u in itertools.product((1, -1), repeat=n)
    )
    assert total == 1


def test_reversal_symmetry():
    # complementing a permutation reverses ascents and descents
    for n in range(7):
        for u in itertools.product((1, -1), repeat=n):
            flipped = tuple(-s for s in u)
            assert descent_set_probability(u) == descent_set_probability(flipped)
