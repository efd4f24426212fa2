import random
from itertools import combinations_with_replacement
from math import comb

import pytest

from containment import multiset


@pytest.mark.parametrize("base,k", [(1, 1), (3, 2), (5, 3), (6, 1), (4, 4), (10, 2)])
def test_rank_matches_enumeration_order(base, k):
    for expected, t in enumerate(combinations_with_replacement(range(base), k)):
        assert multiset.multiset_rank(t, base) == expected
        assert multiset.multiset_unrank(expected, base, k) == t


@pytest.mark.parametrize("base,k", [(1, 1), (3, 2), (5, 3), (7, 4)])
def test_count(base, k):
    assert multiset.count_multisets(base, k) == comb(base + k - 1, k)
    assert multiset.count_multisets(base, k) == sum(
        1 for _ in multiset.iter_multisets(base, k)
    )


def test_roundtrip_random():
    rng = random.Random(7)
    for _ in range(500):
        base = rng.randint(1, 40)
        k = rng.randint(1, 6)
        t = tuple(sorted(rng.randrange(base) for _ in range(k)))
        assert multiset.multiset_unrank(multiset.multiset_rank(t, base), base, k) == t


def test_rank_rejects_bad_input():
    with pytest.raises(ValueError):
        multiset.multiset_rank((2, 1), 5)
    with pytest.raises(ValueError):
        multiset.multiset_rank((0, 5), 5)
    with pytest.raises(ValueError):
        multiset.multiset_unrank(10, 2, 2)


def test_weight_tables_agree_with_rank():
    base, k = 9, 3
    tables = multiset.rank_weight_tables(base, k)
    for t in multiset.iter_multisets(base, k):
        rank = tables[0][t[0]]
        for j in range(1, k):
            rank += tables[j][t[j]] - tables[j][t[j - 1]]
        assert rank == multiset.multiset_rank(t, base)
