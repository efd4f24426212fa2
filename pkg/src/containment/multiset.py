"""Ranking and unranking of sorted multisets.

Cop squads are multisets (several cops may share an edge or vertex), stored
as nondecreasing tuples.  The solver and the state codec both need a dense
bijection between those tuples and ``0 .. C(base+k-1, k) - 1``.  The rank
used here is the position of the tuple in ``itertools.combinations_with_replacement``
order, computed arithmetically so no enumeration or hashing is involved.
"""

from __future__ import annotations

from itertools import combinations_with_replacement
from math import comb
from typing import Iterator


def count_multisets(base: int, k: int) -> int:
    """Number of size-k multisets over values 0..base-1."""
    if base < 0 or k < 0:
        raise ValueError("base and k must be nonnegative")
    return comb(base + k - 1, k)


def multiset_rank(values: tuple[int, ...], base: int) -> int:
    """Lexicographic rank of a nondecreasing tuple among all size-k multisets.

    Matches the enumeration order of combinations_with_replacement(range(base), k).
    """
    k = len(values)
    rank = 0
    prev = 0
    for i, c in enumerate(values):
        if c < prev or not 0 <= c < base:
            raise ValueError(f"values must be nondecreasing and in [0, {base}): {values}")
        slots = k - i - 1
        # Multisets with value d at slot i and anything >= d afterwards.
        for d in range(prev, c):
            rank += comb(base - d + slots - 1, slots)
        prev = c
    return rank


def multiset_unrank(rank: int, base: int, k: int) -> tuple[int, ...]:
    """Inverse of multiset_rank."""
    total = count_multisets(base, k)
    if not 0 <= rank < total:
        raise ValueError(f"rank {rank} out of range [0, {total})")
    out = []
    value = 0
    for i in range(k):
        slots = k - i - 1
        while True:
            block = comb(base - value + slots - 1, slots)
            if rank < block:
                break
            rank -= block
            value += 1
        out.append(value)
    return tuple(out)


def iter_multisets(base: int, k: int) -> Iterator[tuple[int, ...]]:
    """All size-k multisets over 0..base-1 in rank order."""
    return combinations_with_replacement(range(base), k)


def rank_weight_tables(base: int, k: int) -> list[list[int]]:
    """Prefix-sum tables turning multiset_rank into k table gathers.

    ``tables[i][d]`` is the rank weight contributed by slot ``i`` holding any
    value below ``d``:  rank(t) = sum_i tables[i][t[i]] - tables[i][t[i-1]]
    (with t[-1] = 0).  Used by the solver for vectorised ranking.
    """
    tables = []
    for i in range(k):
        slots = k - i - 1
        prefix = [0] * (base + 1)
        for d in range(base):
            prefix[d + 1] = prefix[d] + comb(base - d + slots - 1, slots)
        tables.append(prefix)
    return tables
