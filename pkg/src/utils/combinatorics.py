"""
Colex ranking of k-sets
"""

from math import comb
from typing import Sequence, Tuple


def colex_rank(vertices: Sequence[int]) -> int:
    """Colex rank of an ascending 1-based k-set, in [0, C(n, k))."""
    return sum(comb(v - 1, i) for i, v in enumerate(vertices, start=1))


def colex_unrank(rank: int, k: int) -> Tuple[int, ...]:
    """Inverse of colex_rank through the combinatorial number system."""
    vertices = []
    upper = rank + k
    for i in range(k, 0, -1):
        # largest c with C(c, i) <= rank
        low, high = i - 1, upper
        while low < high:
            middle = (low + high + 1) // 2
            if comb(middle, i) <= rank:
                low = middle
            else:
                high = middle - 1
        rank -= comb(low, i)
        vertices.append(low + 1)
        upper = low - 1
    return tuple(reversed(vertices))
