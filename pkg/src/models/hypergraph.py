"""
Hypergraph models
"""

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Any, Iterable, Tuple, Union

import numpy as np

from ..exceptions import InvalidParameterError
from ..utils.combinatorics import colex_rank

Edge = Tuple[int, ...]

# C(n, k) up to this size gets a dense membership bitset
DEFAULT_BITSET_BUDGET = 1 << 24


def canonical_edge(vertices: Iterable[int]) -> Edge:
    """Ascending tuple of the given vertices."""
    return tuple(sorted(int(v) for v in vertices))


@dataclass(frozen=True)
class VertexSet:
    """Strictly ascending set of 1-based vertices"""
    vertices: Tuple[int, ...]

    def __post_init__(self):
        vertices = tuple(int(v) for v in self.vertices)
        if any(a >= b for a, b in zip(vertices, vertices[1:])):
            raise InvalidParameterError(f"Vertex set must be strictly ascending: {vertices}")
        if vertices and vertices[0] < 1:
            raise InvalidParameterError(f"Vertices are 1-based: {vertices}")
        object.__setattr__(self, 'vertices', vertices)

    @classmethod
    def of(cls, vertices: Iterable[int]) -> 'VertexSet':
        """Build from any iterable of distinct vertices"""
        items = [int(v) for v in vertices]
        if len(set(items)) != len(items):
            raise InvalidParameterError(f"Vertex set has repeated vertices: {items}")
        return cls(tuple(sorted(items)))

    @property
    def size(self) -> int:
        return len(self.vertices)

    def __iter__(self):
        return iter(self.vertices)

    def __len__(self) -> int:
        return len(self.vertices)


@dataclass(frozen=True)
class Hypergraph:
    """Immutable k-uniform hypergraph on vertices 1..n.

    Edges are canonical ascending tuples kept in lexicographic order.
    Membership goes through the colex rank of the edge, looked up in a
    dense bitset when C(n, k) fits the budget and in a set otherwise.
    """
    n: int
    k: int
    edges: Tuple[Edge, ...] = ()
    bitset_budget: int = field(default=DEFAULT_BITSET_BUDGET, compare=False, repr=False)
    _index: Any = field(default=None, init=False, compare=False, repr=False)

    def __post_init__(self):
        if self.k < 2:
            raise InvalidParameterError(f"Uniformity k must be at least 2, got {self.k}")
        if self.k > self.n:
            raise InvalidParameterError(f"Uniformity k={self.k} exceeds vertex count n={self.n}")

        canonical = set()
        for raw in self.edges:
            edge = canonical_edge(raw)
            if len(edge) != self.k or len(set(edge)) != self.k:
                raise InvalidParameterError(f"Edge {raw} does not have {self.k} distinct vertices")
            if edge[0] < 1 or edge[-1] > self.n:
                raise InvalidParameterError(f"Edge {raw} has a vertex outside 1..{self.n}")
            canonical.add(edge)
        edges = tuple(sorted(canonical))
        object.__setattr__(self, 'edges', edges)

        ranks = np.fromiter((colex_rank(e) for e in edges), dtype=np.int64, count=len(edges))
        if self.total_sets <= self.bitset_budget:
            index = np.zeros(self.total_sets, dtype=bool)
            index[ranks] = True
        else:
            index = frozenset(int(r) for r in ranks)
        object.__setattr__(self, '_index', index)

    @classmethod
    def from_edges(cls, n: int, k: int, edges: Iterable[Iterable[int]], **kwargs) -> 'Hypergraph':
        return cls(n=n, k=k, edges=tuple(tuple(e) for e in edges), **kwargs)

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def total_sets(self) -> int:
        """C(n, k)"""
        return comb(self.n, self.k)

    @property
    def density_fraction(self) -> Fraction:
        return Fraction(self.m, self.total_sets)

    @property
    def density(self) -> float:
        return self.m / self.total_sets

    def rank_of(self, vertices: Union[Edge, Iterable[int]]) -> int:
        return colex_rank(canonical_edge(vertices))

    def contains(self, vertices: Iterable[int]) -> bool:
        """Exact membership test for a k-set given in any order"""
        edge = canonical_edge(vertices)
        if len(edge) != self.k or len(set(edge)) != self.k:
            return False
        if edge[0] < 1 or edge[-1] > self.n:
            return False
        rank = colex_rank(edge)
        if isinstance(self._index, np.ndarray):
            return bool(self._index[rank])
        return rank in self._index

    def __contains__(self, vertices) -> bool:
        return self.contains(vertices)

    def __len__(self) -> int:
        return self.m
