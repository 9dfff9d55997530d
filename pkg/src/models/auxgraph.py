"""
Auxiliary graph and audit report models
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, FrozenSet, Optional, Tuple

import networkx as nx
import numpy as np

from ..exceptions import InvalidParameterError, ShapeError
from .hypergraph import Edge

Pair = Tuple[int, int]


class AuxKind(Enum):
    """Auxiliary graph kind"""
    BIPARTITE = "bipartite"
    SIMPLE = "simple"


@dataclass(frozen=True)
class BipartiteGraph:
    """Bipartite graph with sides 1..n_left and 1..n_right"""
    n_left: int
    n_right: int
    edges: FrozenSet[Pair] = frozenset()

    def __post_init__(self):
        edges = frozenset((int(a), int(b)) for a, b in self.edges)
        for a, b in edges:
            if not (1 <= a <= self.n_left and 1 <= b <= self.n_right):
                raise InvalidParameterError(f"Bipartite edge ({a}, {b}) outside the sides")
        object.__setattr__(self, 'edges', edges)

    @property
    def size(self) -> int:
        """Side size N; requires equal sides"""
        if self.n_left != self.n_right:
            raise ShapeError(f"Sides differ: {self.n_left} != {self.n_right}")
        return self.n_left

    def biadjacency(self) -> np.ndarray:
        matrix = np.zeros((self.n_left, self.n_right), dtype=np.int64)
        for a, b in self.edges:
            matrix[a - 1, b - 1] = 1
        return matrix

    def min_degree(self) -> int:
        if self.n_left == 0 and self.n_right == 0:
            return 0
        matrix = self.biadjacency()
        degrees = np.concatenate([matrix.sum(axis=1), matrix.sum(axis=0)])
        return int(degrees.min())

    def to_networkx(self) -> nx.Graph:
        """Nodes ('a', i) for the left side and ('b', j) for the right side"""
        graph = nx.Graph()
        graph.add_nodes_from((('a', i) for i in range(1, self.n_left + 1)), bipartite=0)
        graph.add_nodes_from((('b', j) for j in range(1, self.n_right + 1)), bipartite=1)
        graph.add_edges_from((('a', a), ('b', b)) for a, b in sorted(self.edges))
        return graph

    @classmethod
    def from_pairs(cls, size: int, pairs) -> 'BipartiteGraph':
        return cls(n_left=size, n_right=size, edges=frozenset(pairs))


@dataclass(frozen=True)
class AuxGraph:
    """Auxiliary graph of one instance; each edge carries the hyperedge it encodes"""
    kind: AuxKind
    size: int
    instance_id: int
    edges: Dict[Pair, Edge] = field(default_factory=dict)

    def __post_init__(self):
        hyperedges = set()
        for (u, v), hyperedge in self.edges.items():
            if self.kind is AuxKind.SIMPLE and u == v:
                raise InvalidParameterError(f"Loop at {u} in simple auxiliary graph")
            if not (1 <= u <= self.size and 1 <= v <= self.size):
                raise InvalidParameterError(f"Auxiliary edge ({u}, {v}) outside 1..{self.size}")
            if hyperedge in hyperedges:
                raise InvalidParameterError(f"Hyperedge {hyperedge} encoded twice")
            hyperedges.add(hyperedge)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def hyperedge(self, pair: Pair) -> Edge:
        if self.kind is AuxKind.SIMPLE:
            pair = (min(pair), max(pair))
        return self.edges[pair]

    def to_bipartite(self) -> BipartiteGraph:
        if self.kind is not AuxKind.BIPARTITE:
            raise InvalidParameterError("Only bipartite auxiliary graphs convert to BipartiteGraph")
        return BipartiteGraph.from_pairs(self.size, self.edges.keys())

    def to_networkx(self) -> nx.Graph:
        if self.kind is AuxKind.BIPARTITE:
            return self.to_bipartite().to_networkx()
        graph = nx.Graph()
        graph.add_nodes_from(range(1, self.size + 1))
        graph.add_edges_from(sorted(self.edges))
        return graph


@dataclass(frozen=True)
class AuditReport:
    """Verdict of one pseudo-randomness property.

    `slack` is the value of the property's slack parameter at which the
    measured extremum would be tight; None when undefined.
    """
    property: str
    mode: str
    verdict: str
    witness: Tuple[Tuple[int, ...], ...] = ()
    slack: Optional[float] = None
    measured: Optional[float] = None
    bound: Optional[float] = None
    samples: Optional[int] = None
    details: Dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"

    def to_dict(self) -> Dict[str, Any]:
        return {
            'property': self.property,
            'mode': self.mode,
            'verdict': self.verdict,
            'witness': [list(w) for w in self.witness],
            'slack': self.slack,
            'measured': self.measured,
            'bound': self.bound,
            'samples': self.samples,
            'details': dict(self.details),
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'AuditReport':
        return cls(
            property=data['property'],
            mode=data['mode'],
            verdict=data['verdict'],
            witness=tuple(tuple(w) for w in data.get('witness', ())),
            slack=data.get('slack'),
            measured=data.get('measured'),
            bound=data.get('bound'),
            samples=data.get('samples'),
            details=dict(data.get('details', {})),
        )
