"""
Packer result models
"""

from dataclasses import dataclass
from typing import FrozenSet, Optional, Tuple

from ..exceptions import InvariantViolationError
from .auxgraph import Pair


@dataclass(frozen=True)
class FlowCut:
    """Cut (S, T) of the disjoint-matching network.

    S holds left vertices and T right vertices on the source side. The cut
    certifies infeasibility at `demand` when edges_out < (|S| - |T|) * demand.
    """
    left: Tuple[int, ...]
    right: Tuple[int, ...]
    edges_out: int
    demand: int

    @property
    def required(self) -> int:
        return (len(self.left) - len(self.right)) * self.demand

    @property
    def violated(self) -> bool:
        return self.edges_out < self.required


@dataclass(frozen=True)
class FlowPackResult:
    """Flow optimum t with its t-regular spanning subgraph"""
    size: int
    t: int
    subgraph: FrozenSet[Pair]
    cut: Optional[FlowCut] = None


@dataclass(frozen=True)
class MatchingPack:
    """Pairwise edge-disjoint perfect matchings of a bipartite graph"""
    size: int
    matchings: Tuple[Tuple[Pair, ...], ...] = ()
    cut: Optional[FlowCut] = None

    def __post_init__(self):
        seen = set()
        for matching in self.matchings:
            lefts = sorted(a for a, _ in matching)
            rights = sorted(b for _, b in matching)
            expected = list(range(1, self.size + 1))
            if lefts != expected or rights != expected:
                raise InvariantViolationError(f"Matching is not perfect: {matching}")
            for pair in matching:
                if pair in seen:
                    raise InvariantViolationError(f"Edge {pair} used by two matchings")
                seen.add(pair)

    @property
    def t(self) -> int:
        return len(self.matchings)


@dataclass(frozen=True)
class CyclePack:
    """Pairwise edge-disjoint Hamilton cycles of a simple graph"""
    size: int
    cycles: Tuple[Tuple[int, ...], ...] = ()
    target_hint: Optional[float] = None
    attempts: int = 0

    def __post_init__(self):
        seen = set()
        for cycle in self.cycles:
            if len(cycle) != self.size or len(set(cycle)) != self.size:
                raise InvariantViolationError(f"Cycle does not visit every vertex once: {cycle}")
            for i, u in enumerate(cycle):
                v = cycle[(i + 1) % len(cycle)]
                edge = (min(u, v), max(u, v))
                if edge in seen:
                    raise InvariantViolationError(f"Edge {edge} used by two cycles")
                seen.add(edge)

    @property
    def count(self) -> int:
        return len(self.cycles)
