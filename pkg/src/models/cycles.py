"""
Cycle, matching and packing models
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Optional, Sequence, Tuple, Union

from ..exceptions import InvalidParameterError
from .hypergraph import Edge, canonical_edge


def cycle_windows(order: Sequence[int], ell: int, k: int) -> Tuple[Edge, ...]:
    """Windows of k consecutive positions starting at every multiple of ell."""
    n = len(order)
    if ell <= 0 or n % ell:
        return ()
    return tuple(
        canonical_edge(order[(j * ell + i) % n] for i in range(k))
        for j in range(n // ell)
    )


@dataclass(frozen=True)
class TypeLCycle:
    """Type-ell Hamilton cycle with explicit cyclic vertex order"""
    ell: int
    k: int
    order: Tuple[int, ...]
    edges: Tuple[Edge, ...]

    def __post_init__(self):
        if self.ell < 1:
            raise InvalidParameterError(f"Step size must be positive, got {self.ell}")
        if self.k < 2:
            raise InvalidParameterError(f"Uniformity must be at least 2, got {self.k}")
        object.__setattr__(self, 'order', tuple(int(v) for v in self.order))
        object.__setattr__(self, 'edges', tuple(canonical_edge(e) for e in self.edges))

    @classmethod
    def from_order(cls, order: Sequence[int], ell: int, k: int) -> 'TypeLCycle':
        order = tuple(order)
        return cls(ell=ell, k=k, order=order, edges=cycle_windows(order, ell, k))

    @property
    def n(self) -> int:
        return len(self.order)

    def rotated(self, steps: int) -> 'TypeLCycle':
        """Rotate the order left by steps * ell positions."""
        if not self.order:
            return self
        shift = (steps * self.ell) % self.n
        return TypeLCycle.from_order(self.order[shift:] + self.order[:shift], self.ell, self.k)

    def reversed(self) -> 'TypeLCycle':
        """Traverse in the opposite direction, windows realigned to multiples of ell."""
        if not self.order:
            return self
        backwards = self.order[::-1]
        shift = (-self.k) % self.ell
        return TypeLCycle.from_order(backwards[shift:] + backwards[:shift], self.ell, self.k)

    def normalized(self) -> 'TypeLCycle':
        """Canonical representation.

        Among the ell-rotations of both directions, the minimal vertex comes as
        early as possible, then the second block's minimum must be below the
        last block's minimum; remaining ties go to the smaller order.
        """
        if not self.order or self.n % self.ell:
            return self
        steps = self.n // self.ell
        candidates = [self.rotated(j) for j in range(steps)]
        back = self.reversed()
        candidates.extend(back.rotated(j) for j in range(steps))
        lowest = min(self.order)
        return min(candidates, key=lambda c: (c.order.index(lowest), not c._opens_upward(), c.order))

    def _opens_upward(self) -> bool:
        if self.n < 2 * self.ell:
            return False
        second = self.order[self.ell:2 * self.ell]
        last = self.order[-self.ell:]
        return min(second) < min(last)


@dataclass(frozen=True)
class HyperMatching:
    """Perfect matching of a k-uniform hypergraph"""
    blocks: Tuple[Edge, ...]

    def __post_init__(self):
        object.__setattr__(self, 'blocks', tuple(sorted(canonical_edge(b) for b in self.blocks)))

    @property
    def edges(self) -> Tuple[Edge, ...]:
        return self.blocks

    @property
    def k(self) -> int:
        return len(self.blocks[0]) if self.blocks else 0

    @property
    def n(self) -> int:
        return sum(len(b) for b in self.blocks)


PackingItem = Union[TypeLCycle, HyperMatching]


class PackingKind(Enum):
    """Packing kind"""
    CYCLES = "cycle-packing"
    MATCHINGS = "matching-packing"


@dataclass(frozen=True)
class PackingResult:
    """Edge-disjoint family of cycles or matchings harvested from one hypergraph"""
    kind: PackingKind
    n: int
    k: int
    ell: int
    source_edges: int
    items: Tuple[PackingItem, ...] = ()
    per_instance_counts: Tuple[Tuple[int, int], ...] = ()

    @property
    def edges_used(self) -> int:
        return sum(len(item.edges) for item in self.items)

    @property
    def coverage(self) -> float:
        if self.source_edges == 0:
            return 0.0
        return self.edges_used / self.source_edges

    def counts_by_instance(self) -> Dict[int, int]:
        """Harvested items per partition instance id."""
        return dict(self.per_instance_counts)


@dataclass(frozen=True)
class CycleVerdict:
    """Outcome of validating one cycle or matching"""
    ok: bool
    reason: Optional[str] = None
    window: Optional[int] = None
    edge: Optional[Edge] = None

    def __bool__(self) -> bool:
        return self.ok


@dataclass(frozen=True)
class PackingVerdict:
    """Outcome of verifying a whole packing"""
    ok: bool
    reason: Optional[str] = None
    edge: Optional[Edge] = None
    items: Tuple[int, ...] = ()
    item_verdict: Optional[CycleVerdict] = field(default=None)

    def __bool__(self) -> bool:
        return self.ok

    def describe(self) -> str:
        if self.ok:
            return "ok"
        parts: List[str] = [self.reason or "invalid"]
        if self.edge is not None:
            parts.append(f"edge={list(self.edge)}")
        if self.items:
            parts.append(f"items={list(self.items)}")
        return " ".join(parts)
