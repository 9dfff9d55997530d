"""
Partition instance and labeling models
"""

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, Iterator, List, Optional, Tuple

from ..exceptions import InvalidParameterError, UnsupportedCaseError
from .hypergraph import Edge, canonical_edge

Witness = Tuple[int, int]


class SchemeMode(Enum):
    """How an instance decomposes hyperedges into blocks"""
    BIPARTITION_CYCLE = "bipartition-cycle"
    FULL_PARTITION = "full-partition"
    MATCHING = "matching"


class Regime(Enum):
    """Which parameter formulas supply the defaults"""
    RANDOM = "random"
    PSEUDO_RANDOM = "pseudo-random"


def derive_mode(k: int, ell: int) -> SchemeMode:
    """Mode dispatch for (k, ell)."""
    if k < 2 or ell < 1:
        raise UnsupportedCaseError(f"Unsupported (k, ell) = ({k}, {ell})")
    if ell == k:
        return SchemeMode.MATCHING
    if 2 * ell == k:
        return SchemeMode.FULL_PARTITION
    if k < 2 * ell < 2 * k:
        return SchemeMode.BIPARTITION_CYCLE
    raise UnsupportedCaseError(f"(k, ell) = ({k}, {ell}) is outside k/2 <= ell <= k")


def block_sizes(k: int, ell: int, mode: SchemeMode) -> Tuple[int, int]:
    """(X-block size, Y-block size); Y size is 0 in the full-partition mode."""
    if mode is SchemeMode.BIPARTITION_CYCLE:
        return k - ell, 2 * ell - k
    if mode is SchemeMode.MATCHING:
        return k // 2, k - k // 2
    return ell, 0


@dataclass(frozen=True)
class PartitionScheme:
    """One partition instance.

    X-blocks and Y-blocks are 1-indexed in the order stored here; that order
    realizes the random permutations of the instance.
    """
    instance_id: int
    n: int
    k: int
    ell: int
    mode: SchemeMode
    x_blocks: Tuple[Tuple[int, ...], ...]
    y_blocks: Tuple[Tuple[int, ...], ...] = ()
    _locator: Dict[int, Tuple[str, int]] = field(default=None, init=False, compare=False, repr=False)

    def __post_init__(self):
        x_blocks = tuple(canonical_edge(b) for b in self.x_blocks)
        y_blocks = tuple(canonical_edge(b) for b in self.y_blocks)
        object.__setattr__(self, 'x_blocks', x_blocks)
        object.__setattr__(self, 'y_blocks', y_blocks)

        x_size, y_size = block_sizes(self.k, self.ell, self.mode)
        blocks = self.nu
        if len(x_blocks) != blocks or any(len(b) != x_size for b in x_blocks):
            raise InvalidParameterError(
                f"Instance {self.instance_id}: expected {blocks} X-blocks of size {x_size}"
            )
        expected_y = 0 if self.mode is SchemeMode.FULL_PARTITION else blocks
        if len(y_blocks) != expected_y or any(len(b) != y_size for b in y_blocks):
            raise InvalidParameterError(
                f"Instance {self.instance_id}: expected {expected_y} Y-blocks of size {y_size}"
            )

        locator: Dict[int, Tuple[str, int]] = {}
        for side, side_blocks in (("X", x_blocks), ("Y", y_blocks)):
            for index, block in enumerate(side_blocks, start=1):
                for vertex in block:
                    if vertex in locator:
                        raise InvalidParameterError(
                            f"Instance {self.instance_id}: vertex {vertex} appears in two blocks"
                        )
                    locator[vertex] = (side, index)
        if sorted(locator) != list(range(1, self.n + 1)):
            raise InvalidParameterError(f"Instance {self.instance_id}: blocks do not partition 1..{self.n}")
        object.__setattr__(self, '_locator', locator)

    @property
    def nu(self) -> int:
        """Number of X-blocks (and of Y-blocks in the bipartition modes)"""
        step = self.k if self.mode is SchemeMode.MATCHING else self.ell
        return self.n // step

    def locate(self, vertex: int) -> Tuple[str, int]:
        return self._locator[vertex]

    def candidate_edge(self, witness: Witness) -> Edge:
        """The k-set this instance would include at the given witness."""
        a, b = witness
        if self.mode is SchemeMode.BIPARTITION_CYCLE:
            successor = a % self.nu + 1
            return canonical_edge(self.x_blocks[a - 1] + self.y_blocks[b - 1] + self.x_blocks[successor - 1])
        if self.mode is SchemeMode.MATCHING:
            return canonical_edge(self.x_blocks[a - 1] + self.y_blocks[b - 1])
        return canonical_edge(self.x_blocks[a - 1] + self.x_blocks[b - 1])

    def candidates(self) -> Iterator[Tuple[Edge, Witness]]:
        """Every k-set this instance includes, with its witness."""
        blocks = self.nu
        if self.mode is SchemeMode.FULL_PARTITION:
            for u in range(1, blocks + 1):
                for v in range(u + 1, blocks + 1):
                    yield self.candidate_edge((u, v)), (u, v)
            return
        for a in range(1, blocks + 1):
            for b in range(1, blocks + 1):
                yield self.candidate_edge((a, b)), (a, b)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'instance_id': self.instance_id,
            'mode': self.mode.value,
            'x_blocks': [list(b) for b in self.x_blocks],
            'y_blocks': [list(b) for b in self.y_blocks],
        }


@dataclass(frozen=True)
class EdgeLabel:
    """Label chosen for one included hyperedge"""
    instance_id: int
    witness: Witness
    edge: Edge


@dataclass(frozen=True)
class LabeledEdgeSet:
    """Inclusion counts f(E) and labels, keyed by colex rank."""
    edge_count: int
    counts: Dict[int, int]
    labels: Dict[int, EdgeLabel]
    _fibers: Dict[int, Tuple[Tuple[int, EdgeLabel], ...]] = field(
        default=None, init=False, compare=False, repr=False
    )

    def __post_init__(self):
        fibers: Dict[int, List[Tuple[int, EdgeLabel]]] = {}
        for rank in sorted(self.labels):
            label = self.labels[rank]
            fibers.setdefault(label.instance_id, []).append((rank, label))
        object.__setattr__(self, '_fibers', {i: tuple(f) for i, f in fibers.items()})

    def f(self, rank: int) -> int:
        return self.counts.get(rank, 0)

    def label_of(self, rank: int) -> Optional[EdgeLabel]:
        return self.labels.get(rank)

    def fiber(self, instance_id: int) -> Tuple[Tuple[int, EdgeLabel], ...]:
        """Edges labeled with the given instance, ascending by rank"""
        return self._fibers.get(instance_id, ())

    @property
    def labeled_count(self) -> int:
        return len(self.labels)

    @property
    def unlabeled_count(self) -> int:
        return self.edge_count - len(self.labels)

    def all_counts(self) -> List[int]:
        """f(E) over every edge of the hypergraph, zeros included"""
        values = list(self.counts.values())
        values.extend([0] * (self.edge_count - len(values)))
        return values


def _finite(value: Optional[float]) -> Optional[float]:
    if value is None:
        return None
    value = float(value)
    return value if math.isfinite(value) else None


@dataclass(frozen=True)
class SchemeParameters:
    """Parameters of one run; non-finite values are stored as None."""
    n: int
    k: int
    ell: int
    p: float
    mode: SchemeMode
    regime: Regime
    rho: Optional[float]
    r: Optional[float]
    eps: Optional[float]
    f0: Optional[float]
    p0: Optional[float]
    n0: Optional[float]
    diagnostics: Tuple[str, ...] = ()

    def __post_init__(self):
        for name in ('rho', 'r', 'eps', 'f0', 'p0', 'n0'):
            object.__setattr__(self, name, _finite(getattr(self, name)))
        object.__setattr__(self, 'diagnostics', tuple(self.diagnostics))

    def to_dict(self) -> Dict[str, Any]:
        return {
            'n': self.n,
            'k': self.k,
            'ell': self.ell,
            'p': self.p,
            'mode': self.mode.value,
            'regime': self.regime.value,
            'rho': self.rho,
            'r': self.r,
            'eps': self.eps,
            'f0': self.f0,
            'p0': self.p0,
            'n0': self.n0,
            'diagnostics': list(self.diagnostics),
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'SchemeParameters':
        return cls(
            n=data['n'],
            k=data['k'],
            ell=data['ell'],
            p=data['p'],
            mode=SchemeMode(data['mode']),
            regime=Regime(data['regime']),
            rho=data.get('rho'),
            r=data.get('r'),
            eps=data.get('eps'),
            f0=data.get('f0'),
            p0=data.get('p0'),
            n0=data.get('n0'),
            diagnostics=tuple(data.get('diagnostics', ())),
        )


@dataclass(frozen=True)
class ParameterOverrides:
    """Values pinned by the caller instead of the formulas"""
    r: Optional[float] = None
    eps: Optional[float] = None
    f0: Optional[float] = None

    def __post_init__(self):
        if self.r is not None and self.r < 0:
            raise InvalidParameterError(f"r must be non-negative, got {self.r}")
        if self.eps is not None and self.eps <= 0:
            raise InvalidParameterError(f"eps must be positive, got {self.eps}")
        if self.f0 is not None and self.f0 <= 0:
            raise InvalidParameterError(f"f0 must be positive, got {self.f0}")
