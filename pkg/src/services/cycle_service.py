"""
Cycle service: validation, assembly from auxiliary solutions, packing
verification and the cycle file format
"""

import io
from typing import Dict, Iterable, List, Sequence, TextIO, Tuple, Union

import structlog

from ..exceptions import (
    CycleFormatError,
    DivisibilityError,
    IncompleteSolutionError,
    InvalidParameterError,
    UnsupportedCaseError,
)
from ..models.cycles import (
    CycleVerdict,
    HyperMatching,
    PackingItem,
    PackingResult,
    PackingVerdict,
    TypeLCycle,
    cycle_windows,
)
from ..models.hypergraph import Edge, Hypergraph
from ..models.partitions import PartitionScheme, SchemeMode

Solution = Union[Iterable[Tuple[int, int]], Dict[int, int], Sequence[int]]


class CycleService:
    """Service for type-ell cycles and hypergraph perfect matchings"""

    def __init__(self):
        self.logger = structlog.get_logger()

    def validate_cycle(self, hypergraph: Hypergraph, cycle: TypeLCycle) -> CycleVerdict:
        """Check every cycle invariant and window membership; report the first failure."""
        n = hypergraph.n
        ell = cycle.ell
        if n % ell:
            raise DivisibilityError(f"ell={ell} does not divide n={n}")
        if cycle.k != hypergraph.k:
            return CycleVerdict(False, f"cycle uniformity {cycle.k} differs from hypergraph {hypergraph.k}")
        if sorted(cycle.order) != list(range(1, n + 1)):
            return CycleVerdict(False, "order is not a permutation of 1..n")

        windows = cycle_windows(cycle.order, ell, cycle.k)
        if len(cycle.edges) != len(windows):
            return CycleVerdict(False, f"expected {len(windows)} edges, got {len(cycle.edges)}")
        for j, (edge, window) in enumerate(zip(cycle.edges, windows)):
            if edge != window:
                return CycleVerdict(False, "edge differs from its window", window=j, edge=edge)

        covered = set()
        for j, edge in enumerate(windows):
            previous = set(windows[j - 1])
            if len(previous - set(edge)) != ell:
                return CycleVerdict(False, "consecutive edges do not shift by ell", window=j, edge=edge)
            fresh = set(edge) - previous
            if covered & fresh:
                return CycleVerdict(False, "difference sets overlap", window=j, edge=edge)
            covered |= fresh
        if len(covered) != n:
            return CycleVerdict(False, "difference sets do not cover 1..n")

        for j, edge in enumerate(windows):
            if not hypergraph.contains(edge):
                return CycleVerdict(False, "missing edge", window=j, edge=edge)
        return CycleVerdict(True)

    def validate_matching(self, hypergraph: Hypergraph, matching: HyperMatching) -> CycleVerdict:
        seen = set()
        for j, block in enumerate(matching.blocks):
            if len(block) != hypergraph.k:
                return CycleVerdict(False, "block has the wrong size", window=j, edge=block)
            if seen & set(block):
                return CycleVerdict(False, "blocks overlap", window=j, edge=block)
            seen |= set(block)
        if seen != set(range(1, hypergraph.n + 1)):
            return CycleVerdict(False, "blocks do not cover 1..n")
        for j, block in enumerate(matching.blocks):
            if not hypergraph.contains(block):
                return CycleVerdict(False, "missing edge", window=j, edge=block)
        return CycleVerdict(True)

    def validate_item(self, hypergraph: Hypergraph, item: PackingItem) -> CycleVerdict:
        if isinstance(item, TypeLCycle):
            return self.validate_cycle(hypergraph, item)
        return self.validate_matching(hypergraph, item)

    def assemble_cycle(self, scheme: PartitionScheme, solution: Solution,
                       mode: SchemeMode) -> PackingItem:
        """Lift a perfect matching or a graph Hamilton cycle of G_i to the hypergraph."""
        if mode is not scheme.mode:
            raise UnsupportedCaseError(f"Scheme mode {scheme.mode.value} cannot assemble {mode.value}")
        blocks = scheme.nu

        if mode is SchemeMode.FULL_PARTITION:
            tour = [int(u) for u in solution]
            if len(tour) != blocks or sorted(tour) != list(range(1, blocks + 1)) or blocks < 3:
                raise IncompleteSolutionError(f"Not a Hamilton cycle on {blocks} parts: {tour}")
            order: List[int] = []
            for u in tour:
                order.extend(scheme.x_blocks[u - 1])
            return TypeLCycle.from_order(order, scheme.ell, scheme.k).normalized()

        pairs = sorted(solution.items()) if isinstance(solution, dict) else sorted(
            (int(a), int(b)) for a, b in solution
        )
        expected = list(range(1, blocks + 1))
        if [a for a, _ in pairs] != expected or sorted(b for _, b in pairs) != expected:
            raise IncompleteSolutionError(f"Not a perfect matching on {blocks} + {blocks} vertices")

        if mode is SchemeMode.MATCHING:
            return HyperMatching(tuple(scheme.x_blocks[a - 1] + scheme.y_blocks[b - 1] for a, b in pairs))

        order = []
        for a, b in pairs:
            order.extend(scheme.x_blocks[a - 1])
            order.extend(scheme.y_blocks[b - 1])
        return TypeLCycle.from_order(order, scheme.ell, scheme.k).normalized()

    def verify_packing(self, hypergraph: Hypergraph, result: PackingResult) -> PackingVerdict:
        """Every item valid and no hyperedge shared between two items."""
        owner: Dict[Edge, int] = {}
        for index, item in enumerate(result.items):
            verdict = self.validate_item(hypergraph, item)
            if not verdict.ok:
                return PackingVerdict(False, f"invalid item: {verdict.reason}", edge=verdict.edge,
                                      items=(index,), item_verdict=verdict)
            for edge in item.edges:
                if edge in owner:
                    return PackingVerdict(False, "hyperedge reused", edge=edge, items=(owner[edge], index))
                owner[edge] = index
        return PackingVerdict(True)

    def write_packing(self, items: Iterable[PackingItem]) -> str:
        """Records separated by blank lines."""
        records = []
        for item in items:
            if isinstance(item, TypeLCycle):
                lines = [f"cycle {item.ell}", " ".join(map(str, item.order))]
            else:
                lines = [f"matching {item.k}"]
            lines.extend(" ".join(map(str, edge)) for edge in item.edges)
            records.append("\n".join(lines))
        return "\n\n".join(records) + ("\n" if records else "")

    def parse_packing(self, source: Union[str, TextIO]) -> List[PackingItem]:
        text = source if isinstance(source, str) else source.read()
        items: List[PackingItem] = []
        record: List[Tuple[int, str]] = []
        for line_number, raw in enumerate(io.StringIO(text + "\n"), start=1):
            line = raw.strip()
            if line.startswith('#'):
                continue
            if line:
                record.append((line_number, line))
            elif record:
                items.append(self._parse_record(record))
                record = []
        return items

    def _parse_record(self, record: List[Tuple[int, str]]) -> PackingItem:
        first_line, header = record[0]
        parts = header.split()
        if len(parts) != 2 or parts[0] not in ("cycle", "matching"):
            raise CycleFormatError("record header must be 'cycle L' or 'matching K'", first_line)
        try:
            step = int(parts[1])
            rows = [(number, [int(t) for t in line.split()]) for number, line in record[1:]]
        except ValueError:
            raise CycleFormatError("non-integer token in record", first_line)

        if parts[0] == "matching":
            for number, row in rows:
                if len(row) != step:
                    raise CycleFormatError(f"block must have {step} vertices", number)
            return HyperMatching(tuple(tuple(row) for _, row in rows))

        if not rows:
            raise CycleFormatError("cycle record without an order line", first_line)
        order = rows[0][1]
        edges = [row for _, row in rows[1:]]
        if not edges:
            raise CycleFormatError("cycle record without edges", first_line)
        k = len(edges[0])
        for number, row in rows[1:]:
            if len(row) != k:
                raise CycleFormatError("edges of one cycle differ in size", number)
        try:
            return TypeLCycle(ell=step, k=k, order=tuple(order), edges=tuple(tuple(e) for e in edges))
        except InvalidParameterError as e:
            raise CycleFormatError(str(e), first_line)
