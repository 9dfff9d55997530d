"""
Matching service: edge-disjoint perfect matchings of bipartite graphs

The optimum t is the largest integer for which the network
source -> A (capacity t), A -> B along G (capacity 1), B -> sink (capacity t)
carries flow t * N. The integral flow is a t-regular spanning subgraph that
peels into t perfect matchings.
"""

from typing import Dict, FrozenSet, Iterable, List, Tuple

import networkx as nx
from networkx.algorithms.flow import dinitz
import structlog

from ..exceptions import InvariantViolationError, SizeError
from ..models.auxgraph import BipartiteGraph, Pair
from ..models.packs import FlowCut, FlowPackResult, MatchingPack

SOURCE = "source"
SINK = "sink"
ORACLE_LIMIT = 7


def edges_leaving(graph: BipartiteGraph, left: Iterable[int], right: Iterable[int]) -> int:
    """e(S, B minus T)"""
    left, right = set(left), set(right)
    return sum(1 for a, b in graph.edges if a in left and b not in right)


class MatchingService:
    """Service for flow-optimal perfect-matching packing"""

    def __init__(self):
        self.logger = structlog.get_logger()

    def _network(self, graph: BipartiteGraph, demand: int) -> nx.DiGraph:
        network = nx.DiGraph()
        size = graph.size
        network.add_node(SOURCE)
        network.add_node(SINK)
        for i in range(1, size + 1):
            network.add_edge(SOURCE, ('a', i), capacity=demand)
            network.add_edge(('b', i), SINK, capacity=demand)
        for a, b in sorted(graph.edges):
            network.add_edge(('a', a), ('b', b), capacity=1)
        return network

    def _feasible(self, graph: BipartiteGraph, demand: int):
        network = self._network(graph, demand)
        value, flow = nx.maximum_flow(network, SOURCE, SINK, flow_func=dinitz)
        return value == demand * graph.size, flow

    def _certificate(self, graph: BipartiteGraph, demand: int) -> FlowCut:
        network = self._network(graph, demand)
        _, (reachable, _) = nx.minimum_cut(network, SOURCE, SINK, flow_func=dinitz)
        left = tuple(sorted(v[1] for v in reachable if isinstance(v, tuple) and v[0] == 'a'))
        right = tuple(sorted(v[1] for v in reachable if isinstance(v, tuple) and v[0] == 'b'))
        return FlowCut(left=left, right=right, edges_out=edges_leaving(graph, left, right), demand=demand)

    def max_disjoint_pm_flow(self, graph: BipartiteGraph) -> FlowPackResult:
        """Largest t with a t-regular spanning subgraph, plus the cut refuting t + 1."""
        size = graph.size
        if size == 0:
            return FlowPackResult(size=0, t=0, subgraph=frozenset())

        low, high = 0, graph.min_degree()
        best_flow = None
        while low < high:
            middle = (low + high + 1) // 2
            feasible, flow = self._feasible(graph, middle)
            if feasible:
                low, best_flow = middle, flow
            else:
                high = middle - 1
        t = low

        subgraph: FrozenSet[Pair] = frozenset()
        if t > 0:
            subgraph = frozenset(
                (a, b) for a, b in graph.edges if best_flow[('a', a)][('b', b)] > 0
            )
            self._check_regular(subgraph, size, t)

        cut = self._certificate(graph, t + 1)
        if not cut.violated:
            raise InvariantViolationError(f"No violated cut at demand {t + 1}")
        self.logger.debug("Flow optimum found", size=size, t=t, cut_left=len(cut.left), cut_right=len(cut.right))
        return FlowPackResult(size=size, t=t, subgraph=subgraph, cut=cut)

    @staticmethod
    def _check_regular(edges: Iterable[Pair], size: int, degree: int) -> None:
        left: Dict[int, int] = {}
        right: Dict[int, int] = {}
        for a, b in edges:
            left[a] = left.get(a, 0) + 1
            right[b] = right.get(b, 0) + 1
        for side in (left, right):
            if len(side) != size or any(d != degree for d in side.values()):
                raise InvariantViolationError(f"Subgraph is not {degree}-regular")

    def pack_perfect_matchings(self, graph: BipartiteGraph) -> MatchingPack:
        """Peel the t-regular flow subgraph into t perfect matchings."""
        optimum = self.max_disjoint_pm_flow(graph)
        size = optimum.size
        residual = nx.Graph()
        top = [('a', i) for i in range(1, size + 1)]
        residual.add_nodes_from(top)
        residual.add_nodes_from(('b', j) for j in range(1, size + 1))
        residual.add_edges_from((('a', a), ('b', b)) for a, b in sorted(optimum.subgraph))

        matchings: List[Tuple[Pair, ...]] = []
        for peel in range(optimum.t):
            matching = nx.bipartite.hopcroft_karp_matching(residual, top_nodes=top)
            pairs = tuple(sorted((u[1], matching[u][1]) for u in top if u in matching))
            if len(pairs) != size:
                raise InvariantViolationError(
                    f"Peel {peel} of a {optimum.t - peel}-regular graph is not perfect"
                )
            residual.remove_edges_from((('a', a), ('b', b)) for a, b in pairs)
            matchings.append(pairs)
        return MatchingPack(size=size, matchings=tuple(matchings), cut=optimum.cut)

    def brute_force_pm_oracle(self, graph: BipartiteGraph) -> int:
        """Exact maximum number of edge-disjoint perfect matchings by exhaustive search."""
        size = graph.size
        if size > ORACLE_LIMIT:
            raise SizeError(f"Oracle supports N <= {ORACLE_LIMIT}, got {size}")
        if size == 0:
            return 0

        edges = sorted(graph.edges)
        bit = {edge: 1 << i for i, edge in enumerate(edges)}
        neighbours: Dict[int, List[int]] = {a: [] for a in range(1, size + 1)}
        for a, b in edges:
            neighbours[a].append(b)

        # every perfect matching as an edge bitmask, grouped by its edge at left vertex 1
        groups: Dict[int, List[int]] = {}

        def extend(a: int, used_right: int, mask: int, first: int) -> None:
            if a > size:
                groups.setdefault(first, []).append(mask)
                return
            for b in neighbours[a]:
                if not used_right & (1 << b):
                    extend(a + 1, used_right | (1 << b), mask | bit[(a, b)], first if a > 1 else b)

        extend(1, 0, 0, 0)
        firsts = sorted(groups)
        upper = graph.min_degree()
        best = 0

        def search(position: int, used: int, count: int) -> bool:
            nonlocal best
            best = max(best, count)
            if best >= upper:
                return True
            # symmetry: matchings are taken in increasing order of their edge at vertex 1
            if count + len(firsts) - position <= best:
                return False
            for index in range(position, len(firsts)):
                for mask in groups[firsts[index]]:
                    if not used & mask:
                        if search(index + 1, used | mask, count + 1):
                            return True
            return False

        search(0, 0, 0)
        return best
