"""
Hamilton service: edge-disjoint Hamilton cycles of simple graphs by
rotation-extension
"""

from typing import Dict, Hashable, List, Optional, Set

import networkx as nx
import numpy as np
import structlog

from ..exceptions import InvalidParameterError
from ..models.config import HamiltonConfig
from ..models.packs import CyclePack
from ..utils.seeding import StreamTag, derive_rng


class HamiltonService:
    """Extracts Hamilton cycles one at a time, removing each cycle's edges"""

    def __init__(self, config: Optional[HamiltonConfig] = None):
        self.logger = structlog.get_logger()
        self.config = config or HamiltonConfig()

    def pack_graph_hamilton(self, graph: nx.Graph, target_hint: Optional[float] = None,
                            seed: int = 0, instance_id: int = 0) -> CyclePack:
        """Repeated rotation-extension until the failure budget runs out."""
        size = graph.number_of_nodes()
        if size < 3:
            raise InvalidParameterError(f"Hamilton cycles need at least 3 vertices, got {size}")

        residual = nx.Graph()
        residual.add_nodes_from(sorted(graph.nodes()))
        residual.add_edges_from(sorted(tuple(sorted(e)) for e in graph.edges()))
        rng = derive_rng(seed, StreamTag.HAMILTON, instance_id)

        cycles = []
        failures = 0
        attempts = 0
        while failures < self.config.stop_after_failures:
            if min(d for _, d in residual.degree()) < 2:
                break
            cycle = None
            for _ in range(self.config.restart_budget):
                attempts += 1
                cycle = self._attempt(residual, rng)
                if cycle is not None:
                    break
            if cycle is None:
                failures += 1
                continue
            failures = 0
            residual.remove_edges_from(zip(cycle, cycle[1:] + cycle[:1]))
            cycles.append(tuple(cycle))

        self.logger.debug("Hamilton cycles extracted", instance_id=instance_id, cycles=len(cycles),
                          target_hint=target_hint, attempts=attempts)
        return CyclePack(size=size, cycles=tuple(cycles), target_hint=target_hint, attempts=attempts)

    def _attempt(self, graph: nx.Graph, rng: np.random.Generator) -> Optional[List[Hashable]]:
        """One rotation-extension run from a random start vertex."""
        nodes = list(graph.nodes())
        size = len(nodes)
        rotation_cap = self.config.rotation_factor * size
        neighbours: Dict[Hashable, List[Hashable]] = {v: sorted(graph.adj[v]) for v in nodes}

        path = [nodes[int(rng.integers(size))]]
        on_path: Set[Hashable] = {path[0]}
        rotations = 0
        while rotations <= rotation_cap:
            end = path[-1]
            fresh = [v for v in neighbours[end] if v not in on_path]
            if fresh:
                # prefer the neighbour with fewest unvisited neighbours of its own
                scores = [sum(1 for w in neighbours[v] if w not in on_path) for v in fresh]
                lowest = min(scores)
                options = [v for v, s in zip(fresh, scores) if s == lowest]
                chosen = options[int(rng.integers(len(options)))]
                path.append(chosen)
                on_path.add(chosen)
                continue

            if len(path) == size and graph.has_edge(end, path[0]):
                return path

            # rotate: pivot on a path neighbour of the endpoint
            position = {v: i for i, v in enumerate(path)}
            pivots = [position[v] for v in neighbours[end] if position[v] < len(path) - 2]
            if not pivots:
                if len(path) < 2:
                    return None
                path.reverse()
                rotations += 1
                continue
            pivot = pivots[int(rng.integers(len(pivots)))]
            path[pivot + 1:] = path[pivot + 1:][::-1]
            rotations += 1
        return None

    @staticmethod
    def is_hamiltonian_cycle(graph: nx.Graph, cycle) -> bool:
        """n distinct vertices with consecutive adjacency in the graph"""
        cycle = list(cycle)
        if len(cycle) != graph.number_of_nodes() or len(set(cycle)) != len(cycle):
            return False
        return all(graph.has_edge(u, v) for u, v in zip(cycle, cycle[1:] + cycle[:1]))
