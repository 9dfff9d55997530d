"""
Auxiliary graph service
"""

import io
from pathlib import Path
from typing import Dict, TextIO, Union

import structlog

from ..exceptions import HypergraphFormatError, VertexRangeError
from ..models.auxgraph import AuxGraph, AuxKind, BipartiteGraph, Pair
from ..models.hypergraph import Edge, Hypergraph
from ..models.partitions import LabeledEdgeSet, PartitionScheme, SchemeMode


class AuxGraphService:
    """Builds G_i from the label fiber of instance i and reads bipartite test graphs"""

    def __init__(self):
        self.logger = structlog.get_logger()

    def build_aux_graph(self, hypergraph: Hypergraph, scheme: PartitionScheme,
                        labels: LabeledEdgeSet) -> AuxGraph:
        kind = AuxKind.SIMPLE if scheme.mode is SchemeMode.FULL_PARTITION else AuxKind.BIPARTITE
        edges: Dict[Pair, Edge] = {}
        for rank, label in labels.fiber(scheme.instance_id):
            if not hypergraph.contains(label.edge):
                continue
            # the witness must still describe this scheme's block pattern
            if scheme.candidate_edge(label.witness) != label.edge:
                continue
            edges[label.witness] = label.edge

        graph = AuxGraph(kind=kind, size=scheme.nu, instance_id=scheme.instance_id, edges=edges)
        self.logger.debug("Auxiliary graph built", instance_id=scheme.instance_id,
                          kind=kind.value, edges=graph.edge_count)
        return graph

    def parse_bipartite(self, source: Union[str, TextIO]) -> BipartiteGraph:
        """'N' header, then 'a b' lines with 1-based sides."""
        text = source if isinstance(source, str) else source.read()
        size = None
        pairs = []
        for line_number, raw in enumerate(io.StringIO(text), start=1):
            line = raw.strip()
            if not line or line.startswith('#'):
                continue
            try:
                values = [int(token) for token in line.split()]
            except ValueError:
                raise HypergraphFormatError(f"non-integer token in '{line}'", line_number)
            if size is None:
                if len(values) != 1 or values[0] < 0:
                    raise HypergraphFormatError("header must be a single side size N", line_number)
                size = values[0]
                continue
            if len(values) != 2:
                raise HypergraphFormatError("edge line must be 'a b'", line_number)
            a, b = values
            if not (1 <= a <= size and 1 <= b <= size):
                raise VertexRangeError(f"vertex outside 1..{size}", line_number)
            pairs.append((a, b))
        if size is None:
            raise HypergraphFormatError("missing 'N' header")
        return BipartiteGraph.from_pairs(size, pairs)

    def write_bipartite(self, graph: BipartiteGraph) -> str:
        lines = [str(graph.size)]
        lines.extend(f"{a} {b}" for a, b in sorted(graph.edges))
        return "\n".join(lines) + "\n"

    def load_bipartite(self, path: Union[str, Path]) -> BipartiteGraph:
        path = Path(path)
        if not path.exists():
            raise HypergraphFormatError(f"Graph file not found: {path}")
        with open(path, 'r', encoding='utf-8') as f:
            return self.parse_bipartite(f)
