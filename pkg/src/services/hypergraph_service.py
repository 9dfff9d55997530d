"""
Hypergraph service: random generation, neighbourhood queries and file I/O
"""

import io
from math import comb
from pathlib import Path
from typing import Iterable, List, TextIO, Tuple, Union

import numpy as np
import structlog

from ..exceptions import (
    ArityError,
    DuplicateEdgeError,
    HypergraphFormatError,
    InvalidParameterError,
    InvalidQueryError,
    VertexRangeError,
)
from ..models.hypergraph import Edge, Hypergraph, VertexSet
from ..utils.combinatorics import colex_unrank
from ..utils.seeding import StreamTag, rank_uniform


def _read_text(source: Union[str, TextIO]) -> str:
    return source if isinstance(source, str) else source.read()


class HypergraphService:
    """Service for building, querying and serializing hypergraphs"""

    def __init__(self):
        self.logger = structlog.get_logger()

    def generate_hnpk(self, n: int, k: int, p: float, seed: int) -> Hypergraph:
        """Sample H(n, p, k): every k-set of [n] is an edge independently with probability p."""
        if k < 2 or k > n:
            raise InvalidParameterError(f"Need 2 <= k <= n, got n={n}, k={k}")
        if not (0.0 <= p <= 1.0):
            raise InvalidParameterError(f"Probability must be in [0, 1], got {p}")

        total = comb(n, k)
        if p <= 0.0:
            selected: List[int] = []
        else:
            draws = np.fromiter(
                (rank_uniform(seed, StreamTag.HYPERGRAPH, rank) for rank in range(total)),
                dtype=np.float64, count=total,
            )
            selected = [int(rank) for rank in np.nonzero(draws < p)[0]]

        hypergraph = Hypergraph.from_edges(n, k, (colex_unrank(rank, k) for rank in selected))
        self.logger.debug("Hypergraph generated", n=n, k=k, p=p, seed=seed, m=hypergraph.m)
        return hypergraph

    def neighborhood_query(self, hypergraph: Hypergraph,
                           vertices: Union[VertexSet, Iterable[int]]) -> Tuple[int, List[Edge]]:
        """Degree d_H(S) and neighbourhood N_H(S) of a vertex set."""
        if not isinstance(vertices, VertexSet):
            try:
                vertices = VertexSet.of(vertices)
            except InvalidParameterError as e:
                raise InvalidQueryError(str(e))
        if not (0 < vertices.size < hypergraph.k):
            raise InvalidQueryError(
                f"Query set size must be in 1..{hypergraph.k - 1}, got {vertices.size}"
            )
        if vertices.vertices[-1] > hypergraph.n:
            raise InvalidQueryError(f"Query set {vertices.vertices} leaves 1..{hypergraph.n}")

        query = set(vertices.vertices)
        neighborhood = [
            tuple(v for v in edge if v not in query)
            for edge in hypergraph.edges
            if query.issubset(edge)
        ]
        return len(neighborhood), sorted(neighborhood)

    def parse_hypergraph(self, source: Union[str, TextIO]) -> Hypergraph:
        """Parse the 'k n' header plus edge lines format."""
        header = None
        edges: List[Edge] = []
        seen = {}
        for line_number, raw in enumerate(io.StringIO(_read_text(source)), start=1):
            line = raw.strip()
            if not line or line.startswith('#'):
                continue
            try:
                values = [int(token) for token in line.split()]
            except ValueError:
                raise HypergraphFormatError(f"non-integer token in '{line}'", line_number)

            if header is None:
                if len(values) != 2:
                    raise HypergraphFormatError("header must be 'k n'", line_number)
                k, n = values
                if k < 2 or k > n:
                    raise HypergraphFormatError(f"invalid header k={k} n={n}", line_number)
                header = (k, n)
                continue

            k, n = header
            if len(values) != k or len(set(values)) != k:
                raise ArityError(f"expected {k} distinct vertices, got {len(values)}", line_number)
            if min(values) < 1 or max(values) > n:
                raise VertexRangeError(f"vertex outside 1..{n}", line_number)
            if any(a >= b for a, b in zip(values, values[1:])):
                raise HypergraphFormatError(f"edge line '{line}' is not ascending", line_number)
            edge = tuple(values)
            if edge in seen:
                raise DuplicateEdgeError(
                    f"edge {list(edge)} already listed at line {seen[edge]}", line_number
                )
            seen[edge] = line_number
            edges.append(edge)

        if header is None:
            raise HypergraphFormatError("missing 'k n' header")
        k, n = header
        return Hypergraph.from_edges(n, k, edges)

    def write_hypergraph(self, hypergraph: Hypergraph) -> str:
        """Canonical text form: header, then edges in lexicographic order."""
        lines = [f"{hypergraph.k} {hypergraph.n}"]
        lines.extend(" ".join(str(v) for v in edge) for edge in hypergraph.edges)
        return "\n".join(lines) + "\n"

    def load(self, path: Union[str, Path]) -> Hypergraph:
        path = Path(path)
        if not path.exists():
            raise HypergraphFormatError(f"Hypergraph file not found: {path}")
        with open(path, 'r', encoding='utf-8') as f:
            hypergraph = self.parse_hypergraph(f)
        self.logger.info("Hypergraph loaded", path=str(path), n=hypergraph.n, k=hypergraph.k, m=hypergraph.m)
        return hypergraph

    def save(self, hypergraph: Hypergraph, path: Union[str, Path]) -> None:
        with open(path, 'w', encoding='utf-8', newline='\n') as f:
            f.write(self.write_hypergraph(hypergraph))
        self.logger.info("Hypergraph written", path=str(path), m=hypergraph.m)
