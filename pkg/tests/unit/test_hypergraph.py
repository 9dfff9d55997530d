"""
Unit tests for hypergraphs and the hypergraph service
"""

import io
from itertools import combinations

import pytest

from src.exceptions import (
    ArityError,
    DuplicateEdgeError,
    HypergraphFormatError,
    InvalidParameterError,
    InvalidQueryError,
    VertexRangeError,
)
from src.models.hypergraph import Hypergraph, VertexSet, canonical_edge
from src.services.hypergraph_service import HypergraphService


def complete(n, k):
    return Hypergraph.from_edges(n, k, combinations(range(1, n + 1), k))


class TestVertexSet:
    """Test VertexSet model"""

    def test_of_sorts(self):
        """Test building from an unordered iterable"""
        assert VertexSet.of([3, 1, 2]).vertices == (1, 2, 3)

    def test_not_ascending(self):
        """Test order validation"""
        with pytest.raises(InvalidParameterError, match="strictly ascending"):
            VertexSet((2, 1))

    def test_repeated(self):
        """Test repeated vertices"""
        with pytest.raises(InvalidParameterError, match="repeated"):
            VertexSet.of([1, 1])

    def test_zero_vertex(self):
        """Test vertices are 1-based"""
        with pytest.raises(InvalidParameterError, match="1-based"):
            VertexSet((0, 1))


class TestHypergraph:
    """Test Hypergraph model"""

    def test_canonical_edges(self):
        """Test edges are canonicalized, deduplicated and sorted"""
        hypergraph = Hypergraph.from_edges(5, 3, [(3, 2, 1), (5, 1, 2), (1, 2, 3)])
        assert hypergraph.edges == ((1, 2, 3), (1, 2, 5))
        assert hypergraph.m == 2

    def test_membership(self):
        """Test membership in any vertex order"""
        hypergraph = Hypergraph.from_edges(6, 3, [(1, 2, 5)])
        assert hypergraph.contains((5, 2, 1))
        assert (1, 2, 5) in hypergraph
        assert not hypergraph.contains((1, 2, 6))
        assert not hypergraph.contains((1, 2))
        assert not hypergraph.contains((1, 2, 9))

    def test_membership_without_bitset(self):
        """Test the sparse index answers like the dense one"""
        edges = [(1, 2, 5), (2, 4, 6)]
        dense = Hypergraph.from_edges(6, 3, edges)
        sparse = Hypergraph.from_edges(6, 3, edges, bitset_budget=0)
        for subset in combinations(range(1, 7), 3):
            assert dense.contains(subset) == sparse.contains(subset)
        assert dense == sparse

    def test_density(self):
        """Test density over C(n, k)"""
        hypergraph = complete(6, 3)
        assert hypergraph.total_sets == 20
        assert hypergraph.density == 1.0
        assert Hypergraph(n=6, k=3).density == 0.0

    def test_invalid_k(self):
        """Test uniformity validation"""
        with pytest.raises(InvalidParameterError, match="at least 2"):
            Hypergraph(n=5, k=1)
        with pytest.raises(InvalidParameterError, match="exceeds"):
            Hypergraph(n=2, k=3)

    def test_invalid_edge(self):
        """Test edge validation"""
        with pytest.raises(InvalidParameterError, match="distinct vertices"):
            Hypergraph.from_edges(5, 3, [(1, 1, 2)])
        with pytest.raises(InvalidParameterError, match="outside"):
            Hypergraph.from_edges(5, 3, [(1, 2, 6)])

    def test_canonical_edge(self):
        """Test canonical_edge helper"""
        assert canonical_edge([4, 1, 3]) == (1, 3, 4)


class TestHypergraphService:
    """Test HypergraphService"""

    def setup_method(self):
        """Setup test fixtures"""
        self.service = HypergraphService()

    def test_generate_extremes(self):
        """Test p = 0 and p = 1"""
        assert self.service.generate_hnpk(8, 3, 0.0, 1).m == 0
        assert self.service.generate_hnpk(8, 3, 1.0, 1).m == 56

    def test_generate_deterministic(self):
        """Test identical seeds give identical hypergraphs"""
        first = self.service.generate_hnpk(10, 3, 0.4, 5)
        second = self.service.generate_hnpk(10, 3, 0.4, 5)
        assert first == second
        assert first != self.service.generate_hnpk(10, 3, 0.4, 6)

    def test_generate_nested_by_rank(self):
        """Test edge presence depends only on (seed, rank), so H(n) is H(n + 1) restricted to [n]"""
        small = self.service.generate_hnpk(9, 3, 0.5, 2)
        large = self.service.generate_hnpk(10, 3, 0.5, 2)
        assert set(small.edges) == {edge for edge in large.edges if edge[-1] <= 9}
        assert large.m > small.m

    def test_generate_density(self):
        """Test the edge count is close to p C(n, k)"""
        hypergraph = self.service.generate_hnpk(20, 3, 0.5, 11)
        assert abs(hypergraph.m - 570) < 4 * (1140 * 0.25) ** 0.5

    def test_generate_invalid(self):
        """Test generation parameter validation"""
        with pytest.raises(InvalidParameterError):
            self.service.generate_hnpk(5, 6, 0.5, 0)
        with pytest.raises(InvalidParameterError, match="Probability"):
            self.service.generate_hnpk(5, 3, 1.5, 0)

    def test_neighborhood_query(self):
        """Test degree and neighbourhood in the complete hypergraph"""
        hypergraph = complete(5, 3)
        degree, neighborhood = self.service.neighborhood_query(hypergraph, [1])
        assert degree == 6
        degree, neighborhood = self.service.neighborhood_query(hypergraph, [2, 1])
        assert degree == 3
        assert neighborhood == [(3,), (4,), (5,)]

    def test_neighborhood_query_invalid(self):
        """Test illegal query sets"""
        hypergraph = complete(5, 3)
        with pytest.raises(InvalidQueryError):
            self.service.neighborhood_query(hypergraph, [])
        with pytest.raises(InvalidQueryError):
            self.service.neighborhood_query(hypergraph, [1, 2, 3])
        with pytest.raises(InvalidQueryError):
            self.service.neighborhood_query(hypergraph, [1, 1])
        with pytest.raises(InvalidQueryError):
            self.service.neighborhood_query(hypergraph, [6])

    def test_parse(self):
        """Test parsing with comments and blank lines"""
        text = "# loose cycle\n3 6\n\n1 2 5\n4 3 1\n2 3 6\n"
        hypergraph = self.service.parse_hypergraph(text)
        assert (hypergraph.n, hypergraph.k) == (6, 3)
        assert hypergraph.edges == ((1, 2, 5), (1, 3, 4), (2, 3, 6))

    def test_parse_stream(self):
        """Test parsing from a text stream"""
        hypergraph = self.service.parse_hypergraph(io.StringIO("2 3\n1 2\n"))
        assert hypergraph.edges == ((1, 2),)

    def test_parse_duplicate(self):
        """Test duplicate edges are reported with the line number"""
        with pytest.raises(DuplicateEdgeError, match="line 3"):
            self.service.parse_hypergraph("3 6\n1 2 5\n1 2 5\n")

    def test_parse_not_ascending(self):
        """Test edge lines must list vertices in ascending order"""
        with pytest.raises(HypergraphFormatError, match="line 3: .*not ascending"):
            self.service.parse_hypergraph("3 6\n1 2 5\n5 2 1\n")

    def test_parse_arity(self):
        """Test wrong edge size"""
        with pytest.raises(ArityError, match="line 2"):
            self.service.parse_hypergraph("3 6\n1 2\n")

    def test_parse_range(self):
        """Test vertex outside 1..n"""
        with pytest.raises(VertexRangeError, match="line 2"):
            self.service.parse_hypergraph("3 6\n1 2 7\n")

    def test_parse_bad_header(self):
        """Test missing or malformed header"""
        with pytest.raises(HypergraphFormatError, match="header"):
            self.service.parse_hypergraph("")
        with pytest.raises(HypergraphFormatError, match="header"):
            self.service.parse_hypergraph("3\n")
        with pytest.raises(HypergraphFormatError, match="non-integer"):
            self.service.parse_hypergraph("3 x\n")

    def test_write_is_canonical(self):
        """Test the written form is header plus sorted edges"""
        hypergraph = self.service.parse_hypergraph("3 6\n2 3 6\n1 2 5\n")
        assert self.service.write_hypergraph(hypergraph) == "3 6\n1 2 5\n2 3 6\n"
        assert self.service.parse_hypergraph(self.service.write_hypergraph(hypergraph)) == hypergraph

    def test_save_and_load(self, tmp_path):
        """Test file round trip"""
        hypergraph = self.service.generate_hnpk(8, 3, 0.5, 3)
        path = tmp_path / "h.txt"
        self.service.save(hypergraph, path)
        assert self.service.load(path) == hypergraph

    def test_load_missing(self, tmp_path):
        """Test missing file"""
        with pytest.raises(HypergraphFormatError, match="not found"):
            self.service.load(tmp_path / "missing.txt")
