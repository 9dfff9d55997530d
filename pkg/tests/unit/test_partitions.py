"""
Unit tests for partition instances, labeling and parameters
"""

from itertools import combinations
from math import comb, isclose

import pytest

from src.exceptions import (
    DivisibilityError,
    InvalidParameterError,
    InvariantViolationError,
    UnsupportedCaseError,
)
from src.models.hypergraph import Hypergraph
from src.models.partitions import (
    LabeledEdgeSet,
    ParameterOverrides,
    PartitionScheme,
    Regime,
    SchemeMode,
    SchemeParameters,
    block_sizes,
)
from src.services.instance_pool import InstancePool
from src.services.partition_service import PartitionService, derive_mode


def complete(n, k):
    return Hypergraph.from_edges(n, k, combinations(range(1, n + 1), k))


def expected_mode(k, ell):
    if ell == k:
        return SchemeMode.MATCHING
    if 2 * ell == k:
        return SchemeMode.FULL_PARTITION
    if k < 2 * ell < 2 * k:
        return SchemeMode.BIPARTITION_CYCLE
    return None


class TestModeDispatch:
    """Test (k, ell) mode dispatch"""

    def test_examples(self):
        """Test the named cases"""
        assert derive_mode(3, 2) is SchemeMode.BIPARTITION_CYCLE
        assert derive_mode(5, 3) is SchemeMode.BIPARTITION_CYCLE
        assert derive_mode(4, 2) is SchemeMode.FULL_PARTITION
        assert derive_mode(4, 4) is SchemeMode.MATCHING

    def test_exhaustive(self):
        """Test every (k, ell) with k <= 8"""
        for k in range(2, 9):
            for ell in range(1, k + 2):
                expected = expected_mode(k, ell)
                if expected is None:
                    with pytest.raises(UnsupportedCaseError):
                        derive_mode(k, ell)
                else:
                    assert derive_mode(k, ell) is expected

    def test_block_sizes(self):
        """Test block sizes per mode"""
        assert block_sizes(3, 2, SchemeMode.BIPARTITION_CYCLE) == (1, 1)
        assert block_sizes(7, 5, SchemeMode.BIPARTITION_CYCLE) == (2, 3)
        assert block_sizes(4, 2, SchemeMode.FULL_PARTITION) == (2, 0)
        assert block_sizes(5, 5, SchemeMode.MATCHING) == (2, 3)


class TestPartitionScheme:
    """Test PartitionScheme model"""

    def test_valid(self):
        """Test a hand-built bipartition scheme"""
        scheme = PartitionScheme(
            instance_id=1, n=6, k=3, ell=2, mode=SchemeMode.BIPARTITION_CYCLE,
            x_blocks=((2,), (1,), (3,)), y_blocks=((5,), (4,), (6,)),
        )
        assert scheme.nu == 3
        assert scheme.locate(1) == ("X", 2)
        assert scheme.locate(6) == ("Y", 3)
        assert scheme.candidate_edge((3, 3)) == (2, 3, 6)
        assert len(list(scheme.candidates())) == 9

    def test_not_a_partition(self):
        """Test repeated vertices are rejected"""
        with pytest.raises(InvalidParameterError, match="two blocks"):
            PartitionScheme(
                instance_id=1, n=6, k=3, ell=2, mode=SchemeMode.BIPARTITION_CYCLE,
                x_blocks=((1,), (1,), (3,)), y_blocks=((5,), (4,), (6,)),
            )

    def test_wrong_block_size(self):
        """Test block size validation"""
        with pytest.raises(InvalidParameterError, match="X-blocks"):
            PartitionScheme(
                instance_id=1, n=6, k=3, ell=2, mode=SchemeMode.BIPARTITION_CYCLE,
                x_blocks=((1, 2), (3,), (4,)), y_blocks=((5,), (6,), ()),
            )

    def test_full_partition_candidates(self):
        """Test the full-partition mode yields unordered part pairs"""
        scheme = PartitionScheme(
            instance_id=2, n=8, k=4, ell=2, mode=SchemeMode.FULL_PARTITION,
            x_blocks=((1, 2), (3, 4), (5, 6), (7, 8)),
        )
        witnesses = [w for _, w in scheme.candidates()]
        assert witnesses == [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]
        assert scheme.to_dict()['y_blocks'] == []


class TestPartitionService:
    """Test PartitionService"""

    def setup_method(self):
        """Setup test fixtures"""
        self.service = PartitionService()

    def test_sample_scheme_is_partition(self):
        """Test sampled schemes partition [n] with the mode's block sizes"""
        scheme = self.service.sample_scheme(12, 3, 2, None, seed=4, instance_id=1)
        assert scheme.mode is SchemeMode.BIPARTITION_CYCLE
        vertices = sorted(v for block in scheme.x_blocks + scheme.y_blocks for v in block)
        assert vertices == list(range(1, 13))
        assert len(scheme.x_blocks) == len(scheme.y_blocks) == 6

    def test_sample_scheme_deterministic(self):
        """Test (seed, instance id) fixes the scheme"""
        first = self.service.sample_scheme(12, 4, 2, None, seed=9, instance_id=3)
        assert first == self.service.sample_scheme(12, 4, 2, None, seed=9, instance_id=3)
        assert first != self.service.sample_scheme(12, 4, 2, None, seed=9, instance_id=4)

    def test_sample_scheme_errors(self):
        """Test divisibility, mode consistency and block count"""
        with pytest.raises(DivisibilityError):
            self.service.sample_scheme(7, 3, 2, None, seed=0, instance_id=1)
        with pytest.raises(UnsupportedCaseError, match="inconsistent"):
            self.service.sample_scheme(12, 3, 2, SchemeMode.MATCHING, seed=0, instance_id=1)
        with pytest.raises(UnsupportedCaseError, match="at least 3 blocks"):
            self.service.sample_scheme(4, 3, 2, None, seed=0, instance_id=1)

    def test_edge_inclusions_match_candidates(self):
        """Test per-edge detection agrees with candidate enumeration"""
        hypergraph = complete(8, 3)
        scheme = self.service.sample_scheme(8, 3, 2, None, seed=1, instance_id=1)
        found = {(rank, witness) for rank, witness, _ in self.service.scheme_inclusions(hypergraph, scheme)}
        direct = set()
        for edge in hypergraph.edges:
            for witness in self.service.edge_inclusions(scheme, edge):
                direct.add((hypergraph.rank_of(edge), witness))
        assert found == direct
        assert len(found) == 16

    def test_edge_inclusions_none(self):
        """Test an edge spread over three X-blocks is not included"""
        scheme = PartitionScheme(
            instance_id=1, n=6, k=3, ell=2, mode=SchemeMode.BIPARTITION_CYCLE,
            x_blocks=((2,), (1,), (3,)), y_blocks=((5,), (4,), (6,)),
        )
        assert self.service.edge_inclusions(scheme, (1, 2, 3)) == []
        assert self.service.edge_inclusions(scheme, (2, 5, 1)) == [(1, 1)]

    def test_label_edges(self):
        """Test labels point at including instances and counts add up"""
        hypergraph = complete(8, 3)
        schemes = [self.service.sample_scheme(8, 3, 2, None, seed=2, instance_id=i) for i in range(1, 6)]
        labels = self.service.label_edges(hypergraph, schemes, seed=2)
        assert sum(labels.counts.values()) == 5 * 16
        by_id = {s.instance_id: s for s in schemes}
        for rank, label in labels.labels.items():
            scheme = by_id[label.instance_id]
            assert scheme.candidate_edge(label.witness) == label.edge
            assert hypergraph.rank_of(label.edge) == rank
        assert labels.labeled_count + labels.unlabeled_count == hypergraph.m
        assert sum(len(labels.fiber(i)) for i in by_id) == labels.labeled_count

    def test_label_edges_pool_invariant(self):
        """Test labeling does not depend on the worker count"""
        hypergraph = complete(8, 3)
        schemes = [self.service.sample_scheme(8, 3, 2, None, seed=5, instance_id=i) for i in range(1, 9)]
        sequential = self.service.label_edges(hypergraph, schemes, seed=5)
        pooled = PartitionService(pool=InstancePool(4)).label_edges(hypergraph, schemes, seed=5)
        assert sequential.labels == pooled.labels
        assert sequential.counts == pooled.counts

    def test_label_edges_duplicate_ids(self):
        """Test duplicate instance ids are rejected"""
        scheme = self.service.sample_scheme(8, 3, 2, None, seed=0, instance_id=1)
        with pytest.raises(InvariantViolationError, match="distinct"):
            self.service.label_edges(complete(8, 3), [scheme, scheme], seed=0)

    def test_inclusion_probability(self):
        """Test rho in the closed forms"""
        assert isclose(self.service.inclusion_probability(6, 3, 2, SchemeMode.BIPARTITION_CYCLE), 0.45)
        assert isclose(self.service.inclusion_probability(8, 4, 2, SchemeMode.FULL_PARTITION), 6 / 70)
        assert isclose(self.service.inclusion_probability(8, 4, 4, SchemeMode.MATCHING), 4 / 70)

    def test_scheme_parameters_random(self):
        """Test the random-regime formulas for the loose case"""
        params = self.service.scheme_parameters(24, 3, 2, 0.6)
        assert params.mode is SchemeMode.BIPARTITION_CYCLE
        assert params.regime is Regime.RANDOM
        assert isclose(params.rho, 144 / comb(24, 3))
        assert isclose(params.r, 24 * (24 * 0.6) ** 0.5)
        assert params.p0 == pytest.approx(0.6 / params.f0)
        assert params.n0 == pytest.approx((1 - params.eps) * 12 * params.p0)

    def test_scheme_parameters_overrides(self):
        """Test pinned values replace the formulas"""
        params = self.service.scheme_parameters(
            24, 3, 2, 0.6, overrides=ParameterOverrides(r=500, eps=0.2, f0=30.0),
        )
        assert params.r == 500
        assert params.eps == 0.2
        assert params.f0 == 30.0
        assert params.p0 == pytest.approx(0.02)

    def test_scheme_parameters_pseudo_random(self):
        """Test the pseudo-random regime defaults eps to 0.1"""
        params = self.service.scheme_parameters(24, 4, 2, 0.6, regime=Regime.PSEUDO_RANDOM)
        assert params.mode is SchemeMode.FULL_PARTITION
        assert params.eps == 0.1
        assert params.r == pytest.approx(1.9 * comb(24, 4) * params.f0 / 144)

    def test_scheme_parameters_degenerate(self):
        """Test p = 0 yields diagnostics and None values instead of errors"""
        params = self.service.scheme_parameters(12, 3, 2, 0.0)
        assert params.r is None or params.r == 0
        assert params.p0 is None
        assert params.diagnostics

    def test_scheme_parameters_divisibility(self):
        """Test ell must divide n"""
        with pytest.raises(UnsupportedCaseError, match="does not divide"):
            self.service.scheme_parameters(7, 3, 2, 0.5)


class TestParameterModels:
    """Test parameter models"""

    def test_non_finite_become_none(self):
        """Test inf and nan are stored as None"""
        params = SchemeParameters(
            n=6, k=3, ell=2, p=0.0, mode=SchemeMode.BIPARTITION_CYCLE, regime=Regime.RANDOM,
            rho=0.45, r=0.0, eps=float('inf'), f0=0.0, p0=float('nan'), n0=None,
        )
        assert params.eps is None
        assert params.p0 is None
        assert SchemeParameters.from_dict(params.to_dict()) == params

    def test_override_validation(self):
        """Test override ranges"""
        with pytest.raises(InvalidParameterError):
            ParameterOverrides(r=-1)
        with pytest.raises(InvalidParameterError):
            ParameterOverrides(eps=0)
        with pytest.raises(InvalidParameterError):
            ParameterOverrides(f0=-2.0)

    def test_labeled_edge_set_counts(self):
        """Test zero counts are padded for unlabeled edges"""
        labels = LabeledEdgeSet(edge_count=4, counts={0: 2}, labels={})
        assert sorted(labels.all_counts()) == [0, 0, 0, 2]
        assert labels.f(0) == 2
        assert labels.f(3) == 0
        assert labels.unlabeled_count == 4
