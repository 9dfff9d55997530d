"""
Statistical acceptance checks
"""

from itertools import combinations
from math import comb, floor, sqrt

import networkx as nx
import numpy as np
import pytest

from src.models.config import GenerateSource, RunConfig
from src.models.auxgraph import BipartiteGraph
from src.models.cycles import PackingKind
from src.models.hypergraph import Hypergraph
from src.models.partitions import SchemeMode
from src.packing_service import PackingService
from src.services.audit_service import AuditService
from src.services.cycle_service import CycleService
from src.services.hamilton_service import HamiltonService
from src.services.hypergraph_service import HypergraphService
from src.services.matching_service import MatchingService
from src.services.partition_service import PartitionService


def inclusion_frequency(n, k, ell, edge, samples, seed):
    service = PartitionService()
    hits = 0
    for instance_id in range(1, samples + 1):
        scheme = service.sample_scheme(n, k, ell, None, seed=seed, instance_id=instance_id)
        hits += len(service.edge_inclusions(scheme, edge))
    return hits / samples


def assert_valid_run(n, k, ell, p, r, seed):
    config = RunConfig(ell=ell, generate=GenerateSource(n=n, k=k, p=p, seed=seed), r=r, seed=seed)
    result, report = PackingService().run_packing(config)
    hypergraph = HypergraphService().generate_hnpk(n, k, p, seed)

    assert CycleService().verify_packing(hypergraph, result).ok
    totals = report.totals
    assert totals.edges_used + totals.unlabeled + totals.labeled_unpacked == hypergraph.m
    assert sum(i.harvest for i in report.instances) == totals.items
    assert len(report.instances) == r
    return result


@pytest.mark.integration
@pytest.mark.slow
class TestPackingValidity:
    """Every run yields a valid packing with consistent accounting"""

    @pytest.mark.parametrize("seed", range(1, 21))
    def test_random_loose(self, seed):
        """Test H(24, 0.6, 3) with ell = 2 and r = 500"""
        result = assert_valid_run(24, 3, 2, 0.6, 500, seed)
        assert result.kind is PackingKind.CYCLES

    @pytest.mark.parametrize("seed", range(1, 11))
    def test_random_full_partition(self, seed):
        """Test H(24, 0.6, 4) with ell = 2 and r = 300"""
        result = assert_valid_run(24, 4, 2, 0.6, 300, seed)
        assert result.kind is PackingKind.CYCLES

    @pytest.mark.parametrize("seed", range(1, 11))
    def test_random_matching(self, seed):
        """Test H(24, 0.6, 4) with ell = 4 and r = 300"""
        result = assert_valid_run(24, 4, 4, 0.6, 300, seed)
        assert result.kind is PackingKind.MATCHINGS


@pytest.mark.integration
@pytest.mark.slow
class TestInclusionStatistics:
    """Inclusion frequencies and counts against their closed forms"""

    SAMPLES = 100000

    def test_loose_frequency(self):
        """Test (6, 3, 2) against rho = 0.45"""
        rho = 0.45
        frequency = inclusion_frequency(6, 3, 2, (1, 2, 3), self.SAMPLES, seed=17)
        assert abs(frequency - rho) <= 4 * sqrt(rho * (1 - rho) / self.SAMPLES)

    def test_full_partition_frequency(self):
        """Test (8, 4, 2) against 6/70"""
        rho = 6 / 70
        frequency = inclusion_frequency(8, 4, 2, (1, 2, 3, 4), self.SAMPLES, seed=23)
        assert abs(frequency - rho) <= 4 * sqrt(rho * (1 - rho) / self.SAMPLES)

    def test_vertex_side_symmetry(self):
        """Test each vertex lands in X half the time"""
        service = PartitionService()
        samples = 10000
        in_x = np.zeros(7, dtype=np.int64)
        for instance_id in range(1, samples + 1):
            scheme = service.sample_scheme(6, 3, 2, None, seed=5, instance_id=instance_id)
            for block in scheme.x_blocks:
                in_x[list(block)] += 1
        assert np.all(np.abs(in_x[1:] / samples - 0.5) <= 0.02)


@pytest.fixture(scope="module")
def count_runs():
    """f(E) on the complete 3-graph on 12 vertices: 100 seeds, r = 2000 and its first 1000 instances."""
    service = PartitionService()
    audit = AuditService()
    hypergraph = Hypergraph.from_edges(12, 3, combinations(range(1, 13), 3))
    rho = service.inclusion_probability(12, 3, 2, SchemeMode.BIPARTITION_CYCLE)
    runs = []
    for seed in range(100):
        schemes = [service.sample_scheme(12, 3, 2, None, seed=seed, instance_id=i) for i in range(1, 2001)]
        full = service.label_edges(hypergraph, schemes, seed=seed)
        half = service.label_edges(hypergraph, schemes[:1000], seed=seed)
        runs.append({
            'full': np.asarray(full.all_counts(), dtype=np.float64),
            'half': np.asarray(half.all_counts(), dtype=np.float64),
            'audit': audit.audit_inclusion_counts(full, 2000, rho, 12, 3),
        })
    return rho, runs


@pytest.mark.integration
@pytest.mark.slow
class TestCountDistribution:
    """f(E) moments and the concentration window at r = 2000"""

    def test_count_moments(self, count_runs):
        """Test mean and variance within 5% of r rho and r rho (1 - rho)"""
        rho, runs = count_runs
        r = 2000
        assert all(len(run['full']) == comb(12, 3) for run in runs)
        mean = np.mean([run['full'].mean() for run in runs])
        variance = np.mean([run['full'].var() for run in runs])
        assert mean == pytest.approx(r * rho, rel=0.05)
        assert variance == pytest.approx(r * rho * (1 - rho), rel=0.05)

    def test_window_pass_rate(self, count_runs):
        """Test the concentration window holds on at least 95 of 100 seeds"""
        _, runs = count_runs
        passed = sum(1 for run in runs if run['audit'].passed)
        assert passed >= 95

    def test_error_shrinks_when_r_doubles(self, count_runs):
        """Test the deviation of f(E) / r from rho drops from r = 1000 to r = 2000"""
        rho, runs = count_runs
        half = np.mean([np.abs(run['half'] / 1000 - rho).mean() for run in runs])
        full = np.mean([np.abs(run['full'] / 2000 - rho).mean() for run in runs])
        assert full < half
        assert full / half == pytest.approx(1 / sqrt(2), rel=0.15)


@pytest.mark.integration
@pytest.mark.slow
class TestMatchingBound:
    """Disjoint perfect matchings against the degree and co-degree premises"""

    def test_dense_random_bipartite(self):
        """Test 20 graphs with N = 200 and density 0.5"""
        size, d = 200, 0.5
        audit = AuditService()
        matching = MatchingService()
        for seed in range(20):
            rng = np.random.default_rng(seed)
            mask = rng.random((size, size)) < d
            graph = BipartiteGraph.from_pairs(size, [(a + 1, b + 1) for a, b in zip(*np.nonzero(mask))])

            premises = audit.audit_bipartite_premises(graph, d=d, theta=0.5)
            theta = AuditService.measured_theta(premises)
            assert theta is not None and theta < 1

            pack = matching.pack_perfect_matchings(graph)
            assert pack.t >= floor((1 - theta ** (1 / 3)) * d * size)


@pytest.mark.integration
@pytest.mark.slow
class TestDenseRandomGraphs:
    """Regularity and Hamilton packing on G(200, 0.5)"""

    @pytest.mark.parametrize("seed", [0, 1])
    def test_regularity(self, seed):
        """Test G(200, 0.5) is (0.5, 0.15)-regular"""
        graph = nx.gnp_random_graph(200, 0.5, seed=seed)
        q_a, q_b = AuditService().audit_regularity(graph, alpha=0.5, eps=0.15, budget=1000, seed=seed)
        assert q_a.passed
        assert q_b.passed

    def test_hamilton_floor(self):
        """Test the heuristic reaches half the minimum degree over two on at least 90 of 100 seeds"""
        service = HamiltonService()
        reached = 0
        for seed in range(100):
            graph = nx.gnp_random_graph(200, 0.5, seed=seed)
            min_degree = min(degree for _, degree in graph.degree())
            pack = service.pack_graph_hamilton(graph, seed=seed)

            for cycle in pack.cycles:
                assert HamiltonService.is_hamiltonian_cycle(graph, cycle)
            used = [frozenset(edge) for cycle in pack.cycles for edge in zip(cycle, cycle[1:] + cycle[:1])]
            assert len(used) == len(set(used))
            if pack.count >= floor(0.5 * min_degree / 2):
                reached += 1
        assert reached >= 90
