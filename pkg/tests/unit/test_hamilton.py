"""
Unit tests for the Hamilton cycle packer
"""

import networkx as nx
import pytest

from src.exceptions import ConfigurationError, InvalidParameterError
from src.models.config import HamiltonConfig
from src.services.hamilton_service import HamiltonService


class TestHamiltonService:
    """Test HamiltonService"""

    def setup_method(self):
        """Setup test fixtures"""
        self.service = HamiltonService()

    def test_complete_five(self):
        """Test K_5 decomposes into two Hamilton cycles"""
        graph = nx.complete_graph(range(1, 6))
        pack = self.service.pack_graph_hamilton(graph, seed=1)
        assert pack.count == 2
        for cycle in pack.cycles:
            assert HamiltonService.is_hamiltonian_cycle(graph, cycle)

    def test_cycle_graph(self):
        """Test C_7 holds exactly one Hamilton cycle"""
        graph = nx.cycle_graph(range(1, 8))
        pack = self.service.pack_graph_hamilton(graph, seed=3)
        assert pack.count == 1

    def test_complete_four(self):
        """Test K_4 leaves a perfect matching after one cycle"""
        pack = self.service.pack_graph_hamilton(nx.complete_graph(range(1, 5)), target_hint=0.5)
        assert pack.count == 1
        assert pack.target_hint == 0.5

    def test_low_degree(self):
        """Test a path has no Hamilton cycle"""
        pack = self.service.pack_graph_hamilton(nx.path_graph(range(1, 6)))
        assert pack.count == 0
        assert pack.attempts == 0

    def test_non_hamiltonian(self):
        """Test the Petersen graph yields nothing and stops on the failure budget"""
        service = HamiltonService(HamiltonConfig(restart_budget=5, stop_after_failures=1))
        pack = service.pack_graph_hamilton(nx.petersen_graph(), seed=2)
        assert pack.count == 0
        assert pack.attempts == 5

    def test_random_graph_cycles_are_disjoint(self):
        """Test cycles on a dense random graph are valid and edge-disjoint"""
        graph = nx.gnp_random_graph(30, 0.5, seed=4)
        pack = self.service.pack_graph_hamilton(graph, seed=4)
        assert pack.count >= 1
        used = set()
        for cycle in pack.cycles:
            assert HamiltonService.is_hamiltonian_cycle(graph, cycle)
            for u, v in zip(cycle, cycle[1:] + cycle[:1]):
                edge = frozenset((u, v))
                assert edge not in used
                used.add(edge)

    def test_deterministic(self):
        """Test equal seeds give equal packs"""
        graph = nx.gnp_random_graph(20, 0.6, seed=8)
        first = self.service.pack_graph_hamilton(graph, seed=5, instance_id=2)
        second = self.service.pack_graph_hamilton(graph, seed=5, instance_id=2)
        assert first == second

    def test_too_small(self):
        """Test graphs below three vertices are rejected"""
        with pytest.raises(InvalidParameterError, match="at least 3"):
            self.service.pack_graph_hamilton(nx.complete_graph(2))

    def test_is_hamiltonian_cycle(self):
        """Test the cycle checker"""
        graph = nx.cycle_graph(range(1, 5))
        assert HamiltonService.is_hamiltonian_cycle(graph, [1, 2, 3, 4])
        assert not HamiltonService.is_hamiltonian_cycle(graph, [1, 3, 2, 4])
        assert not HamiltonService.is_hamiltonian_cycle(graph, [1, 2, 3])


class TestHamiltonConfig:
    """Test HamiltonConfig model"""

    def test_defaults(self):
        """Test default budgets"""
        config = HamiltonConfig()
        assert (config.restart_budget, config.rotation_factor, config.stop_after_failures) == (50, 10, 3)

    def test_invalid(self):
        """Test budget validation"""
        with pytest.raises(ConfigurationError, match="Restart budget"):
            HamiltonConfig(restart_budget=0)
