"""
Unit tests for utilities
"""

import json
from itertools import combinations
from math import comb

import numpy as np
import pytest
import structlog

from src.exceptions import InvalidParameterError
from src.utils import (
    StreamTag,
    colex_rank,
    colex_unrank,
    derive_rng,
    get_logger,
    random_subset,
    rank_uniform,
    setup_logging,
)
from src.utils.logger import bind_run_context, clear_run_context, stage_context


class TestColexRanking:
    """Test colex ranking of k-sets"""

    def test_first_ranks(self):
        """Test the first ranks of 3-sets"""
        assert colex_rank((1, 2, 3)) == 0
        assert colex_rank((1, 2, 4)) == 1
        assert colex_rank((1, 3, 4)) == 2
        assert colex_rank((2, 3, 4)) == 3
        assert colex_rank((1, 2, 5)) == 4

    def test_ranks_are_a_bijection(self):
        """Test ranks of all 3-subsets of [7] cover 0..C(7,3)-1"""
        ranks = sorted(colex_rank(c) for c in combinations(range(1, 8), 3))
        assert ranks == list(range(comb(7, 3)))

    def test_unrank_inverts_rank(self):
        """Test unrank is the inverse of rank"""
        for subset in combinations(range(1, 9), 4):
            assert colex_unrank(colex_rank(subset), 4) == subset

    def test_unrank_large_ranks(self):
        """Test unranking far into C(n, k)"""
        for subset in [(3, 50, 900, 12345), (1, 2, 3, 10 ** 6), (999, 1000, 1001, 1002)]:
            assert colex_unrank(colex_rank(subset), 4) == subset
        assert colex_unrank(comb(200, 3) - 1, 3) == (198, 199, 200)


class TestSeeding:
    """Test derived random substreams"""

    def test_same_keys_same_stream(self):
        """Test identical (seed, tag, keys) reproduce the stream"""
        first = derive_rng(7, StreamTag.SCHEME, 3).random(5)
        second = derive_rng(7, StreamTag.SCHEME, 3).random(5)
        assert np.array_equal(first, second)

    def test_different_keys_differ(self):
        """Test different keys or tags give different streams"""
        base = derive_rng(7, StreamTag.SCHEME, 3).random(5)
        assert not np.array_equal(base, derive_rng(7, StreamTag.SCHEME, 4).random(5))
        assert not np.array_equal(base, derive_rng(7, StreamTag.LABEL, 3).random(5))
        assert not np.array_equal(base, derive_rng(8, StreamTag.SCHEME, 3).random(5))

    def test_negative_seed(self):
        """Test negative seeds are rejected"""
        with pytest.raises(InvalidParameterError, match="non-negative"):
            derive_rng(-1, StreamTag.AUDIT)

    def test_rank_uniform(self):
        """Test per-rank uniforms are reproducible, distinct and in [0, 1)"""
        draws = [rank_uniform(3, StreamTag.HYPERGRAPH, rank) for rank in range(200)]
        assert draws == [rank_uniform(3, StreamTag.HYPERGRAPH, rank) for rank in range(200)]
        assert all(0.0 <= u < 1.0 for u in draws)
        assert len(set(draws)) == 200
        assert abs(sum(draws) / 200 - 0.5) < 0.1
        assert rank_uniform(4, StreamTag.HYPERGRAPH, 0) != draws[0]
        with pytest.raises(InvalidParameterError):
            rank_uniform(-1, StreamTag.HYPERGRAPH, 0)

    def test_random_subset(self):
        """Test random subsets are ascending and drawn from the pool"""
        rng = derive_rng(0, StreamTag.SAMPLE)
        subset = random_subset(rng, np.arange(1, 11), 4)
        assert len(subset) == 4
        assert list(subset) == sorted(set(subset))
        assert all(1 <= v <= 10 for v in subset)
        assert all(isinstance(v, int) for v in subset)


class TestLogger:
    """Test logger utilities"""

    def test_setup_logging_json(self):
        """Test JSON logging setup"""
        setup_logging(level="DEBUG", format_type="json")
        assert structlog.is_configured()

    def test_setup_logging_console(self):
        """Test console logging setup"""
        setup_logging(level="INFO", format_type="console")
        assert structlog.is_configured()

    def test_get_logger(self):
        """Test logger creation"""
        logger = get_logger("hyperpack.test")
        assert logger is not None

    def test_run_context(self):
        """Test run fields are bound and cleared"""
        clear_run_context()
        bind_run_context(n=12, k=3, ell=2)
        assert structlog.contextvars.get_contextvars() == {"n": 12, "k": 3, "ell": 2}
        clear_run_context()
        assert structlog.contextvars.get_contextvars() == {}

    def test_run_context_rejects_unknown_fields(self):
        """Test only run parameters can be bound"""
        with pytest.raises(ValueError, match="instance"):
            bind_run_context(instance=3)

    def test_stage_context(self):
        """Test the stage is bound only inside the block"""
        clear_run_context()
        with stage_context("label"):
            assert structlog.contextvars.get_contextvars()["stage"] == "label"
        assert "stage" not in structlog.contextvars.get_contextvars()

    def test_stage_appears_in_records(self, capsys):
        """Test JSON records carry run and stage context"""
        setup_logging(level="INFO", format_type="json")
        clear_run_context()
        bind_run_context(mode="matching")
        with stage_context("pack"):
            get_logger("hyperpack.test").info("Instance harvested", items=np.int64(2))
        clear_run_context()
        record = json.loads(capsys.readouterr().err.strip().splitlines()[-1])
        assert record["stage"] == "pack"
        assert record["mode"] == "matching"
        assert record["items"] == 2
