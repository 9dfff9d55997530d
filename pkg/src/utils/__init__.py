"""
Utilities for hypergraph packing
"""

from .logger import setup_logging, get_logger
from .seeding import StreamTag, derive_rng, random_subset, rank_uniform
from .combinatorics import colex_rank, colex_unrank

__all__ = [
    'setup_logging',
    'get_logger',
    'StreamTag',
    'derive_rng',
    'random_subset',
    'rank_uniform',
    'colex_rank',
    'colex_unrank',
]
