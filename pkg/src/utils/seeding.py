"""
Derived random substreams

Every random draw in the package comes from a generator keyed by the master
seed plus a stream tag and a tuple of integer keys. Results therefore do not
depend on evaluation order or on the number of workers.
"""

from enum import IntEnum

import numpy as np

from ..exceptions import InvalidParameterError


class StreamTag(IntEnum):
    """Stream tags"""
    HYPERGRAPH = 1
    SCHEME = 2
    LABEL = 3
    AUDIT = 4
    HAMILTON = 5
    REGULARITY = 6
    SAMPLE = 7


def derive_rng(seed: int, tag: StreamTag, *keys: int) -> np.random.Generator:
    """Return the generator for (seed, tag, *keys)."""
    if seed < 0:
        raise InvalidParameterError(f"Seed must be non-negative, got {seed}")
    spawn_key = (int(tag),) + tuple(int(key) for key in keys)
    return np.random.default_rng(np.random.SeedSequence(entropy=seed, spawn_key=spawn_key))


def rank_uniform(seed: int, tag: StreamTag, rank: int) -> float:
    """Uniform in [0, 1) owned by a single rank; 53 bits of one derived word."""
    if seed < 0:
        raise InvalidParameterError(f"Seed must be non-negative, got {seed}")
    sequence = np.random.SeedSequence(entropy=seed, spawn_key=(int(tag), int(rank)))
    word = int(sequence.generate_state(1, dtype=np.uint64)[0])
    return (word >> 11) * 2.0 ** -53


def random_subset(rng: np.random.Generator, pool, size: int) -> tuple:
    """Uniform subset of `pool` with `size` elements, returned ascending."""
    chosen = rng.choice(len(pool), size=size, replace=False)
    return tuple(sorted(int(pool[i]) for i in chosen))
