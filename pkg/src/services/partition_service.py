"""
Partition service: instance sampling, inclusion detection, labeling and the
parameter formulas
"""

import math
from math import comb, factorial, log, sqrt
from typing import Dict, List, Optional, Sequence, Tuple

import structlog

from ..exceptions import DivisibilityError, InvariantViolationError, UnsupportedCaseError
from ..models.hypergraph import Edge, Hypergraph
from ..models.partitions import (
    EdgeLabel,
    LabeledEdgeSet,
    ParameterOverrides,
    PartitionScheme,
    Regime,
    SchemeMode,
    SchemeParameters,
    Witness,
    block_sizes,
    derive_mode,
)
from ..utils.seeding import StreamTag, derive_rng

Inclusion = Tuple[int, Witness, Edge]


def _ratio(numerator: float, denominator: float) -> float:
    if denominator == 0:
        return math.inf if numerator > 0 else math.nan
    return numerator / denominator


class PartitionService:
    """Service for partition instances and edge labels"""

    def __init__(self, pool=None):
        self.logger = structlog.get_logger()
        self.pool = pool

    def _check_mode(self, k: int, ell: int, mode: Optional[SchemeMode]) -> SchemeMode:
        derived = derive_mode(k, ell)
        if mode is not None and mode is not derived:
            raise UnsupportedCaseError(
                f"Mode {mode.value} is inconsistent with (k, ell) = ({k}, {ell}); expected {derived.value}"
            )
        return derived

    def sample_scheme(self, n: int, k: int, ell: int, mode: Optional[SchemeMode],
                      seed: int, instance_id: int) -> PartitionScheme:
        """Uniform random partition of [n] into the block structure of the mode."""
        if n % ell:
            raise DivisibilityError(f"ell={ell} does not divide n={n}")
        mode = self._check_mode(k, ell, mode)
        x_size, y_size = block_sizes(k, ell, mode)
        blocks = n // k if mode is SchemeMode.MATCHING else n // ell
        if mode is SchemeMode.MATCHING and n % k:
            raise DivisibilityError(f"k={k} does not divide n={n}")
        if mode is not SchemeMode.MATCHING and blocks < 3:
            raise UnsupportedCaseError(f"Cycle modes need at least 3 blocks, got n/ell = {blocks}")

        rng = derive_rng(seed, StreamTag.SCHEME, instance_id)
        permutation = [int(v) + 1 for v in rng.permutation(n)]
        x_total = blocks * x_size
        x_part, y_part = permutation[:x_total], permutation[x_total:]
        x_blocks = tuple(tuple(x_part[i:i + x_size]) for i in range(0, x_total, x_size))
        y_blocks = tuple(tuple(y_part[i:i + y_size]) for i in range(0, len(y_part), y_size)) if y_size else ()
        return PartitionScheme(
            instance_id=instance_id, n=n, k=k, ell=ell, mode=mode,
            x_blocks=x_blocks, y_blocks=y_blocks,
        )

    def edge_inclusions(self, scheme: PartitionScheme, edge: Sequence[int]) -> List[Witness]:
        """Witnesses at which the scheme includes the edge; at most one exists."""
        if len(edge) != scheme.k:
            return []
        sides: Dict[str, Dict[int, int]] = {"X": {}, "Y": {}}
        for vertex in edge:
            side, index = scheme.locate(vertex)
            sides[side][index] = sides[side].get(index, 0) + 1

        x_size, y_size = block_sizes(scheme.k, scheme.ell, scheme.mode)
        x_hits, y_hits = sides["X"], sides["Y"]
        if any(count != x_size for count in x_hits.values()):
            return []
        if any(count != y_size for count in y_hits.values()):
            return []

        if scheme.mode is SchemeMode.MATCHING:
            if len(x_hits) == 1 and len(y_hits) == 1:
                return [(next(iter(x_hits)), next(iter(y_hits)))]
            return []

        if scheme.mode is SchemeMode.FULL_PARTITION:
            if len(x_hits) == 2:
                u, v = sorted(x_hits)
                return [(u, v)]
            return []

        if len(x_hits) != 2 or len(y_hits) != 1:
            return []
        u, v = sorted(x_hits)
        b = next(iter(y_hits))
        witnesses = [(a, b) for a, successor in ((u, v), (v, u)) if a % scheme.nu + 1 == successor]
        if len(witnesses) > 1:
            raise InvariantViolationError(f"Edge {tuple(edge)} has {len(witnesses)} witnesses")
        return witnesses

    def scheme_inclusions(self, hypergraph: Hypergraph, scheme: PartitionScheme) -> List[Inclusion]:
        """(rank, witness, edge) for every hyperedge the scheme includes."""
        found = []
        for edge, witness in scheme.candidates():
            if hypergraph.contains(edge):
                found.append((hypergraph.rank_of(edge), witness, edge))
        return found

    def label_edges(self, hypergraph: Hypergraph, schemes: Sequence[PartitionScheme],
                    seed: int) -> LabeledEdgeSet:
        """Count inclusions per edge, then label each included edge with a uniform including instance."""
        shapes = {(s.n, s.k, s.ell, s.mode) for s in schemes}
        if len(shapes) > 1:
            raise UnsupportedCaseError("All schemes must share (n, k, ell, mode)")
        ids = [s.instance_id for s in schemes]
        if len(set(ids)) != len(ids):
            raise InvariantViolationError("Instance ids must be distinct")

        if self.pool is not None:
            per_scheme = self.pool.map(lambda s: self.scheme_inclusions(hypergraph, s), schemes)
        else:
            per_scheme = [self.scheme_inclusions(hypergraph, s) for s in schemes]

        including: Dict[int, List[Tuple[int, Witness, Edge]]] = {}
        for scheme, found in zip(schemes, per_scheme):
            for rank, witness, edge in found:
                including.setdefault(rank, []).append((scheme.instance_id, witness, edge))

        counts: Dict[int, int] = {}
        labels: Dict[int, EdgeLabel] = {}
        for rank in sorted(including):
            options = sorted(including[rank], key=lambda item: item[0])
            counts[rank] = len(options)
            if len(options) == 1:
                chosen = options[0]
            else:
                rng = derive_rng(seed, StreamTag.LABEL, rank)
                chosen = options[int(rng.integers(len(options)))]
            labels[rank] = EdgeLabel(instance_id=chosen[0], witness=chosen[1], edge=chosen[2])

        labeled = LabeledEdgeSet(edge_count=hypergraph.m, counts=counts, labels=labels)
        self.logger.info("Edges labeled", instances=len(schemes), labeled=labeled.labeled_count,
                         unlabeled=labeled.unlabeled_count)
        return labeled

    def inclusion_probability(self, n: int, k: int, ell: int, mode: SchemeMode) -> float:
        blocks = n // k if mode is SchemeMode.MATCHING else n // ell
        if mode is SchemeMode.FULL_PARTITION:
            return comb(blocks, 2) / comb(n, k)
        return blocks * blocks / comb(n, k)

    def scheme_parameters(self, n: int, k: int, ell: int, p: float,
                          mode: Optional[SchemeMode] = None,
                          overrides: Optional[ParameterOverrides] = None,
                          regime: Regime = Regime.RANDOM) -> SchemeParameters:
        """rho, r, eps, f0, p0 and n0 for the case; pinned values replace the formulas."""
        if n % ell:
            raise UnsupportedCaseError(f"ell={ell} does not divide n={n}")
        mode = self._check_mode(k, ell, mode)
        overrides = overrides or ParameterOverrides()
        diagnostics: List[str] = []

        blocks = n // k if mode is SchemeMode.MATCHING else n // ell
        rho = self.inclusion_probability(n, k, ell, mode)
        if rho > 1:
            diagnostics.append(f"rho={rho} exceeds 1")
        ln_n = log(n)

        if regime is Regime.RANDOM:
            r, eps, f0 = self._random_regime(n, k, ell, p, mode, rho, ln_n, overrides)
        else:
            r, eps, f0 = self._pseudo_random_regime(n, k, p, mode, rho, ln_n, blocks, overrides, diagnostics)

        p0 = _ratio(p, f0)
        n0 = self._target_count(mode, regime, eps, p0, blocks)

        if not math.isfinite(r) or r <= 0:
            diagnostics.append(f"instance count r={r} is not positive and finite")
        if math.isfinite(eps) and eps >= 1:
            diagnostics.append(f"eps={eps} is not below 1")
        if not math.isfinite(eps):
            diagnostics.append("eps is not finite")
        if not math.isfinite(f0) or f0 <= 0:
            diagnostics.append(f"f0={f0} is not positive and finite")
        elif p0 > p:
            diagnostics.append(f"p0={p0} exceeds p={p} (f0 below 1)")
        if math.isfinite(n0) and n0 < 0:
            diagnostics.append(f"n0={n0} is negative")

        if diagnostics:
            self.logger.warning("Parameter diagnostics", n=n, k=k, ell=ell, p=p, diagnostics=diagnostics)
        return SchemeParameters(
            n=n, k=k, ell=ell, p=p, mode=mode, regime=regime,
            rho=rho, r=r, eps=eps, f0=f0, p0=p0, n0=n0, diagnostics=tuple(diagnostics),
        )

    def _random_regime(self, n: int, k: int, ell: int, p: float, mode: SchemeMode, rho: float,
                       ln_n: float, overrides: ParameterOverrides) -> Tuple[float, float, float]:
        root_np = sqrt(n * p)
        loose_triple = (k, ell) == (3, 2)
        if overrides.r is not None:
            r = float(overrides.r)
        else:
            r = n * root_np if loose_triple else n ** (k - 2) * root_np

        if overrides.eps is not None:
            eps = overrides.eps
        elif loose_triple:
            eps = sqrt(_ratio(72 * n * ln_n, r))
        else:
            eps = sqrt(_ratio(4 * (k + 3) * factorial(k) * ln_n, ell * root_np))
            if mode is SchemeMode.MATCHING:
                eps *= 10 * factorial(k)

        if overrides.f0 is not None:
            f0 = overrides.f0
        elif loose_triple:
            f0 = r * rho + sqrt(12 * r * rho * ln_n)
        else:
            f0 = rho * r + sqrt(4 * k * rho * r * ln_n)
        return r, eps, f0

    def _pseudo_random_regime(self, n: int, k: int, p: float, mode: SchemeMode, rho: float,
                              ln_n: float, blocks: int, overrides: ParameterOverrides,
                              diagnostics: List[str]) -> Tuple[float, float, float]:
        eps = overrides.eps if overrides.eps is not None else 0.1

        if overrides.f0 is not None:
            f0 = overrides.f0
        else:
            if mode is SchemeMode.FULL_PARTITION:
                low = ln_n / eps ** 2
                high = _ratio(eps ** 3 * n * p, ln_n)
                f0 = sqrt(low * high)
            else:
                # window on f0 squared
                low = ln_n ** 2 / eps ** 4
                high = _ratio(eps * sqrt(n) * p ** 2, ln_n)
                f0 = (low * high) ** 0.25
            if not low < high:
                diagnostics.append(f"f0 window is empty: low={low} high={high}")

        if overrides.r is not None:
            r = float(overrides.r)
        else:
            factor = 2 - eps if mode is SchemeMode.FULL_PARTITION else 1 - eps
            r = factor * comb(n, k) * f0 / (blocks * blocks)
        return r, eps, f0

    def _target_count(self, mode: SchemeMode, regime: Regime, eps: float,
                      p0: float, blocks: int) -> float:
        if not (math.isfinite(eps) and math.isfinite(p0)):
            return math.nan
        if mode is SchemeMode.FULL_PARTITION:
            return ((1 - 2 * eps) * p0 / 2 - 8 * eps * p0) * blocks
        if regime is Regime.RANDOM:
            return (1 - eps) * blocks * p0
        if mode is SchemeMode.BIPARTITION_CYCLE:
            return (1 - (5 * eps) ** (1 / 3)) * blocks * p0
        return (1 - 2 * eps ** (1 / 3)) * blocks * p0
