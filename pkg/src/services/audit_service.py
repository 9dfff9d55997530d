"""
Audit service

Pseudo-randomness auditors: degree and co-degree properties of the
hypergraph, (alpha, eps)-regularity of simple graphs, the degree and
co-degree premises of the bipartite matching lemma, and the concentration
of inclusion counts.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb, ceil, floor, log, sqrt
from typing import Dict, List, Optional, Sequence, Tuple

import networkx as nx
import numpy as np
import structlog

from ..exceptions import DegenerateSizeError, InvalidParameterError, ShapeError, UnsupportedCaseError
from ..models.auxgraph import AuditReport, BipartiteGraph
from ..models.hypergraph import Edge, Hypergraph
from ..models.partitions import LabeledEdgeSet
from ..utils.seeding import StreamTag, derive_rng, random_subset

EXACT_ENUMERATION_CAP = 10 ** 6
FLOAT_TOLERANCE = 1e-9

PASS = "pass"
FAIL = "fail"


def _binom(a: int, b: int) -> int:
    if a < 0 or b < 0 or b > a:
        return 0
    return comb(a, b)


@dataclass(frozen=True)
class DegreeProperty:
    """One degree or co-degree property.

    kind is "min" (lower bound on d(S)), "max" (upper bound on d(S)) or
    "pair" (upper bound on common neighbourhoods of S1, S2).
    """
    name: str
    kind: str
    size: int
    base: int
    rounding: str = "floor"
    intersections: Tuple[int, ...] = (0,)

    def bound(self, p: Fraction, eps: Fraction) -> int:
        if self.kind == "min":
            return ceil((1 - eps) * self.base * p)
        scale = p * p if self.kind == "pair" else p
        value = (1 + eps) * self.base * scale
        return ceil(value) if self.rounding == "ceil" else floor(value)

    def slack(self, measured: int, p: float) -> Optional[float]:
        expected = self.base * (p * p if self.kind == "pair" else p)
        if expected <= 0:
            return None
        if self.kind == "min":
            return 1 - measured / expected
        return measured / expected - 1


def degree_properties(n: int, k: int, ell: int, family: str) -> List[DegreeProperty]:
    """Property list of the family for (n, k, ell)."""
    if family == "P":
        if not (k < 2 * ell and ell < k):
            raise UnsupportedCaseError(f"Family P needs k/2 < ell < k, got k={k}, ell={ell}")
        s, t = 2 * (k - ell), 2 * ell - k
        return [
            DegreeProperty("P_a", "min", s, _binom(n - s, t)),
            DegreeProperty("P_b", "min", t, _binom(n - t, s)),
            DegreeProperty("P_c", "max", s + 1, _binom(n - s - 1, t - 1)),
            DegreeProperty("P_d", "max", t + 1, _binom(n - t - 1, s - 1)),
            DegreeProperty("P_e", "pair", t, _binom(n - 2 * t, s)),
            DegreeProperty("P_f", "pair", s, _binom(n, t), intersections=(0, k - ell)),
        ]
    if family == "R":
        if ell != k:
            raise UnsupportedCaseError(f"Family R needs ell = k, got k={k}, ell={ell}")
        kx, ky = k // 2, k - k // 2
        return [
            DegreeProperty("R_a", "min", kx, _binom(n - kx, ky)),
            DegreeProperty("R_b", "min", ky, _binom(n - ky, kx)),
            DegreeProperty("R_c", "max", kx + 1, _binom(n - kx - 1, ky - 1), rounding="ceil"),
            DegreeProperty("R_d", "max", ky + 1, _binom(n - ky - 1, kx - 1), rounding="ceil"),
            DegreeProperty("R_e", "pair", kx, _binom(n - 2 * kx, ky)),
            DegreeProperty("R_f", "pair", ky, _binom(n - 2 * ky, kx)),
        ]
    raise UnsupportedCaseError(f"Unknown property family '{family}'")


def default_family(k: int, ell: int) -> str:
    if ell == k:
        return "R"
    if k < 2 * ell < 2 * k:
        return "P"
    raise UnsupportedCaseError(f"No degree property family for k={k}, ell={ell}")


class CompletionIndex:
    """Maps each a-set S to the (k - a)-sets completing it to an edge."""

    def __init__(self, hypergraph: Hypergraph, size: int):
        self.n = hypergraph.n
        self.size = size
        self.completions: Dict[Edge, List[Edge]] = {}
        for edge in hypergraph.edges:
            for subset in combinations(edge, size):
                rest = tuple(v for v in edge if v not in subset)
                self.completions.setdefault(subset, []).append(rest)

    def degree(self, subset: Edge) -> int:
        return len(self.completions.get(subset, ()))

    def common(self, first: Edge, second: Edge) -> int:
        return len(set(self.completions.get(first, ())) & set(self.completions.get(second, ())))

    def first_missing(self) -> Optional[Edge]:
        for subset in combinations(range(1, self.n + 1), self.size):
            if subset not in self.completions:
                return subset
        return None


class AuditService:
    """Service running the pseudo-randomness auditors"""

    def __init__(self, exact_cap: int = EXACT_ENUMERATION_CAP):
        self.logger = structlog.get_logger()
        self.exact_cap = exact_cap

    # ------------------------------------------------------------------
    # degree properties
    # ------------------------------------------------------------------

    def audit_degree_properties(self, hypergraph: Hypergraph, ell: int, eps: float,
                                mode: str = "exact", samples: int = 1000,
                                family: Optional[str] = None, seed: int = 0) -> List[AuditReport]:
        """Audit the P or R property family against the exact bounds.

        p is the density m / C(n, k) of the hypergraph. Exact mode enumerates
        every set (and every admissible pair through co-occurrence counts);
        sampled mode draws `samples` uniform sets or pairs per property.
        """
        n, k = hypergraph.n, hypergraph.k
        family = family or default_family(k, ell)
        properties = degree_properties(n, k, ell, family)
        if mode not in ("exact", "sampled"):
            raise InvalidParameterError(f"Audit mode must be exact or sampled, got {mode}")
        if mode == "sampled" and samples < 1:
            raise InvalidParameterError("Sample count must be positive")

        p = hypergraph.density_fraction
        eps_fraction = Fraction(repr(float(eps)))
        indexes: Dict[int, CompletionIndex] = {}
        reports = []
        for position, prop in enumerate(properties):
            if prop.size not in indexes:
                indexes[prop.size] = CompletionIndex(hypergraph, prop.size)
            index = indexes[prop.size]
            prop_mode = mode
            if mode == "exact" and _binom(n, prop.size) > self.exact_cap:
                self.logger.warning("Exact audit too large, sampling instead",
                                    property_id=prop.name, sets=_binom(n, prop.size), samples=samples)
                prop_mode = "sampled"

            if prop_mode == "exact":
                measured, witness = self._exact_extremum(prop, index)
            else:
                rng = derive_rng(seed, StreamTag.AUDIT, position)
                measured, witness = self._sampled_extremum(prop, index, rng, samples)

            reports.append(self._degree_report(prop, hypergraph, measured, witness, p, eps_fraction,
                                               prop_mode, samples))
        return reports

    def _exact_extremum(self, prop: DegreeProperty, index: CompletionIndex):
        if prop.kind == "min":
            missing = index.first_missing()
            if missing is not None:
                return 0, (missing,)
            subset = min(sorted(index.completions), key=index.degree)
            return index.degree(subset), (subset,)
        if prop.kind == "max":
            if not index.completions:
                return 0, (tuple(range(1, prop.size + 1)),)
            subset = max(sorted(index.completions), key=index.degree)
            return index.degree(subset), (subset,)
        return self._exact_pair_maximum(prop, index)

    def _exact_pair_maximum(self, prop: DegreeProperty, index: CompletionIndex):
        by_completion: Dict[Edge, List[Edge]] = {}
        for subset, rests in index.completions.items():
            for rest in rests:
                by_completion.setdefault(rest, []).append(subset)

        shared: Dict[Tuple[Edge, Edge], int] = {}
        for subsets in by_completion.values():
            subsets.sort()
            for i, first in enumerate(subsets):
                first_set = set(first)
                for second in subsets[i + 1:]:
                    if len(first_set.intersection(second)) in prop.intersections:
                        key = (first, second)
                        shared[key] = shared.get(key, 0) + 1

        if shared:
            pair = max(sorted(shared), key=shared.get)
            return shared[pair], pair
        pair = self._first_admissible_pair(prop, index.n)
        return 0, pair if pair is not None else ()

    @staticmethod
    def _first_admissible_pair(prop: DegreeProperty, n: int) -> Optional[Tuple[Edge, Edge]]:
        for first in combinations(range(1, n + 1), prop.size):
            first_set = set(first)
            for second in combinations(range(1, n + 1), prop.size):
                if second > first and len(first_set.intersection(second)) in prop.intersections:
                    return first, second
        return None

    def _sampled_extremum(self, prop: DegreeProperty, index: CompletionIndex,
                          rng: np.random.Generator, samples: int):
        vertices = np.arange(1, index.n + 1)
        best_value, best_witness = None, ()
        for _ in range(samples):
            if prop.kind == "pair":
                pair = self._sample_pair(prop, index.n, rng)
                if pair is None:
                    break
                value, witness = index.common(*pair), pair
            else:
                subset = random_subset(rng, vertices, prop.size)
                value, witness = index.degree(subset), (subset,)
            better = best_value is None or (value < best_value if prop.kind == "min" else value > best_value)
            if better:
                best_value, best_witness = value, witness
        return (best_value if best_value is not None else 0), best_witness

    @staticmethod
    def _sample_pair(prop: DegreeProperty, n: int, rng: np.random.Generator):
        size = prop.size
        feasible = [i for i in prop.intersections if n - size >= size - i]
        if not feasible:
            return None
        shared = feasible[int(rng.integers(len(feasible)))]
        first = random_subset(rng, np.arange(1, n + 1), size)
        inside = list(random_subset(rng, np.array(first), shared)) if shared else []
        outside_pool = np.array([v for v in range(1, n + 1) if v not in first])
        outside = list(random_subset(rng, outside_pool, size - shared))
        second = tuple(sorted(inside + outside))
        return (first, second) if first <= second else (second, first)

    def _degree_report(self, prop: DegreeProperty, hypergraph: Hypergraph, measured: int,
                       witness, p: Fraction, eps: Fraction, mode: str, samples: int) -> AuditReport:
        bound = prop.bound(p, eps)
        details = {'set_size': prop.size, 'kind': prop.kind, 'base': prop.base}
        if prop.kind == "min":
            passed = measured >= bound
            if hypergraph.m == 0:
                # no degree structure to audit without edges
                passed = False
                details['empty_hypergraph'] = True
        else:
            passed = measured <= bound
        if not witness:
            details['vacuous'] = True
        return AuditReport(
            property=prop.name,
            mode=mode,
            verdict=PASS if passed else FAIL,
            witness=tuple(tuple(w) for w in witness),
            slack=prop.slack(measured, hypergraph.density),
            measured=measured,
            bound=bound,
            samples=samples if mode == "sampled" else None,
            details=details,
        )

    # ------------------------------------------------------------------
    # graph regularity
    # ------------------------------------------------------------------

    def audit_regularity(self, graph: nx.Graph, alpha: float, eps: float,
                         budget: int, seed: int = 0) -> List[AuditReport]:
        """Q_a exactly by a degree scan, Q_b over `budget` sampled disjoint pairs."""
        if not (0.0 < eps < 1.0):
            raise InvalidParameterError(f"eps must be in (0, 1), got {eps}")
        if budget < 1:
            raise InvalidParameterError("Sample budget must be at least 1")
        size = graph.number_of_nodes()
        if eps * size < 1:
            raise DegenerateSizeError(f"eps * N = {eps * size} is below 1")

        nodes = sorted(graph.nodes())
        adjacency = nx.to_numpy_array(graph, nodelist=nodes, weight=None, dtype=np.int64)
        degrees = adjacency.sum(axis=1)
        lowest = int(np.argmin(degrees))
        min_degree = int(degrees[lowest])
        threshold = (alpha - eps) * size
        q_a = AuditReport(
            property="Q_a",
            mode="exact",
            verdict=PASS if min_degree >= threshold - FLOAT_TOLERANCE else FAIL,
            witness=((nodes[lowest],),),
            slack=alpha - min_degree / size,
            measured=min_degree,
            bound=threshold,
            details={'alpha': alpha, 'eps': eps, 'size': size},
        )

        unit = ceil(eps * size)
        sizes = sorted({unit, 2 * unit, size // 2})
        shapes = [(a, b) for a in sizes for b in sizes if a >= unit and b >= unit and a + b <= size]
        rng = derive_rng(seed, StreamTag.AUDIT, 100)
        worst, witness = 0.0, ()
        if shapes:
            for _ in range(budget):
                a, b = shapes[int(rng.integers(len(shapes)))]
                order = rng.permutation(size)
                first, second = order[:a], order[a:a + b]
                density = adjacency[np.ix_(first, second)].sum() / (a * b)
                deviation = abs(float(density) - alpha)
                if deviation > worst or not witness:
                    worst = deviation
                    witness = (tuple(sorted(nodes[i] for i in first)), tuple(sorted(nodes[i] for i in second)))
        q_b = AuditReport(
            property="Q_b",
            mode="sampled",
            verdict=PASS if worst <= eps + FLOAT_TOLERANCE else FAIL,
            witness=witness,
            slack=worst,
            measured=worst,
            bound=eps,
            samples=budget,
            details={'alpha': alpha, 'set_sizes': sizes, 'vacuous': not shapes},
        )
        return [q_a, q_b]

    def audit_hypergraph_regularity(self, hypergraph: Hypergraph, ell: int, eps: float,
                                    alpha: Optional[float] = None, partitions: int = 10,
                                    budget: int = 1000, seed: int = 0) -> AuditReport:
        """Failure rate of (alpha, eps)-regularity of G_P over sampled ell-partitions P."""
        n, k = hypergraph.n, hypergraph.k
        if k != 2 * ell:
            raise UnsupportedCaseError(f"Partition regularity needs k = 2 ell, got k={k}, ell={ell}")
        if n % ell:
            raise UnsupportedCaseError(f"ell={ell} does not divide n={n}")
        alpha = hypergraph.density if alpha is None else alpha
        parts = n // ell
        failures = 0
        worst_witness: Tuple[Tuple[int, ...], ...] = ()
        for j in range(partitions):
            rng = derive_rng(seed, StreamTag.REGULARITY, j)
            permutation = [int(v) + 1 for v in rng.permutation(n)]
            blocks = [tuple(permutation[i:i + ell]) for i in range(0, n, ell)]
            graph = nx.Graph()
            graph.add_nodes_from(range(1, parts + 1))
            for u, v in combinations(range(1, parts + 1), 2):
                if hypergraph.contains(blocks[u - 1] + blocks[v - 1]):
                    graph.add_edge(u, v)
            reports = self.audit_regularity(graph, alpha, eps, budget, seed=seed + j)
            if not all(r.passed for r in reports):
                failures += 1
                if not worst_witness:
                    worst_witness = tuple(blocks)
        rate = failures / partitions if partitions else 0.0
        return AuditReport(
            property="Q-partition",
            mode="sampled",
            verdict=PASS if failures == 0 else FAIL,
            witness=worst_witness,
            slack=None,
            measured=rate,
            bound=0.0,
            samples=partitions,
            details={'alpha': alpha, 'eps': eps, 'failures': failures, 'budget': budget},
        )

    # ------------------------------------------------------------------
    # bipartite premises
    # ------------------------------------------------------------------

    def audit_bipartite_premises(self, graph: BipartiteGraph, d: float,
                                 theta: float) -> Tuple[AuditReport, AuditReport]:
        """Min degree against (1 - theta) d N and max co-degree against (1 + theta) d^2 N."""
        if graph.n_left != graph.n_right:
            raise ShapeError(f"Sides differ: {graph.n_left} != {graph.n_right}")
        size = graph.n_left
        matrix = graph.biadjacency()
        if size:
            degrees = np.concatenate([matrix.sum(axis=1), matrix.sum(axis=0)])
            lowest = int(np.argmin(degrees))
            min_degree = int(degrees[lowest])
            degree_side, degree_vertex = ('A', lowest + 1) if lowest < size else ('B', lowest - size + 1)
        else:
            min_degree, degree_side, degree_vertex = 0, 'A', 0

        max_codegree, codegree_pair, codegree_side = 0, (), 'A'
        if size > 1:
            for side, product in (('A', matrix @ matrix.T), ('B', matrix.T @ matrix)):
                np.fill_diagonal(product, -1)
                i, j = divmod(int(np.argmax(product)), size)
                if product[i, j] > max_codegree or not codegree_pair:
                    max_codegree = int(product[i, j])
                    codegree_pair, codegree_side = ((i + 1,), (j + 1,)), side

        degree_bound = (1 - theta) * d * size
        codegree_bound = (1 + theta) * d * d * size
        side_value = theta ** (4 / 3) * d * d * size
        degree_scale, codegree_scale = d * size, d * d * size

        degree_report = AuditReport(
            property="L2-degree",
            mode="exact",
            verdict=PASS if min_degree >= degree_bound - FLOAT_TOLERANCE else FAIL,
            witness=((degree_vertex,),) if size else (),
            slack=1 - min_degree / degree_scale if degree_scale > 0 else None,
            measured=min_degree,
            bound=degree_bound,
            details={'d': d, 'theta': theta, 'size': size, 'side': degree_side,
                     'side_condition': side_value},
        )
        codegree_report = AuditReport(
            property="L2-codegree",
            mode="exact",
            verdict=PASS if max_codegree <= codegree_bound + FLOAT_TOLERANCE else FAIL,
            witness=codegree_pair,
            slack=max_codegree / codegree_scale - 1 if codegree_scale > 0 else None,
            measured=max_codegree,
            bound=codegree_bound,
            details={'d': d, 'theta': theta, 'size': size, 'side': codegree_side,
                     'side_condition': side_value},
        )
        return degree_report, codegree_report

    @staticmethod
    def measured_theta(reports: Sequence[AuditReport]) -> Optional[float]:
        """Smallest theta >= 0 under which both premises hold."""
        slacks = [r.slack for r in reports]
        if any(s is None for s in slacks):
            return None
        return max(0.0, *slacks)

    # ------------------------------------------------------------------
    # inclusion counts
    # ------------------------------------------------------------------

    def audit_inclusion_counts(self, labels: LabeledEdgeSet, r: int, rho: float,
                               n: int, k: int) -> AuditReport:
        """Fraction of edges whose f(E) leaves the Chernoff window around r * rho."""
        values = np.asarray(labels.all_counts(), dtype=np.float64)
        edges = len(values)
        zero_count = int((values == 0).sum()) if edges else 0
        mean = r * rho
        width = sqrt(4 * k * mean * log(n)) if mean > 0 and n > 1 else 0.0
        low, high = mean - width, mean + width
        outside = int(((values < low) | (values > high)).sum()) if edges else 0
        fraction = outside / edges if edges else 0.0
        threshold = 1 / n + (10 / sqrt(edges) if edges else 0.0)

        details = {
            'zero_count': zero_count,
            'window_low': low,
            'window_high': high,
            'mean': float(values.mean()) if edges else 0.0,
            'variance': float(values.var()) if edges else 0.0,
            'expected_mean': mean,
            'expected_variance': r * rho * (1 - rho),
            'edges': edges,
        }
        if r <= 0:
            passed = False
            details['coverage_loss'] = 1.0
        else:
            passed = fraction <= threshold
            details['coverage_loss'] = zero_count / edges if edges else 0.0
        return AuditReport(
            property="f-window",
            mode="exact",
            verdict=PASS if passed else FAIL,
            witness=(),
            slack=None,
            measured=fraction,
            bound=threshold,
            details=details,
        )
