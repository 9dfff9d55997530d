"""
Main packing service: parameterize, sample, label, pack, verify, audit, report
"""

import math
import time
from contextlib import contextmanager
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import structlog

from .exceptions import DegenerateSizeError, InvariantViolationError, PackingException
from .models.auxgraph import AuditReport, AuxGraph
from .models.config import RunConfig
from .models.cycles import PackingItem, PackingKind, PackingResult
from .models.hypergraph import Hypergraph
from .models.partitions import (
    LabeledEdgeSet,
    ParameterOverrides,
    PartitionScheme,
    SchemeMode,
    SchemeParameters,
)
from .models.report import InstanceReport, RunInfo, RunReport, Totals
from .services.audit_service import AuditService
from .services.auxgraph_service import AuxGraphService
from .services.cycle_service import CycleService
from .services.hamilton_service import HamiltonService
from .services.hypergraph_service import HypergraphService
from .services.instance_pool import InstancePool
from .services.matching_service import MatchingService
from .services.metrics_service import MetricsService
from .services.partition_service import PartitionService
from .services.report_service import ReportService
from .utils.logger import bind_run_context, clear_run_context, stage_context


@dataclass(frozen=True)
class InstanceHarvest:
    """Items lifted from one auxiliary graph"""
    instance_id: int
    aux_edges: int
    items: Tuple[PackingItem, ...]


class PackingService:
    """Orchestrates one packing run"""

    def __init__(self, metrics_service: Optional[MetricsService] = None,
                 hypergraph_service: Optional[HypergraphService] = None,
                 cycle_service: Optional[CycleService] = None,
                 auxgraph_service: Optional[AuxGraphService] = None,
                 matching_service: Optional[MatchingService] = None,
                 audit_service: Optional[AuditService] = None,
                 report_service: Optional[ReportService] = None):
        self.logger = structlog.get_logger()
        self.metrics_service = metrics_service or MetricsService()
        self.hypergraph_service = hypergraph_service or HypergraphService()
        self.cycle_service = cycle_service or CycleService()
        self.auxgraph_service = auxgraph_service or AuxGraphService()
        self.matching_service = matching_service or MatchingService()
        self.audit_service = audit_service or AuditService()
        self.report_service = report_service or ReportService()
        self._timings: Dict[str, float] = {}

    @contextmanager
    def _stage(self, name: str) -> Iterator[None]:
        """Time a stage; submodule errors are re-raised with the stage name in front."""
        started = time.perf_counter()
        try:
            with stage_context(name):
                yield
        except PackingException as e:
            self.metrics_service.record_stage_error(name, type(e).__name__)
            self.logger.error("Stage failed", stage=name, error=str(e), error_type=type(e).__name__)
            raise type(e)(f"{name} stage: {e}") from e
        finally:
            elapsed = time.perf_counter() - started
            self._timings[name] = self._timings.get(name, 0.0) + elapsed
            self.metrics_service.record_stage_duration(name, elapsed)

    def run_packing(self, config: RunConfig,
                    schemes: Optional[Sequence[PartitionScheme]] = None
                    ) -> Tuple[PackingResult, RunReport]:
        """End-to-end run; `schemes` pins the instances instead of sampling them."""
        clear_run_context()
        bind_run_context(ell=config.ell, seed=config.seed)
        try:
            return self._run(config, schemes)
        finally:
            clear_run_context()

    def _run(self, config: RunConfig, schemes: Optional[Sequence[PartitionScheme]]
             ) -> Tuple[PackingResult, RunReport]:
        self._timings = {}
        pool = InstancePool(config.workers)
        partition_service = PartitionService(pool=pool)
        hamilton_service = HamiltonService(config.hamilton)

        with self._stage("load"):
            hypergraph = self._load(config)
            config.validate_shape(hypergraph.n, hypergraph.k)
        n, k, ell = hypergraph.n, hypergraph.k, config.ell
        bind_run_context(n=n, k=k)
        p = config.generate.p if config.generate is not None else hypergraph.density
        self.logger.info("Hypergraph ready", n=n, k=k, m=hypergraph.m, p=p)

        with self._stage("parameterize"):
            theoretical = partition_service.scheme_parameters(
                n, k, ell, p, mode=config.mode, regime=config.regime,
                overrides=ParameterOverrides(eps=config.eps),
            )
            r_used = self._used_instance_count(config, theoretical, schemes)
            used = partition_service.scheme_parameters(
                n, k, ell, p, mode=config.mode, regime=config.regime,
                overrides=ParameterOverrides(r=r_used, eps=config.eps, f0=config.f0),
            )
        mode = used.mode
        bind_run_context(mode=mode.value)
        kind = PackingKind.MATCHINGS if mode is SchemeMode.MATCHING else PackingKind.CYCLES
        self.metrics_service.set_run_info(n, k, ell, mode.value)

        with self._stage("sample"):
            if schemes is None:
                schemes = pool.map(
                    lambda i: partition_service.sample_scheme(n, k, ell, mode, config.seed, i),
                    range(1, r_used + 1),
                )
            schemes = sorted(schemes, key=lambda s: s.instance_id)

        with self._stage("label"):
            labels = partition_service.label_edges(hypergraph, schemes, config.seed)

        with self._stage("pack"):
            harvests = pool.map(
                lambda s: self._harvest(hypergraph, s, labels, used, hamilton_service, config.seed),
                schemes,
            )

        with self._stage("verify"):
            result = PackingResult(
                kind=kind, n=n, k=k, ell=ell, source_edges=hypergraph.m,
                items=tuple(item for h in harvests for item in h.items),
                per_instance_counts=tuple((h.instance_id, len(h.items)) for h in harvests),
            )
            verdict = self.cycle_service.verify_packing(hypergraph, result)
            if not verdict.ok:
                raise InvariantViolationError(f"Packing failed verification: {verdict.describe()}")
            totals = self._totals(hypergraph, labels, harvests, result)

        audits: List[AuditReport] = []
        if config.audit.enabled:
            with self._stage("audit"):
                audits = self._audit(config, hypergraph, labels, harvests, schemes, used)

        with self._stage("report"):
            harvested = result.counts_by_instance()
            for harvest in harvests:
                self.metrics_service.record_instance(mode.value, harvest.aux_edges,
                                                     len(harvest.items), kind.value)
            self.metrics_service.set_coverage(totals.coverage)
            report = RunReport(
                run=RunInfo(n=n, k=k, ell=ell, m=hypergraph.m, mode=mode.value,
                            kind=kind.value, seed=config.seed),
                params_theoretical=theoretical,
                params_used=used,
                instances=tuple(
                    InstanceReport(id=h.instance_id, aux_edges=h.aux_edges, harvest=harvested[h.instance_id])
                    for h in harvests
                ),
                totals=totals,
                audits=tuple(audits),
                timings=dict(self._timings),
            )
            self._write_outputs(config, result, report)

        self.logger.info("Packing run completed", mode=mode.value, instances=len(harvests),
                         items=totals.items, coverage=totals.coverage)
        return result, report

    def _load(self, config: RunConfig) -> Hypergraph:
        if config.generate is not None:
            source = config.generate
            return self.hypergraph_service.generate_hnpk(source.n, source.k, source.p, source.seed)
        return self.hypergraph_service.load(config.input_path)

    def _used_instance_count(self, config: RunConfig, theoretical: SchemeParameters,
                             schemes: Optional[Sequence[PartitionScheme]]) -> int:
        if schemes is not None:
            return len(schemes)
        if config.r is not None:
            return config.r
        if theoretical.r is None or not math.isfinite(theoretical.r) or theoretical.r <= 0:
            self.logger.warning("Theoretical instance count unusable, running no instances",
                                r=theoretical.r)
            return 0
        wanted = math.ceil(theoretical.r)
        if wanted > config.max_instances:
            self.logger.warning("Instance count capped", theoretical_r=theoretical.r,
                                max_instances=config.max_instances)
            return config.max_instances
        return wanted

    def _harvest(self, hypergraph: Hypergraph, scheme: PartitionScheme, labels: LabeledEdgeSet,
                 params: SchemeParameters, hamilton_service: HamiltonService,
                 seed: int) -> InstanceHarvest:
        aux: AuxGraph = self.auxgraph_service.build_aux_graph(hypergraph, scheme, labels)
        if scheme.mode is SchemeMode.FULL_PARTITION:
            pack = hamilton_service.pack_graph_hamilton(
                aux.to_networkx(), target_hint=params.n0, seed=seed, instance_id=scheme.instance_id,
            )
            solutions = pack.cycles
        else:
            solutions = self.matching_service.pack_perfect_matchings(aux.to_bipartite()).matchings

        items = tuple(self.cycle_service.assemble_cycle(scheme, s, scheme.mode) for s in solutions)
        self.logger.debug("Instance harvested", instance_id=scheme.instance_id,
                          aux_edges=aux.edge_count, items=len(items))
        return InstanceHarvest(instance_id=scheme.instance_id, aux_edges=aux.edge_count, items=items)

    def _totals(self, hypergraph: Hypergraph, labels: LabeledEdgeSet,
                harvests: Sequence[InstanceHarvest], result: PackingResult) -> Totals:
        labeled_unpacked = sum(
            h.aux_edges - sum(len(item.edges) for item in h.items) for h in harvests
        )
        unlabeled = labels.unlabeled_count
        if result.edges_used + unlabeled + labeled_unpacked != hypergraph.m:
            raise InvariantViolationError(
                f"Coverage accounting broken: used={result.edges_used} unlabeled={unlabeled} "
                f"labeled_unpacked={labeled_unpacked} m={hypergraph.m}"
            )
        return Totals(
            items=len(result.items),
            edges_used=result.edges_used,
            coverage=result.coverage,
            unlabeled=unlabeled,
            labeled_unpacked=labeled_unpacked,
        )

    def _audit(self, config: RunConfig, hypergraph: Hypergraph, labels: LabeledEdgeSet,
               harvests: Sequence[InstanceHarvest], schemes: Sequence[PartitionScheme],
               params: SchemeParameters) -> List[AuditReport]:
        audit = config.audit
        reports = [self.audit_service.audit_inclusion_counts(
            labels, int(params.r or 0), params.rho or 0.0, hypergraph.n, hypergraph.k,
        )]

        if params.mode is SchemeMode.FULL_PARTITION:
            try:
                reports.append(self.audit_service.audit_hypergraph_regularity(
                    hypergraph, config.ell, audit.eps, partitions=audit.regularity_partitions,
                    budget=audit.regularity_budget, seed=config.seed,
                ))
            except DegenerateSizeError as e:
                self.logger.warning("Regularity audit skipped", error=str(e))
        else:
            reports.extend(self.audit_service.audit_degree_properties(
                hypergraph, config.ell, audit.eps, mode=audit.mode,
                samples=audit.samples, seed=config.seed,
            ))
            reports.extend(self._premise_audit(hypergraph, labels, harvests, schemes, params, audit.eps))

        for report in reports:
            self.metrics_service.record_audit(report.property, report.verdict)
        return reports

    def _premise_audit(self, hypergraph: Hypergraph, labels: LabeledEdgeSet,
                       harvests: Sequence[InstanceHarvest], schemes: Sequence[PartitionScheme],
                       params: SchemeParameters, theta: float) -> List[AuditReport]:
        """Degree and co-degree premises on the lowest-id nonempty auxiliary graph."""
        if params.p0 is None or not math.isfinite(params.p0):
            return []
        by_id = {s.instance_id: s for s in schemes}
        for harvest in harvests:
            if harvest.aux_edges:
                aux = self.auxgraph_service.build_aux_graph(hypergraph, by_id[harvest.instance_id], labels)
                degree, codegree = self.audit_service.audit_bipartite_premises(
                    aux.to_bipartite(), params.p0, theta,
                )
                return [degree, codegree]
        return []

    def _write_outputs(self, config: RunConfig, result: PackingResult, report: RunReport) -> None:
        if config.cycles_out:
            Path(config.cycles_out).write_text(self.cycle_service.write_packing(result.items), encoding='utf-8')
            self.logger.info("Packing written", path=config.cycles_out, items=len(result.items))
        if config.report_out:
            Path(config.report_out).write_text(
                self.report_service.emit_report(report, include_timings=config.include_timings),
                encoding='utf-8',
            )
            self.logger.info("Report written", path=config.report_out)
        if config.metrics_out:
            Path(config.metrics_out).write_text(self.metrics_service.get_metrics(), encoding='utf-8')
            self.logger.info("Metrics written", path=config.metrics_out)
