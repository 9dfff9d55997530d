"""
Metrics service for Prometheus monitoring of packing runs
"""

from typing import Optional
from prometheus_client import (
    Counter, Histogram, Gauge, Info,
    CollectorRegistry, generate_latest,
    CONTENT_TYPE_LATEST
)
import structlog


class MetricsService:
    """Service for managing Prometheus metrics"""

    def __init__(self, registry: Optional[CollectorRegistry] = None):
        self.logger = structlog.get_logger()
        self.registry = registry or CollectorRegistry()
        self._init_metrics()
        self.logger.debug("Metrics service initialized")

    def _init_metrics(self) -> None:
        """Initialize all Prometheus metrics"""

        # === STAGE METRICS ===
        self.stage_duration = Histogram(
            'hyperpack_stage_duration_seconds',
            'Time spent in each pipeline stage',
            ['stage'],
            buckets=[0.001, 0.01, 0.05, 0.1, 0.5, 1.0, 5.0, 10.0, 60.0, 300.0],
            registry=self.registry
        )

        self.stage_errors_total = Counter(
            'hyperpack_stage_errors_total',
            'Errors raised inside a pipeline stage',
            ['stage', 'error_type'],
            registry=self.registry
        )

        # === INSTANCE METRICS ===
        self.instances_processed_total = Counter(
            'hyperpack_instances_processed_total',
            'Partition instances processed',
            ['mode'],
            registry=self.registry
        )

        self.items_harvested_total = Counter(
            'hyperpack_items_harvested_total',
            'Cycles or matchings harvested',
            ['kind'],
            registry=self.registry
        )

        self.aux_edges = Histogram(
            'hyperpack_aux_edges',
            'Edges per auxiliary graph',
            buckets=[0, 1, 5, 10, 25, 50, 100, 250, 500, 1000, 5000],
            registry=self.registry
        )

        # === RESULT METRICS ===
        self.coverage = Gauge(
            'hyperpack_coverage_ratio',
            'Fraction of hyperedges used by the packing',
            registry=self.registry
        )

        self.audits_total = Counter(
            'hyperpack_audits_total',
            'Audit verdicts',
            ['property', 'verdict'],
            registry=self.registry
        )

        self.run_info = Info(
            'hyperpack_run',
            'Shape of the last run',
            registry=self.registry
        )

    def get_metrics(self) -> str:
        """Get metrics in Prometheus format"""
        return generate_latest(self.registry).decode('utf-8')

    def get_content_type(self) -> str:
        return CONTENT_TYPE_LATEST

    def record_stage_duration(self, stage: str, duration: float) -> None:
        self.stage_duration.labels(stage=stage).observe(duration)

    def record_stage_error(self, stage: str, error_type: str) -> None:
        self.stage_errors_total.labels(stage=stage, error_type=error_type).inc()

    def record_instance(self, mode: str, aux_edges: int, harvest: int, kind: str) -> None:
        """Record one processed instance"""
        self.instances_processed_total.labels(mode=mode).inc()
        self.aux_edges.observe(aux_edges)
        if harvest:
            self.items_harvested_total.labels(kind=kind).inc(harvest)

    def set_coverage(self, coverage: float) -> None:
        self.coverage.set(coverage)

    def record_audit(self, property_id: str, verdict: str) -> None:
        self.audits_total.labels(property=property_id, verdict=verdict).inc()

    def set_run_info(self, n: int, k: int, ell: int, mode: str) -> None:
        self.run_info.info({'n': str(n), 'k': str(k), 'ell': str(ell), 'mode': mode})
