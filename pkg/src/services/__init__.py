"""
Services for hypergraph packing
"""

from .config_service import ConfigService
from .hypergraph_service import HypergraphService
from .cycle_service import CycleService
from .partition_service import PartitionService, derive_mode
from .auxgraph_service import AuxGraphService
from .audit_service import AuditService
from .matching_service import MatchingService
from .hamilton_service import HamiltonService
from .instance_pool import InstancePool, PoolStatus, PoolStats
from .metrics_service import MetricsService
from .report_service import ReportService

__all__ = [
    'ConfigService',
    'HypergraphService',
    'CycleService',
    'PartitionService',
    'derive_mode',
    'AuxGraphService',
    'AuditService',
    'MatchingService',
    'HamiltonService',
    'InstancePool',
    'PoolStatus',
    'PoolStats',
    'MetricsService',
    'ReportService',
]
