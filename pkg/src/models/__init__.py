"""
Data models for hypergraph packing
"""

from .hypergraph import Hypergraph, VertexSet, Edge, canonical_edge
from .cycles import (
    TypeLCycle,
    HyperMatching,
    PackingKind,
    PackingResult,
    CycleVerdict,
    PackingVerdict,
)
from .partitions import (
    SchemeMode,
    Regime,
    PartitionScheme,
    EdgeLabel,
    LabeledEdgeSet,
    SchemeParameters,
    ParameterOverrides,
)
from .auxgraph import AuxKind, AuxGraph, BipartiteGraph, AuditReport
from .packs import FlowCut, FlowPackResult, MatchingPack, CyclePack
from .config import RunConfig, GenerateSource, AuditConfig, HamiltonConfig
from .report import RunReport, RunInfo, InstanceReport, Totals

__all__ = [
    'Hypergraph',
    'VertexSet',
    'Edge',
    'canonical_edge',
    'TypeLCycle',
    'HyperMatching',
    'PackingKind',
    'PackingResult',
    'CycleVerdict',
    'PackingVerdict',
    'SchemeMode',
    'Regime',
    'PartitionScheme',
    'EdgeLabel',
    'LabeledEdgeSet',
    'SchemeParameters',
    'ParameterOverrides',
    'AuxKind',
    'AuxGraph',
    'BipartiteGraph',
    'AuditReport',
    'FlowCut',
    'FlowPackResult',
    'MatchingPack',
    'CyclePack',
    'RunConfig',
    'GenerateSource',
    'AuditConfig',
    'HamiltonConfig',
    'RunReport',
    'RunInfo',
    'InstanceReport',
    'Totals',
]
