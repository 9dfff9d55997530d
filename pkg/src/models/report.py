"""
Run report models
"""

from dataclasses import dataclass, field
from typing import Any, Dict, Optional, Tuple

from .auxgraph import AuditReport
from .partitions import SchemeParameters


@dataclass(frozen=True)
class RunInfo:
    """Shape of the run"""
    n: int
    k: int
    ell: int
    m: int
    mode: str
    kind: str
    seed: int

    def to_dict(self) -> Dict[str, Any]:
        return {
            'n': self.n,
            'k': self.k,
            'ell': self.ell,
            'm': self.m,
            'mode': self.mode,
            'kind': self.kind,
            'seed': self.seed,
        }


@dataclass(frozen=True)
class InstanceReport:
    """Per-instance harvest"""
    id: int
    aux_edges: int
    harvest: int

    def to_dict(self) -> Dict[str, Any]:
        return {'id': self.id, 'aux_edges': self.aux_edges, 'harvest': self.harvest}


@dataclass(frozen=True)
class Totals:
    """Aggregate counts; edges_used + unlabeled + labeled_unpacked equals m"""
    items: int
    edges_used: int
    coverage: float
    unlabeled: int
    labeled_unpacked: int

    def to_dict(self) -> Dict[str, Any]:
        return {
            'items': self.items,
            'edges_used': self.edges_used,
            'coverage': self.coverage,
            'unlabeled': self.unlabeled,
            'labeled_unpacked': self.labeled_unpacked,
        }


@dataclass(frozen=True)
class RunReport:
    """Everything a run reports besides the packing itself"""
    run: RunInfo
    params_theoretical: SchemeParameters
    params_used: SchemeParameters
    instances: Tuple[InstanceReport, ...]
    totals: Totals
    audits: Tuple[AuditReport, ...] = ()
    timings: Optional[Dict[str, float]] = field(default=None, compare=False)

    def to_dict(self, include_timings: bool = True) -> Dict[str, Any]:
        return {
            'run': self.run.to_dict(),
            'params_theoretical': self.params_theoretical.to_dict(),
            'params_used': self.params_used.to_dict(),
            'instances': [i.to_dict() for i in self.instances],
            'totals': self.totals.to_dict(),
            'audits': [a.to_dict() for a in self.audits],
            'timings': dict(self.timings or {}) if include_timings else None,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'RunReport':
        timings = data.get('timings')
        return cls(
            run=RunInfo(**data['run']),
            params_theoretical=SchemeParameters.from_dict(data['params_theoretical']),
            params_used=SchemeParameters.from_dict(data['params_used']),
            instances=tuple(InstanceReport(**i) for i in data['instances']),
            totals=Totals(**data['totals']),
            audits=tuple(AuditReport.from_dict(a) for a in data.get('audits', ())),
            timings=dict(timings) if timings is not None else None,
        )
