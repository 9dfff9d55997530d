"""
Report service: JSON serialization and schema validation of run reports
"""

import json
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, ConfigDict, ValidationError
import structlog

from ..exceptions import ReportSchemaError
from ..models.report import RunReport


class _Strict(BaseModel):
    model_config = ConfigDict(extra='forbid')


class RunSchema(_Strict):
    n: int
    k: int
    ell: int
    m: int
    mode: str
    kind: str
    seed: int


class ParametersSchema(_Strict):
    n: int
    k: int
    ell: int
    p: float
    mode: str
    regime: str
    rho: Optional[float] = None
    r: Optional[float] = None
    eps: Optional[float] = None
    f0: Optional[float] = None
    p0: Optional[float] = None
    n0: Optional[float] = None
    diagnostics: List[str] = []


class InstanceSchema(_Strict):
    id: int
    aux_edges: int
    harvest: int


class TotalsSchema(_Strict):
    items: int
    edges_used: int
    coverage: float
    unlabeled: int
    labeled_unpacked: int


class AuditSchema(_Strict):
    property: str
    mode: str
    verdict: str
    witness: List[List[int]] = []
    slack: Optional[float] = None
    measured: Optional[float] = None
    bound: Optional[float] = None
    samples: Optional[int] = None
    details: Dict[str, Any] = {}


class RunReportSchema(_Strict):
    run: RunSchema
    params_theoretical: ParametersSchema
    params_used: ParametersSchema
    instances: List[InstanceSchema]
    totals: TotalsSchema
    audits: List[AuditSchema]
    timings: Optional[Dict[str, float]] = None


class ReportService:
    """Service for emitting and parsing run reports"""

    def __init__(self):
        self.logger = structlog.get_logger()

    def emit_report(self, report: RunReport, include_timings: bool = True) -> str:
        """Stable key order, full float precision."""
        document = report.to_dict(include_timings=include_timings)
        self.validate_document(document)
        return json.dumps(document, indent=2, allow_nan=False) + "\n"

    def validate_document(self, document: Dict[str, Any]) -> RunReportSchema:
        try:
            return RunReportSchema.model_validate(document)
        except ValidationError as e:
            raise ReportSchemaError(f"Report does not match the schema: {e}")

    def parse_report(self, text: str) -> RunReport:
        try:
            document = json.loads(text)
        except json.JSONDecodeError as e:
            raise ReportSchemaError(f"Invalid JSON report: {e}")
        self.validate_document(document)
        return RunReport.from_dict(document)

    def emit_audits(self, audits) -> str:
        """Standalone audit document for the audit command"""
        document = {'audits': [a.to_dict() for a in audits]}
        return json.dumps(document, indent=2, allow_nan=False) + "\n"
