from typing import Any, Dict, List, Literal, Optional

from pydantic import BaseModel, ConfigDict

from .config import VerifyConfig
from .records import (
    EvenCaseRecord,
    RingInvariants,
    SignExclusionRecord,
    SolutionRecord,
    SweepSummary,
    ThetaWitness,
    TraceSequenceCheck,
    UniquenessReport,
)

CERTIFICATE_KEYS = (
    "meta",
    "solutions",
    "even_case",
    "residue_classes",
    "theta_witnesses",
    "sign_exclusion",
    "trace_sequence_check",
    "uniqueness",
    "sweeps",
    "status",
)


class CertificateMeta(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    engine: str
    version: str
    equation: str = "x^2 + 7 = 2^n"
    parameters: VerifyConfig
    ring: Optional[RingInvariants]
    failed_checks: List[str] = []
    digest: str = ""


class Certificate(BaseModel):
    """
    Structured record of every verified proof step; the JSON top-level keys are fixed.
    A step that raised is recorded as null and named in meta.failed_checks.
    """
    model_config = ConfigDict(frozen=True, extra="forbid")

    meta: CertificateMeta
    solutions: List[SolutionRecord]
    even_case: Optional[EvenCaseRecord]
    residue_classes: List[int]
    theta_witnesses: List[ThetaWitness]
    sign_exclusion: Optional[SignExclusionRecord]
    trace_sequence_check: Optional[TraceSequenceCheck]
    uniqueness: List[UniquenessReport]
    sweeps: SweepSummary
    status: Literal["PASS", "FAIL"]

    @property
    def passed(self) -> bool:
        return self.status == "PASS"


class RawCertificate(BaseModel):
    """
    Fallback for certificate files that fail strict validation.
    Keeps the original data for inspection; replaying one is always a FAIL.
    """
    model_config = {"extra": "allow"}

    raw_payload: Any
    parse_error: str


class ReplayResult(BaseModel):
    status: Literal["PASS", "FAIL"]
    mismatches: List[str] = []
    parse_error: Optional[str] = None
    recomputed: Optional[Dict[str, Any]] = None

    @property
    def passed(self) -> bool:
        return self.status == "PASS"
