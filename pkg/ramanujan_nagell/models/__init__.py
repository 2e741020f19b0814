from .records import (
    ValuationField,
    SolutionPair,
    SolutionRecord,
    EvenCaseRecord,
    ThetaWitness,
    SignExclusionRecord,
    TraceSequenceCheck,
    UniquenessReport,
    LemmaSweep,
    SweepSummary,
    RingInvariants,
    ValuationPair,
)
from .config import VerifyConfig, CliConfig
from .certificate import (
    CERTIFICATE_KEYS,
    Certificate,
    CertificateMeta,
    RawCertificate,
    ReplayResult,
)
from .outputs import (
    SearchOutput,
    ResiduesOutput,
    ThetaOutput,
    ValuationOutput,
    BinomialValuationOutput,
)
