from .version import __version__
from .ring import (
    RingParams,
    QuadInt,
    RN_PARAMS,
    SQRT_ORDER_PARAMS,
    add,
    sub,
    neg,
    mul,
    conj,
    norm,
    trace,
    power,
    exact_div,
    divides,
    from_sqrt_order,
    one,
    zero,
    theta,
    theta_prime,
    sqrt_minus_seven,
)
from .invariants import (
    UnitSet,
    discriminant,
    trace_matrix,
    elements_of_norm,
    enumerate_units,
    unit_orders,
    irreducible_by_norm,
    associated,
    minkowski_pid_check,
    summarize,
)
from .padic import Valuation, INFINITE, v_p, factor_out, lte_pow_sub_one, pow_mod
from .binomial import (
    BinomialPair,
    binom_sums,
    a_prime,
    theta_difference_via_B,
    shift_identity_check,
    valuation_lemma_B,
    valuation_lemma_A_prime,
)
from .engine import (
    ProofEngine,
    brute_force_search,
    even_case,
    residue_classes_mod_42,
    verify_theta_equation,
    sign_exclusion,
    common_factor_exclusion,
    trace_sequence,
    check_trace_sequence,
    factorization_witness,
    uniqueness_contradiction,
    full_verify,
)
from .certificate import CertificateChecker, dump_certificate, write_certificate, read_certificate, replay_certificate
from .models import Certificate, RawCertificate, ReplayResult, SolutionPair, UniquenessReport, VerifyConfig
from .exceptions import (
    RamanujanNagellError,
    ParamsMismatchError,
    DegeneratePresentationError,
    DivisionByZeroError,
    PreconditionError,
    InternalInconsistencyError,
    CertificateError,
    UsageError,
)
