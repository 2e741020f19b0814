from typing import Annotated, List, Literal, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, PlainSerializer, PlainValidator, model_validator

from ..padic import Valuation

ValuationField = Annotated[
    Valuation,
    PlainValidator(Valuation.from_json),
    PlainSerializer(lambda v: v.to_json()),
]

FactorLabel = Literal["theta^m", "-theta^m", "theta'^m", "-theta'^m"]


class Record(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")


class SolutionPair(Record):
    """A solution of x² + 7 = 2ⁿ with x >= 0; −x is a solution too."""
    x: int = Field(ge=0)
    n: int = Field(ge=1)

    @model_validator(mode="after")
    def holds_exactly(self):
        if self.x * self.x + 7 != 1 << self.n:
            raise ValueError(f"{self.x}^2 + 7 != 2^{self.n}")
        return self


class SolutionRecord(Record):
    """
    A certified solution plus the route that predicts it:
    'even_case', 'base_case' (m = 1) or 'theta_witness' (odd m >= 3).
    """
    x: int
    n: int
    signs: Literal["+-"] = "+-"
    route: Literal["even_case", "base_case", "theta_witness", "unexplained"]
    m: Optional[int] = None
    factorization: Optional[FactorLabel] = None


class EvenCaseRecord(Record):
    factor_pairs: List[Tuple[int, int]]
    half_power: int
    two_pow_one_plus_half: int
    half_exponent: int
    solution: SolutionPair
    ok: bool


class ThetaWitness(Record):
    m: int
    b_m: int
    s: int
    sign: Literal["+", "-", "none"]
    holds: bool
    trace: int
    abs_trace: int
    residue_mod_42: int


class SignExclusionRecord(Record):
    m_max: int
    checked: int
    theta_m_congruent_theta: bool
    theta_prime_not_zero: bool
    common_factor_excluded: bool
    failures: List[int] = []
    ok: bool


class TraceSequenceCheck(Record):
    m_max: int
    pow_cross_check_max: int
    period_mod_7: List[int]
    pattern_holds: bool
    never_divisible_by_7: bool
    matches_ring_traces: bool
    ok: bool


class UniquenessReport(Record):
    m1: int
    k: int
    d: int
    l: ValuationField
    p: int
    v_p: ValuationField
    v_b: ValuationField
    a_prime_divisible: bool
    v_two_pow_minus_one: ValuationField
    v_lhs: ValuationField
    v_rhs_bound: ValuationField
    contradiction: bool

    @model_validator(mode="after")
    def contradiction_matches_valuations(self):
        if self.contradiction != (self.v_lhs < self.v_rhs_bound):
            raise ValueError("contradiction flag disagrees with v_lhs < v_rhs_bound")
        return self


class LemmaSweep(Record):
    bound: int
    checked: int
    holds_all: bool
    failures: List[Tuple[int, ...]] = []


class SweepSummary(Record):
    n_max: int
    k_max: int
    d_sweep: int
    theta_scan_max: int
    valuation_b_multiples_of_42: LemmaSweep
    valuation_b_exploratory: LemmaSweep
    a_prime_divisibility: LemmaSweep
    binomial_vs_ring: LemmaSweep
    lte_agreement: LemmaSweep
    shift_identity: LemmaSweep
    uniqueness_bound_note: str


class RingInvariants(Record):
    d: int
    e: int
    discriminant: int
    units: List[Tuple[int, int]]
    unit_orders: List[int]
    theta_norm: int
    theta_irreducible: bool
    theta_prime_irreducible: bool
    theta_theta_prime_associated: bool
    minkowski_hypothesis: bool
    ok: bool


class ValuationPair(Record):
    b: ValuationField
    d: ValuationField


__all__ = [
    "ValuationField",
    "SolutionPair",
    "SolutionRecord",
    "EvenCaseRecord",
    "ThetaWitness",
    "SignExclusionRecord",
    "TraceSequenceCheck",
    "UniquenessReport",
    "LemmaSweep",
    "SweepSummary",
    "RingInvariants",
    "ValuationPair",
]
