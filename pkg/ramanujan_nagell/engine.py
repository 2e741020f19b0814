"""
Proof-skeleton engine for x² + 7 = 2ⁿ.

Runs the brute-force search, the even case, the sign argument, the mod-42
reduction, the theta-equation witnesses, the trace recurrence and the
per-class 7-adic uniqueness contradictions, and assembles a Certificate.
"""
import json
import uuid
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Iterable, List, Optional, Sequence, Set, Tuple, TypeVar

from loguru import logger

from .binomial import (
    a_prime,
    binom_sums,
    shift_identity_check,
    theta_difference_via_B,
    valuation_lemma_A_prime,
    valuation_lemma_B,
)
from .exceptions import InternalInconsistencyError, PreconditionError, RamanujanNagellError
from .invariants import summarize
from .models import (
    Certificate,
    CertificateMeta,
    EvenCaseRecord,
    LemmaSweep,
    SignExclusionRecord,
    SolutionPair,
    SolutionRecord,
    SweepSummary,
    ThetaWitness,
    TraceSequenceCheck,
    UniquenessReport,
    VerifyConfig,
)
from .padic import Valuation, factor_out, lte_pow_sub_one, pow_mod, v_p
from .ring import QuadInt, exact_div, sqrt_minus_seven, theta, theta_prime
from .utils import digest_of, exact_sqrt, split_power_of_two
from .version import __version__

ENGINE_NAME = "ramanujan-nagell"
EXPECTED_RESIDUES = [3, 5, 13]
TRACE_PERIOD_MOD_7 = (2, 1, 4)

T = TypeVar("T")
R = TypeVar("R")


def brute_force_search(n_max: int) -> List[SolutionPair]:
    """All (x, n) with x >= 0, n <= n_max and 2ⁿ − 7 a perfect square, sorted by n."""
    if n_max < 1:
        raise PreconditionError(f"n_max must be positive, got {n_max}")
    found = []
    for n in range(1, n_max + 1):
        x = exact_sqrt((1 << n) - 7)
        if x is not None:
            found.append(SolutionPair(x=x, n=n))
    logger.debug(f"[ProofEngine] search n<={n_max} found {[(s.x, s.n) for s in found]}")
    return found


def even_case() -> EvenCaseRecord:
    """
    n even: (2^(n/2) + x)(2^(n/2) − x) = 7 with both factors positive and
    the first one larger, so the only factor pair is 7 × 1.
    """
    target = 7
    pairs = [(u, target // u) for u in range(1, target + 1) if target % u == 0 and u > target // u]
    solutions = []
    record = {}
    for u, v in pairs:
        if (u + v) % 2:
            continue
        half_power, x = (u + v) // 2, (u - v) // 2
        k, odd = split_power_of_two(half_power)
        if odd != 1:
            continue
        solutions.append(SolutionPair(x=x, n=2 * k))
        record = dict(half_power=half_power, two_pow_one_plus_half=u + v, half_exponent=k)
    ok = len(pairs) == 1 and len(solutions) == 1
    if not ok:
        logger.warning(f"[ProofEngine] even case produced pairs={pairs} solutions={solutions}")
        raise InternalInconsistencyError("even case did not reduce to a single solution")
    return EvenCaseRecord(factor_pairs=pairs, solution=solutions[0], ok=ok, **record)


def residue_classes_mod_42() -> List[int]:
    """Odd r in 0..41 with −2^(r−1) ≡ r (mod 7)."""
    return [r for r in range(1, 42, 2) if (-pow_mod(2, r - 1, 7) - r) % 7 == 0]


def _require_odd(m: int, minimum: int = 1) -> None:
    if m < minimum or m % 2 == 0:
        raise PreconditionError(f"m must be odd and >= {minimum}, got {m}")


def verify_theta_equation(m: int) -> ThetaWitness:
    """
    θ^m − θ′^m == 1 − 2ω (that is −√−7), with the trace a_m = Tr(θ^m) whose
    absolute value is the candidate x.
    """
    _require_odd(m)
    power = theta() ** m
    difference = power - power.conj()
    holds = difference == -sqrt_minus_seven()
    b_m, s = theta_difference_via_B(m)
    sign = "-" if s == -1 else "+" if s == 1 else "none"
    a_m = power.trace()
    return ThetaWitness(
        m=m, b_m=b_m, s=s, sign=sign, holds=holds, trace=a_m, abs_trace=abs(a_m), residue_mod_42=m % 42
    )


def sign_exclusion(m: int) -> bool:
    """
    θ′² | θ^m − θ (θ^m ≡ θ mod θ′²) while θ′² ∤ θ′; together they rule out
    the positive sign θ^m − θ′^m = +√−7.
    """
    _require_odd(m, minimum=3)
    t, tp = theta(), theta_prime()
    modulus = tp * tp
    congruent = exact_div(t ** m - t, modulus) is not None
    not_zero = exact_div(tp, modulus) is None
    return congruent and not_zero


def common_factor_exclusion() -> bool:
    """Neither θ nor θ′ divides √−7, so (x ± √−7)/2 share no prime factor."""
    root = sqrt_minus_seven()
    return exact_div(root, theta()) is None and exact_div(root, theta_prime()) is None


def trace_sequence(m_max: int) -> List[int]:
    """a_0..a_{m_max} with a_0 = 2, a_1 = 1, a_m = a_{m−1} − 2a_{m−2}."""
    if m_max < 2:
        raise PreconditionError(f"m_max must be at least 2, got {m_max}")
    seq = [2, 1]
    for _ in range(2, m_max + 1):
        seq.append(seq[-1] - 2 * seq[-2])
    return seq


def check_trace_sequence(m_max: int, pow_max: int) -> TraceSequenceCheck:
    seq = trace_sequence(m_max)
    residues = [a % 7 for a in seq]
    pattern = all(r == TRACE_PERIOD_MOD_7[i % 3] for i, r in enumerate(residues))
    never_zero = 0 not in residues
    t = theta()
    limit = min(pow_max, m_max)
    matches = all((t ** m).trace() == seq[m] for m in range(limit + 1))
    return TraceSequenceCheck(
        m_max=m_max,
        pow_cross_check_max=limit,
        period_mod_7=residues[:3],
        pattern_holds=pattern,
        never_divisible_by_7=never_zero,
        matches_ring_traces=matches,
        ok=pattern and never_zero and matches,
    )


def factorization_witness(x: int, m: int) -> Optional[str]:
    """Which of ±θ^m, ±θ′^m equals (x + √−7)/2 = ((x − 1)/2) + ω."""
    if x % 2 == 0:
        return None
    target = QuadInt((x - 1) // 2, 1)
    tm, tpm = theta() ** m, theta_prime() ** m
    for label, candidate in (("theta^m", tm), ("-theta^m", -tm), ("theta'^m", tpm), ("-theta'^m", -tpm)):
        if candidate == target:
            return label
    return None


def uniqueness_contradiction(m1: int, k: int) -> UniquenessReport:
    """
    A second theta-equation solution at m1 + 42k would force
    P·B_d = A_d − 2^d with d = 42k and P = Tr(θ^m1). The left side has
    7-adic valuation exactly l = v₇(d); the right side has valuation at
    least l + 1.
    """
    if k < 1:
        raise PreconditionError(f"k must be positive, got {k}")
    if not verify_theta_equation(m1).holds:
        raise PreconditionError(f"m1={m1} does not satisfy the theta equation")
    d = 42 * k
    l = v_p(7, d)
    p = (theta() ** m1).trace()
    v_trace = v_p(7, p)
    pair = binom_sums(d)
    v_b = v_p(7, pair.b_part)
    a_prime_d = a_prime(d)
    a_div = a_prime_d % 7 ** l.value == 0
    # 2^d − 1 = 64^(d/6) − 1
    v_two = lte_pow_sub_one(7, 64, d // 6)
    v_lhs = v_trace + v_b
    v_rhs_bound = min(v_two, Valuation(1) + v_p(7, a_prime_d))
    direct = v_p(7, pair.a_part - (1 << d))
    if direct < v_rhs_bound:
        raise InternalInconsistencyError(f"v7(A_d - 2^d) = {direct} below its certified bound {v_rhs_bound} at d={d}")
    report = UniquenessReport(
        m1=m1,
        k=k,
        d=d,
        l=l,
        p=p,
        v_p=v_trace,
        v_b=v_b,
        a_prime_divisible=a_div,
        v_two_pow_minus_one=v_two,
        v_lhs=v_lhs,
        v_rhs_bound=v_rhs_bound,
        contradiction=v_lhs < v_rhs_bound,
    )
    if not report.contradiction:
        logger.warning(f"[ProofEngine] no contradiction at m1={m1} k={k}: {report}")
    return report


def _step_error(step: str, error: RamanujanNagellError) -> None:
    logger.error(f"[ProofEngine] {step} raised {type(error).__name__}: {error}")


def _uniqueness_task(args: Tuple[int, int]) -> Tuple[int, int, Optional[UniquenessReport]]:
    m1, k = args
    try:
        return m1, k, uniqueness_contradiction(m1, k)
    except RamanujanNagellError as e:
        _step_error(f"uniqueness m1={m1} k={k}", e)
        return m1, k, None


def _binomial_task(d: int) -> Tuple[int, bool, bool, bool]:
    try:
        v_b, v_d = valuation_lemma_B(d)
        two_theta_pow = (2 * theta()) ** d
        return d, v_b == v_d, valuation_lemma_A_prime(d), binom_sums(d).as_element() == two_theta_pow
    except RamanujanNagellError as e:
        _step_error(f"binomial sweep d={d}", e)
        return d, False, False, False


def _lte_task(k: int) -> Tuple[int, bool]:
    try:
        formula = lte_pow_sub_one(7, 64, k)
        direct = factor_out(7, (1 << (6 * k)) - 1)
    except RamanujanNagellError as e:
        _step_error(f"lte sweep k={k}", e)
        return k, False
    return k, formula == direct == Valuation(1) + v_p(7, k)


def _shift_task(args: Tuple[int, int]) -> Tuple[int, int, bool]:
    m1, d = args
    try:
        return m1, d, shift_identity_check(m1, d)
    except RamanujanNagellError as e:
        _step_error(f"shift identity m1={m1} d={d}", e)
        return m1, d, False


def _fan_out(fn: Callable[[T], R], items: Sequence[T], workers: int) -> List[R]:
    if workers <= 1 or len(items) < 2:
        return [fn(item) for item in items]
    chunk = max(1, len(items) // (workers * 4))
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items, chunksize=chunk))


def _sweep(bound: int, checked: int, failures: Iterable[Tuple[int, ...]]) -> LemmaSweep:
    failures = sorted(failures)
    return LemmaSweep(bound=bound, checked=checked, holds_all=not failures, failures=failures)


class ProofEngine:
    """
    Runs every step of the proof skeleton under one VerifyConfig.
    A failed check never raises: it lands in the certificate and flips the
    status to FAIL.
    """
    def __init__(self, config: Optional[VerifyConfig] = None, workers: int = 1) -> None:
        self.config = config or VerifyConfig()
        self.workers = max(1, workers)
        self._log = logger.bind(run_id=uuid.uuid4().hex[:16])

    def run(self) -> Certificate:
        cfg = self.config
        log = self._log
        log.info(f"[ProofEngine] verifying with {cfg.model_dump()} workers={self.workers}")
        failed: List[str] = []

        ring = self._step("meta.ring", failed, summarize)
        if ring is not None and not ring.ok:
            failed.append("meta.ring")

        found = self._step("solutions", failed, lambda: brute_force_search(cfg.n_max))
        even = self._step("even_case", failed, even_case)

        sign = self._step("sign_exclusion", failed, self._sign_exclusion)
        if sign is not None and not sign.ok:
            failed.append("sign_exclusion")

        residues = self._step("residue_classes", failed, residue_classes_mod_42)
        if residues is not None and residues != EXPECTED_RESIDUES:
            failed.append("residue_classes")
        residues = residues or []

        witnesses, witness_ok = self._theta_witnesses(residues)
        if not witness_ok:
            failed.append("theta_witnesses")
        witness_ms = sorted(w.m for w in witnesses if w.holds)

        trace_check = self._step(
            "trace_sequence_check", failed, lambda: check_trace_sequence(cfg.trace_max, cfg.trace_pow_max)
        )
        if trace_check is not None and not trace_check.ok:
            failed.append("trace_sequence_check")

        grid = [(m1, k) for m1 in witness_ms for k in range(1, cfg.k_max + 1)]
        outcomes = sorted(_fan_out(_uniqueness_task, grid, self.workers), key=lambda o: (o[0], o[1]))
        uniqueness = [report for _, _, report in outcomes if report is not None]
        for m1, k, report in outcomes:
            if report is None or not (
                report.contradiction and report.v_p == 0 and report.v_b == report.l and report.a_prime_divisible
            ):
                failed.append(f"uniqueness[m1={m1},k={k}]")

        sweeps = self._sweeps()
        for name in (
            "valuation_b_multiples_of_42",
            "a_prime_divisibility",
            "binomial_vs_ring",
            "lte_agreement",
            "shift_identity",
        ):
            if not getattr(sweeps, name).holds_all:
                failed.append(f"sweeps.{name}")

        solutions: List[SolutionRecord] = []
        if found is not None:
            explained = self._step(
                "solutions", failed, lambda: self._explain_solutions(found, even, witnesses, witness_ms)
            )
            if explained is not None:
                solutions, solutions_ok = explained
                if not solutions_ok:
                    failed.append("solutions")

        meta = CertificateMeta(
            engine=ENGINE_NAME,
            version=__version__,
            parameters=cfg,
            ring=ring,
            failed_checks=failed,
        )
        certificate = Certificate(
            meta=meta,
            solutions=solutions,
            even_case=even,
            residue_classes=residues,
            theta_witnesses=witnesses,
            sign_exclusion=sign,
            trace_sequence_check=trace_check,
            uniqueness=uniqueness,
            sweeps=sweeps,
            status="FAIL" if failed else "PASS",
        )
        certificate = seal(certificate)
        if failed:
            log.warning(f"[ProofEngine] FAIL: {failed}")
        else:
            log.info(f"[ProofEngine] PASS with {len(solutions)} solutions")
        return certificate

    def _step(self, name: str, failed: List[str], fn: Callable[[], R]) -> Optional[R]:
        """Runs one step; a library error marks it failed and leaves its record empty."""
        try:
            return fn()
        except RamanujanNagellError as e:
            self._log.error(f"[ProofEngine] {name} raised {type(e).__name__}: {e}")
            failed.append(name)
            return None

    def _sign_exclusion(self) -> SignExclusionRecord:
        m_max = min(self.config.sign_max, self.config.n_max)
        ms = list(range(3, m_max + 1, 2))
        outcomes = {m: sign_exclusion(m) for m in ms}
        failures = [m for m, ok in outcomes.items() if not ok]
        not_zero = exact_div(theta_prime(), theta_prime() * theta_prime()) is None
        coprime = common_factor_exclusion()
        return SignExclusionRecord(
            m_max=m_max,
            checked=len(ms),
            theta_m_congruent_theta=not failures,
            theta_prime_not_zero=not_zero,
            common_factor_excluded=coprime,
            failures=failures,
            ok=not failures and not_zero and coprime,
        )

    def _theta_witnesses(self, residues: List[int]) -> Tuple[List[ThetaWitness], bool]:
        ms: Set[int] = set(range(1, self.config.theta_scan_max + 1, 2)) | {r for r in residues if r % 2}
        witnesses = []
        broken = []
        for m in sorted(ms):
            try:
                witnesses.append(verify_theta_equation(m))
            except RamanujanNagellError as e:
                self._log.error(f"[ProofEngine] theta witness m={m} raised {type(e).__name__}: {e}")
                broken.append(m)
        holding = {w.m for w in witnesses if w.holds}
        in_classes = all(m % 42 in residues for m in holding)
        every_class = all(any(m % 42 == r for m in holding) for r in residues)
        base = next((w for w in witnesses if w.m == 1), None)
        ok = not broken and in_classes and every_class and base is not None and base.sign == "+"
        if not ok:
            self._log.warning(f"[ProofEngine] theta witnesses {sorted(holding)} do not match classes {residues}")
        return witnesses, ok

    def _sweeps(self) -> SweepSummary:
        cfg = self.config
        binomial = _fan_out(_binomial_task, list(range(1, cfg.d_sweep + 1)), self.workers)
        multiples = [42 * j for j in range(1, cfg.k_max + 1)]
        relied = _fan_out(_binomial_task, multiples, self.workers)
        lte = _fan_out(_lte_task, list(range(1, cfg.lte_k_max + 1)), self.workers)
        shift_grid = [(m1, d) for m1 in range(3, cfg.shift_m1_max + 1, 2) for d in range(1, cfg.shift_d_max + 1)]
        shift = _fan_out(_shift_task, shift_grid, self.workers)
        return SweepSummary(
            n_max=cfg.n_max,
            k_max=cfg.k_max,
            d_sweep=cfg.d_sweep,
            theta_scan_max=cfg.theta_scan_max,
            valuation_b_multiples_of_42=_sweep(multiples[-1], len(relied), [(d,) for d, eq, _, _ in relied if not eq]),
            valuation_b_exploratory=_sweep(cfg.d_sweep, len(binomial), [(d,) for d, eq, _, _ in binomial if not eq]),
            a_prime_divisibility=_sweep(cfg.d_sweep, len(binomial), [(d,) for d, _, ok, _ in binomial if not ok]),
            binomial_vs_ring=_sweep(cfg.d_sweep, len(binomial), [(d,) for d, _, _, ok in binomial if not ok]),
            lte_agreement=_sweep(cfg.lte_k_max, len(lte), [(k,) for k, ok in lte if not ok]),
            shift_identity=_sweep(cfg.shift_d_max, len(shift), [(m1, d) for m1, d, ok in shift if not ok]),
            uniqueness_bound_note=(
                f"uniqueness checked for d = 42k with 1 <= k <= {cfg.k_max} in each witnessed class; "
                "the unbounded claim rests on the 7-adic argument, not on this finite sweep"
            ),
        )

    def _explain_solutions(
            self,
            found: List[SolutionPair],
            even: Optional[EvenCaseRecord],
            witnesses: List[ThetaWitness],
            witness_ms: List[int],
    ) -> Tuple[List[SolutionRecord], bool]:
        """Match the search route against the structural route; both must give the same set."""
        n_max = self.config.n_max
        traces = {w.m: w.abs_trace for w in witnesses}
        predicted = set()
        if even is not None and even.solution.n <= n_max:
            predicted.add((even.solution.x, even.solution.n))
        if n_max >= 3 and 1 in traces:
            predicted.add((traces[1], 3))
        for m in witness_ms:
            if m + 2 <= n_max:
                predicted.add((traces[m], m + 2))

        records = []
        for sol in found:
            m = sol.n - 2
            if even is not None and (sol.x, sol.n) == (even.solution.x, even.solution.n):
                records.append(SolutionRecord(x=sol.x, n=sol.n, route="even_case"))
            elif m == 1 and traces.get(1) == sol.x:
                records.append(SolutionRecord(x=sol.x, n=sol.n, route="base_case", m=1))
            elif m in witness_ms and traces[m] == sol.x:
                records.append(
                    SolutionRecord(
                        x=sol.x, n=sol.n, route="theta_witness", m=m, factorization=factorization_witness(sol.x, m)
                    )
                )
            else:
                records.append(SolutionRecord(x=sol.x, n=sol.n, route="unexplained"))

        actual = {(s.x, s.n) for s in found}
        ok = actual == predicted and all(r.route != "unexplained" for r in records)
        ok = ok and all(r.factorization is not None for r in records if r.route == "theta_witness")
        if not ok:
            self._log.warning(f"[ProofEngine] search {sorted(actual)} vs predicted {sorted(predicted)}")
        return records, ok


def certificate_body(certificate: Certificate) -> dict:
    """JSON-ready body with the digest blanked and the status dropped."""
    body = json.loads(json.dumps(certificate.model_dump(mode="python")))
    body["meta"]["digest"] = ""
    body.pop("status", None)
    return body


def seal(certificate: Certificate) -> Certificate:
    digest = digest_of(certificate_body(certificate))
    return certificate.model_copy(update={"meta": certificate.meta.model_copy(update={"digest": digest})})


def full_verify(config: Optional[VerifyConfig] = None, workers: int = 1) -> Certificate:
    return ProofEngine(config, workers=workers).run()
