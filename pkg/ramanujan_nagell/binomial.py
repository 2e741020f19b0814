"""
Binomial sums attached to (1 + √−7)^d and the valuation lemmas that feed the
uniqueness contradiction.

    (1 + √−7)^d = A_d + B_d·√−7
    A_d = Σ_j C(d, 2j)(−7)^j,  B_d = Σ_j C(d, 2j+1)(−7)^j,  A_d = 1 − 7·A′_d
"""
from dataclasses import dataclass
from typing import Iterator, Tuple

from loguru import logger

from .exceptions import InternalInconsistencyError, PreconditionError
from .padic import Valuation, v_p
from .ring import QuadInt, sqrt_minus_seven, theta, theta_prime


@dataclass(frozen=True, slots=True)
class BinomialPair:
    d: int
    a_part: int
    b_part: int

    def as_element(self) -> QuadInt:
        """A_d + B_d·(2ω − 1) in the (−2, 1) order."""
        return self.a_part + self.b_part * sqrt_minus_seven()


def binomial_row(d: int) -> Iterator[int]:
    """C(d, 0), ..., C(d, d), each from the previous by a running product."""
    c = 1
    yield c
    for k in range(d):
        c = c * (d - k) // (k + 1)
        yield c


def binom_sums(d: int) -> BinomialPair:
    if d < 1:
        raise PreconditionError(f"d must be positive, got {d}")
    a_part = 0
    b_part = 0
    seven_pow = 1
    for k, c in enumerate(binomial_row(d)):
        if k % 2 == 0:
            a_part += c * seven_pow
        else:
            b_part += c * seven_pow
            seven_pow *= -7
    return BinomialPair(d=d, a_part=a_part, b_part=b_part)


def a_prime(d: int) -> int:
    """A′_d = (1 − A_d)/7, integral because every j ≥ 1 term of A_d carries a 7."""
    numerator = 1 - binom_sums(d).a_part
    if numerator % 7:
        logger.error(f"[Binomial] A_{d} is not 1 mod 7")
        raise InternalInconsistencyError(f"7 does not divide 1 - A_{d}")
    return numerator // 7


def theta_difference_via_B(m: int) -> Tuple[int, int]:
    """
    Return (B_m, s) where θ^m − θ′^m = s·√−7 in the ring.

    θ^m − θ′^m = b·(2ω − 1) when θ^m = a + bω, so s is the ω-coordinate of
    θ^m. The expansion identity B_m = s·2^(m−1) holds for every odd m.
    """
    if m < 1 or m % 2 == 0:
        raise PreconditionError(f"m must be a positive odd integer, got {m}")
    power = theta() ** m
    difference = power - power.conj()
    s = power.b
    if difference != s * sqrt_minus_seven():
        raise InternalInconsistencyError(f"θ^{m} − θ′^{m} is not a multiple of √−7")
    b_m = binom_sums(m).b_part
    if b_m != s << (m - 1):
        logger.error(f"[Binomial] expansion identity failed at m={m}: B={b_m} s={s}")
        raise InternalInconsistencyError(f"B_{m} != s·2^{m - 1} (B={b_m}, s={s})")
    return b_m, s


def shift_identity_check(m1: int, d: int) -> bool:
    """
    2^d·(θ^(m1+d) − θ′^(m1+d)) == A_d·(θ^m1 − θ′^m1) + Tr(θ^m1)·B_d·√−7,
    checked as ring elements.
    """
    if d < 1:
        raise PreconditionError(f"d must be positive, got {d}")
    t, tp = theta(), theta_prime()
    base, base_p = t ** m1, tp ** m1
    lhs = (1 << d) * (base * t ** d - base_p * tp ** d)
    pair = binom_sums(d)
    rhs = pair.a_part * (base - base_p) + (base.trace() * pair.b_part) * sqrt_minus_seven()
    holds = lhs == rhs
    if not holds:
        logger.warning(f"[Binomial] shift identity failed for m1={m1} d={d}")
    return holds


def valuation_lemma_B(d: int) -> Tuple[Valuation, Valuation]:
    """(v₇(B_d), v₇(d))."""
    return v_p(7, binom_sums(d).b_part), v_p(7, d)


def valuation_lemma_A_prime(d: int) -> bool:
    """7^v₇(d) divides A′_d."""
    l = v_p(7, d).value
    return a_prime(d) % 7 ** l == 0
