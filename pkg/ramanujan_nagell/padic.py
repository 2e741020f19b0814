"""
p-adic valuations of rational integers and the Lifting-the-Exponent step.
"""
from dataclasses import dataclass
from functools import total_ordering
from typing import Optional, Union

from loguru import logger
from sympy import isprime

from .exceptions import InternalInconsistencyError, PreconditionError

# a**n is checked by direct factor-out only below this many bits
LTE_DIRECT_BUDGET_BITS = 1 << 20


@total_ordering
@dataclass(frozen=True, slots=True)
class Valuation:
    """
    A p-adic valuation: a non-negative integer, or INFINITE (value None),
    which only arises from valuating 0.
    """
    value: Optional[int]

    def __post_init__(self) -> None:
        if self.value is not None and self.value < 0:
            raise PreconditionError(f"valuation must be non-negative, got {self.value}")

    @property
    def is_infinite(self) -> bool:
        return self.value is None

    def _other(self, other: Union["Valuation", int]) -> "Valuation":
        return other if isinstance(other, Valuation) else Valuation(other)

    def __add__(self, other: Union["Valuation", int]) -> "Valuation":
        o = self._other(other)
        if self.is_infinite or o.is_infinite:
            return INFINITE
        return Valuation(self.value + o.value)

    __radd__ = __add__

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int) and not isinstance(other, bool):
            return self.value == other
        if isinstance(other, Valuation):
            return self.value == other.value
        return NotImplemented

    def __lt__(self, other: Union["Valuation", int]) -> bool:
        o = self._other(other)
        if self.is_infinite:
            return False
        if o.is_infinite:
            return True
        return self.value < o.value

    def __hash__(self) -> int:
        return hash(self.value)

    def __str__(self) -> str:
        return "inf" if self.is_infinite else str(self.value)

    def to_json(self) -> Union[int, str]:
        return "inf" if self.is_infinite else self.value

    @classmethod
    def from_json(cls, raw: Union[int, str, "Valuation"]) -> "Valuation":
        if isinstance(raw, Valuation):
            return raw
        if raw == "inf":
            return INFINITE
        if isinstance(raw, bool) or not isinstance(raw, int):
            raise PreconditionError(f"not a valuation: {raw!r}")
        return cls(raw)


INFINITE = Valuation(None)


def _require_prime(p: int) -> None:
    if not isprime(p):
        raise PreconditionError(f"{p} is not prime")


def v_p(p: int, n: int) -> Valuation:
    """Exponent of the prime p in n; INFINITE for n = 0."""
    _require_prime(p)
    if n == 0:
        return INFINITE
    n = abs(n)
    k = 0
    # peel p^(2^j) chunks first so huge powers of p cost O(log k) divisions
    powers = [p]
    while n % powers[-1] == 0:
        n //= powers[-1]
        k += 1 << (len(powers) - 1)
        powers.append(powers[-1] * powers[-1])
    for j in range(len(powers) - 2, -1, -1):
        if n % powers[j] == 0:
            n //= powers[j]
            k += 1 << j
    return Valuation(k)


def factor_out(p: int, n: int) -> Valuation:
    """Plain repeated-division valuation; the independent check for v_p and LTE."""
    _require_prime(p)
    if n == 0:
        return INFINITE
    n = abs(n)
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return Valuation(k)


def lte_pow_sub_one(p: int, a: int, n: int, verify: bool = True) -> Valuation:
    """
    v_p(a**n − 1) = v_p(a − 1) + v_p(n) for an odd prime p with p | a − 1.

    The formula is checked against direct factor-out of a**n − 1 whenever that
    number stays under LTE_DIRECT_BUDGET_BITS; disagreement is a hard error.
    """
    _require_prime(p)
    if p == 2:
        raise PreconditionError("lte_pow_sub_one covers odd primes only")
    if n < 1:
        raise PreconditionError(f"n must be positive, got {n}")
    if (a - 1) % p != 0 or a == 1:
        raise PreconditionError(f"{p} must divide a - 1 (a={a}) with a != 1")
    claimed = v_p(p, a - 1) + v_p(p, n)
    if verify and abs(a).bit_length() * n <= LTE_DIRECT_BUDGET_BITS:
        direct = factor_out(p, a ** n - 1)
        if direct != claimed:
            logger.error(f"[PAdic] LTE mismatch p={p} a={a} n={n}: formula={claimed} direct={direct}")
            raise InternalInconsistencyError(
                f"LTE formula gives {claimed} but direct factor-out gives {direct} for p={p}, a={a}, n={n}"
            )
    return claimed


def pow_mod(base: int, exp: int, modulus: int) -> int:
    """base**exp mod modulus in [0, modulus), by binary exponentiation."""
    if modulus < 1:
        raise PreconditionError(f"modulus must be positive, got {modulus}")
    if exp < 0:
        raise PreconditionError(f"exponent must be non-negative, got {exp}")
    result = 1 % modulus
    base %= modulus
    while exp:
        if exp & 1:
            result = result * base % modulus
        base = base * base % modulus
        exp >>= 1
    return result
