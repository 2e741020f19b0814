"""
Exact arithmetic in quadratic orders Z[ω] with ω² = d + eω.

Elements carry their presentation; mixing presentations is an error, never an
implicit conversion. The Ramanujan–Nagell order is (d, e) = (−2, 1), where
ω = (1 + √−7)/2 is the θ of the classical argument.
"""
from dataclasses import dataclass
from typing import Optional, Union

from loguru import logger

from .exceptions import DegeneratePresentationError, DivisionByZeroError, ParamsMismatchError, PreconditionError
from .utils import exact_sqrt


@dataclass(frozen=True, slots=True)
class RingParams:
    """Presentation ω² = d + eω of a rank-2 order."""
    d: int
    e: int

    def __post_init__(self) -> None:
        disc = self.e * self.e + 4 * self.d
        if exact_sqrt(disc) is not None:
            logger.warning(f"[RingCore] rejected split presentation d={self.d} e={self.e} disc={disc}")
            raise DegeneratePresentationError(
                f"e^2 + 4d = {disc} is a perfect square; Z[ω] would not be a domain"
            )

    @property
    def discriminant(self) -> int:
        return self.e * self.e + 4 * self.d

    @property
    def is_imaginary(self) -> bool:
        return self.discriminant < 0

    def __str__(self) -> str:
        return f"ω² = {self.d} + {self.e}ω"


RN_PARAMS = RingParams(d=-2, e=1)
SQRT_ORDER_PARAMS = RingParams(d=-7, e=0)

Scalar = Union[int, "QuadInt"]


@dataclass(frozen=True, slots=True)
class QuadInt:
    """The element a + bω of Z[ω]."""
    a: int
    b: int
    params: RingParams = RN_PARAMS

    def _coerce(self, other: Scalar) -> "QuadInt":
        if isinstance(other, QuadInt):
            if other.params != self.params:
                raise ParamsMismatchError(f"cannot combine elements of [{self.params}] and [{other.params}]")
            return other
        if isinstance(other, int):
            return QuadInt(other, 0, self.params)
        raise TypeError(f"unsupported operand {type(other).__name__}")

    def __add__(self, other: Scalar) -> "QuadInt":
        o = self._coerce(other)
        return QuadInt(self.a + o.a, self.b + o.b, self.params)

    __radd__ = __add__

    def __sub__(self, other: Scalar) -> "QuadInt":
        o = self._coerce(other)
        return QuadInt(self.a - o.a, self.b - o.b, self.params)

    def __rsub__(self, other: Scalar) -> "QuadInt":
        return self._coerce(other) - self

    def __neg__(self) -> "QuadInt":
        return QuadInt(-self.a, -self.b, self.params)

    def __mul__(self, other: Scalar) -> "QuadInt":
        o = self._coerce(other)
        d, e = self.params.d, self.params.e
        bb = self.b * o.b
        return QuadInt(
            self.a * o.a + d * bb,
            self.a * o.b + o.a * self.b + e * bb,
            self.params,
        )

    __rmul__ = __mul__

    def __pow__(self, m: int) -> "QuadInt":
        if not isinstance(m, int) or m < 0:
            raise PreconditionError(f"exponent must be a non-negative integer, got {m!r}")
        result = QuadInt(1, 0, self.params)
        base = self
        while m:
            if m & 1:
                result = result * base
            m >>= 1
            if m:
                base = base * base
        return result

    def conj(self) -> "QuadInt":
        # ω ↦ e − ω, the other root of t² − et − d
        return QuadInt(self.a + self.params.e * self.b, -self.b, self.params)

    def norm(self) -> int:
        a, b = self.a, self.b
        return a * a + self.params.e * a * b - self.params.d * b * b

    def trace(self) -> int:
        return 2 * self.a + self.params.e * self.b

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def coords(self) -> tuple:
        return (self.a, self.b)

    def __str__(self) -> str:
        sign = "-" if self.b < 0 else "+"
        return f"{self.a} {sign} {abs(self.b)}ω"


def one(params: RingParams = RN_PARAMS) -> QuadInt:
    return QuadInt(1, 0, params)


def zero(params: RingParams = RN_PARAMS) -> QuadInt:
    return QuadInt(0, 0, params)


def theta() -> QuadInt:
    """θ = (1 + √−7)/2, the generator ω of the (−2, 1) order."""
    return QuadInt(0, 1, RN_PARAMS)


def theta_prime() -> QuadInt:
    """θ′ = 1 − θ."""
    return QuadInt(1, -1, RN_PARAMS)


def sqrt_minus_seven() -> QuadInt:
    """√−7 = 2ω − 1."""
    return QuadInt(-1, 2, RN_PARAMS)


def add(x: QuadInt, y: QuadInt) -> QuadInt:
    return x + y


def sub(x: QuadInt, y: QuadInt) -> QuadInt:
    return x - y


def neg(x: QuadInt) -> QuadInt:
    return -x


def mul(x: QuadInt, y: QuadInt) -> QuadInt:
    return x * y


def conj(x: QuadInt) -> QuadInt:
    return x.conj()


def norm(x: QuadInt) -> int:
    return x.norm()


def trace(x: QuadInt) -> int:
    return x.trace()


def power(x: QuadInt, m: int) -> QuadInt:
    """x**m by binary exponentiation; power(x, 0) is 1."""
    return x ** m


def exact_div(x: QuadInt, y: QuadInt) -> Optional[QuadInt]:
    """
    Return q with x == q*y when q lies in Z[ω], else None.

    Uses x·conj(y) = q·N(y): one multiplication, one norm and two
    integrality checks.
    """
    x._coerce(y)
    if y.is_zero():
        raise DivisionByZeroError(f"exact_div by zero in [{y.params}]")
    n = y.norm()
    scaled = x * y.conj()
    if scaled.a % n or scaled.b % n:
        return None
    return QuadInt(scaled.a // n, scaled.b // n, x.params)


def divides(y: QuadInt, x: QuadInt) -> bool:
    return exact_div(x, y) is not None


def from_sqrt_order(x: QuadInt) -> QuadInt:
    """
    Map a + b√−7 from Z[√−7] (presentation (−7, 0)) into the (−2, 1) order
    via √−7 ↦ 2ω − 1.
    """
    if x.params != SQRT_ORDER_PARAMS:
        raise ParamsMismatchError(f"expected an element of [{SQRT_ORDER_PARAMS}], got [{x.params}]")
    return QuadInt(x.a - x.b, 2 * x.b, RN_PARAMS)
