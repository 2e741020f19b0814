"""
Computational analogues of the algebraic invariants of the order: discriminant,
unit group, irreducibility and non-association of θ and θ′, and the Minkowski
hypothesis behind class number one.
"""
from dataclasses import dataclass
from typing import List, Tuple

from loguru import logger
from sympy import isprime

from .exceptions import PreconditionError
from .models.records import RingInvariants
from .ring import RN_PARAMS, QuadInt, RingParams, exact_div, one
from .utils import exact_sqrt, isqrt

# certified rational lower bound: 333/106 < π
PI_LOWER_NUM = 333
PI_LOWER_DEN = 106


@dataclass(frozen=True)
class UnitSet:
    elements: Tuple[QuadInt, ...]

    def __post_init__(self) -> None:
        for u in self.elements:
            if u.norm() != 1:
                raise PreconditionError(f"{u} has norm {u.norm()}, not a unit")
        members = set(self.elements)
        if any(-u not in members for u in self.elements):
            raise PreconditionError("unit set is not closed under negation")

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, x: object) -> bool:
        return x in self.elements

    def __iter__(self):
        return iter(self.elements)


def trace_matrix(params: RingParams) -> List[List[int]]:
    """[[Tr(1), Tr(ω)], [Tr(ω), Tr(ω²)]] for the basis {1, ω}."""
    w = QuadInt(0, 1, params)
    return [
        [one(params).trace(), w.trace()],
        [w.trace(), (w * w).trace()],
    ]


def discriminant(params: RingParams) -> int:
    (t11, t12), (t21, t22) = trace_matrix(params)
    return t11 * t22 - t12 * t21


def _require_imaginary(params: RingParams) -> int:
    disc = discriminant(params)
    if disc >= 0:
        raise PreconditionError(f"[{params}] has discriminant {disc} >= 0; only imaginary orders are supported")
    return -disc


def elements_of_norm(params: RingParams, n: int) -> List[QuadInt]:
    """
    Every x with N(x) = n, by completing the square:
    (2a + eb)² + |disc|·b² = 4n, which bounds b and then fixes a.
    """
    abs_disc = _require_imaginary(params)
    if n < 0:
        return []
    e = params.e
    found = []
    b_max = isqrt(4 * n // abs_disc)
    for b in range(-b_max, b_max + 1):
        t = exact_sqrt(4 * n - abs_disc * b * b)
        if t is None:
            continue
        for root in {t, -t}:
            two_a = root - e * b
            if two_a % 2 == 0:
                found.append(QuadInt(two_a // 2, b, params))
    return sorted(found, key=lambda x: (x.b, x.a))


def enumerate_units(params: RingParams) -> UnitSet:
    units = elements_of_norm(params, 1)
    logger.debug(f"[Invariants] [{params}] has {len(units)} units")
    return UnitSet(tuple(units))


def unit_orders(params: RingParams) -> List[int]:
    """Multiplicative orders of the units (the roots of unity of the order)."""
    orders = set()
    for u in enumerate_units(params):
        x, k = u, 1
        while x != one(params):
            x, k = x * u, k + 1
        orders.add(k)
    return sorted(orders)


def irreducible_by_norm(x: QuadInt) -> bool:
    """
    True when |N(x)| is a rational prime, which forces any factorization to
    contain a unit. False only means the criterion does not apply.
    """
    _require_imaginary(x.params)
    return isprime(abs(x.norm()))


def associated(x: QuadInt, y: QuadInt) -> bool:
    x._coerce(y)
    return any(u * y == x for u in enumerate_units(x.params))


def proper_factorizations(x: QuadInt) -> List[Tuple[QuadInt, QuadInt]]:
    """
    Exhaustive search for x = y·z with 1 < N(y) <= N(z) < N(x). An empty
    result confirms irreducibility independently of the prime-norm test.
    """
    n = x.norm()
    pairs = []
    for ny in range(2, isqrt(n) + 1):
        if n % ny:
            continue
        for y in elements_of_norm(x.params, ny):
            z = exact_div(x, y)
            if z is not None and z.norm() < n:
                pairs.append((y, z))
    return pairs


def minkowski_pid_check(params: RingParams) -> bool:
    """
    |disc| < π², decided as |disc|·106² < 333² since 333/106 < π. True puts
    the Minkowski bound (2/π)·sqrt|disc| below 2, hence class number one.
    """
    abs_disc = _require_imaginary(params)
    return abs_disc * PI_LOWER_DEN ** 2 < PI_LOWER_NUM ** 2


def summarize(params: RingParams = RN_PARAMS) -> RingInvariants:
    """Every invariant the odd-case argument leans on, as one record. θ is ω, θ′ its conjugate."""
    units = enumerate_units(params)
    t = QuadInt(0, 1, params)
    tp = t.conj()
    disc = discriminant(params)
    t_irr = irreducible_by_norm(t)
    tp_irr = irreducible_by_norm(tp)
    assoc = associated(t, tp)
    mink = minkowski_pid_check(params)
    ok = (
        disc == params.e ** 2 + 4 * params.d
        and len(units) == 2
        and t_irr
        and tp_irr
        and not assoc
        and mink
    )
    return RingInvariants(
        d=params.d,
        e=params.e,
        discriminant=disc,
        units=[u.coords() for u in units],
        unit_orders=unit_orders(params),
        theta_norm=t.norm(),
        theta_irreducible=t_irr,
        theta_prime_irreducible=tp_irr,
        theta_theta_prime_associated=assoc,
        minkowski_hypothesis=mink,
        ok=ok,
    )
