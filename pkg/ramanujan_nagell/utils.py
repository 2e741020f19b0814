import hashlib
import json
import sys
from contextlib import contextmanager
from typing import Any, Dict, Iterator, Optional, Tuple

from .exceptions import InternalInconsistencyError, PreconditionError


def isqrt(n: int) -> int:
    """
    Integer square root floor(sqrt(n)) by Newton iteration on big ints.
    The result is post-checked: r*r <= n < (r+1)*(r+1).
    """
    if n < 0:
        raise PreconditionError(f"isqrt of negative number {n}")
    if n < 2:
        return n
    # initial guess above the root: 2^ceil(bits/2)
    x = 1 << ((n.bit_length() + 1) >> 1)
    while True:
        y = (x + n // x) >> 1
        if y >= x:
            break
        x = y
    if not (x * x <= n < (x + 1) * (x + 1)):
        raise InternalInconsistencyError(f"isqrt post-check failed for n={n}: r={x}")
    return x


def exact_sqrt(n: int) -> Optional[int]:
    """Return r >= 0 with r*r == n, or None when n is not a perfect square."""
    if n < 0:
        return None
    r = isqrt(n)
    return r if r * r == n else None


def canonical_json(payload: Any) -> str:
    return json.dumps(payload, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def digest_of(payload: Dict[str, Any]) -> str:
    raw = json.dumps(payload, sort_keys=True, separators=(",", ":")).encode()
    return hashlib.sha256(raw).hexdigest()


@contextmanager
def unbounded_int_strings() -> Iterator[None]:
    """Lifts the 4300-digit int<->str cap for the duration of the block."""
    previous = sys.get_int_max_str_digits()
    sys.set_int_max_str_digits(0)
    try:
        yield
    finally:
        sys.set_int_max_str_digits(previous)


def split_power_of_two(n: int) -> Tuple[int, int]:
    """Return (k, odd) with n == 2**k * odd, for n > 0."""
    if n <= 0:
        raise PreconditionError(f"expected a positive integer, got {n}")
    k = (n & -n).bit_length() - 1
    return k, n >> k
