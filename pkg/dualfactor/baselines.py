"""Brute-force reference methods.

These are deliberately written with their own loops and never call into the
duality-computer side, so agreement between the two is a real check.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from math import gcd, isqrt
from typing import Optional, Tuple

from .errors import InvalidParameterError, NoRepresentationError, NotCoprimeError


class BaselineMethod(str, Enum):
    TRIAL_DIVISION = "trial-division"
    CLASSICAL_FERMAT = "classical-fermat"
    ORDER_SCAN = "order-scan"


@dataclass(frozen=True)
class BaselineReport:
    method: BaselineMethod
    steps: int
    factors: Tuple[int, ...] = ()
    period: Optional[int] = None


def trial_division(n: int) -> BaselineReport:
    if n < 2:
        raise InvalidParameterError(f"trial division needs n >= 2, got {n}")
    factors = []
    steps = 0
    remaining = n
    d = 2
    while d * d <= remaining:
        steps += 1
        while remaining % d == 0:
            factors.append(d)
            remaining //= d
        d += 1
    if remaining > 1:
        factors.append(remaining)
    return BaselineReport(BaselineMethod.TRIAL_DIVISION, max(steps, 1), factors=tuple(factors))


def classical_fermat(n: int) -> BaselineReport:
    if n % 2 == 0 or n < 9:
        raise InvalidParameterError(f"classical Fermat needs odd n >= 9, got {n}")
    x = isqrt(n)
    if x * x < n:
        x += 1
    steps = 0
    while x <= n // 2:
        steps += 1
        residue = x * x - n
        y = isqrt(residue)
        if y * y == residue:
            return BaselineReport(BaselineMethod.CLASSICAL_FERMAT, steps, factors=(x + y, x - y))
        x += 1
    raise NoRepresentationError(steps)


def order_bruteforce(a: int, n: int) -> BaselineReport:
    if a < 2 or n < 3:
        raise InvalidParameterError(f"order scan needs a >= 2 and n >= 3, got a={a}, n={n}")
    if gcd(a, n) != 1:
        raise NotCoprimeError(f"{a} and {n} are not coprime")
    power = a % n
    r = 1
    while power != 1:
        power = power * a % n
        r += 1
    return BaselineReport(BaselineMethod.ORDER_SCAN, r, period=r)
