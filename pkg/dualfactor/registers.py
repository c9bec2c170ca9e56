from __future__ import annotations

from . import arith
from .errors import InvalidParameterError
from .wave import RegisterSpec


def default_precision_q(n: int) -> int:
    """The power of two in (n², 2n²]; there is exactly one."""
    return 1 << (n * n).bit_length()


def precision_in_range(n: int, q: int) -> bool:
    return n * n < q <= 2 * n * n


def naive_register(n: int) -> RegisterSpec:
    # [2, [√n] + 1], the upper bound rounded to the nearest integer.
    return RegisterSpec(reg1_min=2, reg1_max=arith.nearest_sqrt(n) + 1, reg2_max=1)


def shor_register(n: int, q: int) -> RegisterSpec:
    if q < 2:
        raise InvalidParameterError(f"precision q must be at least 2, got {q}")
    return RegisterSpec(reg1_min=0, reg1_max=q - 1, reg2_max=n - 1)


def fermat_register(n: int) -> RegisterSpec:
    # Stops at floor(n/2): x = (n+1)/2 would only give the trivial split n·1.
    return RegisterSpec(reg1_min=arith.ceil_sqrt(n), reg1_max=n // 2)
