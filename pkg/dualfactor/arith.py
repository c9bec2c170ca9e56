"""Exact integer arithmetic behind the oracles and the classical post-processing.

Everything here is pure and works on arbitrary-precision integers; scalar
results are plain ``int`` even where gmpy2 does the work.
"""

from __future__ import annotations

import gmpy2
import numpy as np

from .errors import BelowRootError, InvalidParameterError


def divides_indicator(n: int, i: int) -> int:
    if i < 2:
        raise InvalidParameterError(f"divisor candidate must be at least 2, got {i}")
    return 1 if n % i == 0 else 0


def modexp(a: int, x: int, n: int) -> int:
    if x < 0:
        raise InvalidParameterError(f"exponent must be nonnegative, got {x}")
    if n < 2:
        raise InvalidParameterError(f"modulus must be at least 2, got {n}")
    return int(gmpy2.powmod(a, x, n))


# Residues stay below 2**31, so every product fits in int64.
MODEXP_MANY_LIMIT = 1 << 31


def modexp_many(a: int, exponents: np.ndarray, n: int) -> np.ndarray:
    """a^x mod n for a whole array of exponents, by square-and-multiply over the bits of x."""
    if not 2 <= n < MODEXP_MANY_LIMIT:
        raise InvalidParameterError(f"modexp_many needs 2 <= n < 2**31, got {n}")
    x = np.array(exponents, dtype=np.int64)
    if np.any(x < 0):
        raise InvalidParameterError("exponents must be nonnegative")

    result = np.full(x.shape, 1 % n, dtype=np.int64)
    base = a % n
    while np.any(x):
        odd = (x & 1).astype(bool)
        result[odd] = result[odd] * base % n
        base = base * base % n
        x >>= 1
    return result


def isqrt(m: int) -> int:
    if m < 0:
        raise InvalidParameterError(f"isqrt of negative value {m}")
    return int(gmpy2.isqrt(m))


def is_perfect_square(m: int) -> bool:
    return m >= 0 and bool(gmpy2.is_square(m))


def nearest_sqrt(n: int) -> int:
    """Integer nearest to √n, halves rounded up.

    floor(√n + 1/2) == floor((isqrt(4n) + 1) / 2), so no floating point is involved.
    """
    return (isqrt(4 * n) + 1) // 2


def ceil_sqrt(n: int) -> int:
    root = isqrt(n)
    return root if root * root == n else root + 1


def fermat_sign(x: int, n: int) -> int:
    residue = x * x - n
    if residue < 0:
        raise BelowRootError()
    return 1 if is_perfect_square(residue) else -1


def gcd(a: int, b: int) -> int:
    return int(gmpy2.gcd(a, b))


def is_prime(n: int) -> bool:
    # gmpy2's Miller-Rabin; only used to validate inputs and classify divisors.
    return n >= 2 and bool(gmpy2.is_prime(n))
