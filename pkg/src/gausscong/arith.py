"""Small integer number-theory helpers used across the package.

Everything here is exact and deterministic: primality is decided by a
Miller-Rabin test with a witness set that is proven correct for all
inputs below 3.3 * 10^24, which is far beyond anything this package
touches.
"""

from __future__ import annotations

import math
from fractions import Fraction

# Witnesses proving Miller-Rabin correct for n < 3_317_044_064_679_887_385_961_981.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def next_prime(n: int) -> int:
    """Smallest prime strictly greater than ``n``."""
    k = n + 1
    if k <= 2:
        return 2
    if k % 2 == 0:
        k += 1
    while not is_prime(k):
        k += 2
    return k


def primes_up_to(n: int) -> list[int]:
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0] = sieve[1] = 0
    for p in range(2, math.isqrt(n) + 1):
        if sieve[p]:
            sieve[p * p :: p] = bytearray(len(sieve[p * p :: p]))
    return [p for p in range(2, n + 1) if sieve[p]]


def prime_factors(n: int) -> set[int]:
    """Set of prime divisors of ``|n|`` (empty for 0, 1, -1)."""
    n = abs(n)
    out: set[int] = set()
    if n <= 1:
        return out
    for p in (2, 3, 5):
        while n % p == 0:
            out.add(p)
            n //= p
    f = 7
    # 2/4-step wheel; inputs are desk scale so trial division suffices
    step = 4
    while f * f <= n:
        if n % f == 0:
            out.add(f)
            while n % f == 0:
                n //= f
        f += step
        step = 6 - step
    if n > 1:
        out.add(n)
    return out


def int_valuation(n: int, p: int) -> int:
    """Largest ``v`` with ``p^v | n``; raises on ``n == 0``."""
    if n == 0:
        raise ValueError("valuation of 0 is infinite")
    v = 0
    n = abs(n)
    while n % p == 0:
        n //= p
        v += 1
    return v


def frac_valuation(a: Fraction | int, p: int):
    """p-adic valuation of a rational number; ``math.inf`` for 0."""
    if a == 0:
        return math.inf
    a = Fraction(a)
    return int_valuation(a.numerator, p) - int_valuation(a.denominator, p)


def modinv(a: int, m: int) -> int:
    return pow(a, -1, m)


def lcm_list(values) -> int:
    out = 1
    for v in values:
        out = out * v // math.gcd(out, v)
    return out


def gcd_list(values) -> int:
    out = 0
    for v in values:
        out = math.gcd(out, v)
    return out
