"""Small integer-arithmetic helpers used across the package."""

from __future__ import annotations

from functools import lru_cache
from math import gcd, isqrt

import sympy


def factorize(n: int) -> dict[int, int]:
    """Prime factorization as {p: exponent}."""
    return dict(sympy.factorint(n))


@lru_cache(maxsize=None)
def divisors(n: int) -> tuple[int, ...]:
    return tuple(sympy.divisors(n))


def mobius(n: int) -> int:
    return int(sympy.mobius(n))


def euler_phi(n: int) -> int:
    return int(sympy.totient(n))


def primes_up_to(n: int) -> list[int]:
    return list(sympy.primerange(2, n + 1))


def primitive_root(n: int) -> int:
    """Smallest primitive root mod n (n must have one)."""
    return int(sympy.primitive_root(n))


def units_mod(c: int) -> list[int]:
    """Units of Z/cZ in increasing order; [0] for c = 1."""
    if c == 1:
        return [0]
    return [d for d in range(1, c) if gcd(d, c) == 1]


def is_prime(n: int) -> bool:
    return bool(sympy.isprime(n))


def tau(n: int) -> int:
    """Number of divisors."""
    return len(divisors(n))


def tau3_table(limit: int) -> list[int]:
    """tau3[n] = number of ordered factorizations n = abc, for n <= limit.

    Sieve-style triple divisor convolution; index 0 unused.
    """
    t = [0] * (limit + 1)
    for a in range(1, limit + 1):
        for ab in range(a, limit + 1, a):
            m = limit // ab
            for k in range(1, m + 1):
                t[ab * k] += 1
    return t


def smooth_numbers(primes: list[int], limit_exp: int, bound: int | None = None) -> list[int]:
    """All products of the given primes with each exponent <= limit_exp.

    Optionally capped by an absolute bound. Sorted ascending.
    """
    out = [1]
    for p in primes:
        cur = list(out)
        for _ in range(limit_exp):
            cur = [x * p for x in cur if bound is None or x * p <= bound]
            out.extend(cur)
            if not cur:
                break
    return sorted(set(out))


def v_p(n: int, p: int) -> int:
    """p-adic valuation of n (n != 0)."""
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def isqrt_exact(n: int) -> int:
    return isqrt(n)
