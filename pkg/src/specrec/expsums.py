"""Gauss sums and (twisted) Kloosterman sums by direct summation.

S(m, n, c) = sum over units d mod c of e((m d + n d^-1)/c), and the chi-twisted
variant carrying chi(d) for a character whose modulus divides c. Evaluation is
O(c) per sum with precomputed unit and root-of-unity tables; a batch matrix
mode reuses the tables across many (m, n) pairs.
"""

from __future__ import annotations

from functools import lru_cache
from math import gcd

import numpy as np

from .charkit import DirichletCharacter
from .errors import ModulusMismatch
from .numtheory import units_mod


@lru_cache(maxsize=4096)
def _unit_tables(c: int) -> tuple[np.ndarray, np.ndarray]:
    """(units mod c, their inverses mod c) as int64 arrays."""
    if c == 1:
        return np.array([0]), np.array([0])
    units = np.array(units_mod(c), dtype=np.int64)
    invs = np.array([pow(int(d), -1, c) for d in units], dtype=np.int64)
    return units, invs


def kloosterman(m: int, n: int, c: int) -> complex:
    """S(m, n, c) = sum_{d mod c, (d,c)=1} e((m d + n d^-1)/c)."""
    if c == 1:
        return 1.0 + 0.0j
    units, invs = _unit_tables(c)
    phase = (m % c) * units + (n % c) * invs
    return complex(np.exp(2j * np.pi * (phase % c) / c).sum())


def kloosterman_matrix(c: int, a_vals: np.ndarray, b_vals: np.ndarray) -> np.ndarray:
    """Matrix of S(a, b, c) over given residue arrays, shape (len(a), len(b)).

    Splits the exponential over d and d^-1 so the batch is one complex matmul.
    """
    if c == 1:
        return np.ones((len(a_vals), len(b_vals)), dtype=np.complex128)
    units, invs = _unit_tables(c)
    left = np.exp(2j * np.pi * np.outer(np.asarray(a_vals) % c, units) / c)
    right = np.exp(2j * np.pi * np.outer(invs, np.asarray(b_vals) % c) / c)
    return left @ right


def twisted_kloosterman(m: int, n: int, c: int, chi: DirichletCharacter) -> complex:
    """S_chi(m, n, c) with chi of modulus q | c evaluated at d."""
    if c % chi.modulus != 0:
        raise ModulusMismatch(f"character modulus {chi.modulus} does not divide {c}")
    if c == 1:
        return 1.0 + 0.0j
    units, invs = _unit_tables(c)
    weights = chi.values()[units % chi.modulus]
    phase = (m % c) * units + (n % c) * invs
    return complex((weights * np.exp(2j * np.pi * (phase % c) / c)).sum())


def gauss_sum(chi: DirichletCharacter) -> complex:
    """tau(chi) = S_chi(1, 0, q)."""
    return twisted_kloosterman(1, 0, chi.modulus, chi)


def selberg_rhs(a: int, b: int, c: int) -> complex:
    """sum over d | (a, b, c) of d * S(1, a b / d^2, c / d)."""
    g = gcd(gcd(abs(a), abs(b)) or c, c)
    total = 0.0 + 0.0j
    for d in range(1, g + 1):
        if g % d == 0 and c % d == 0:
            total += d * kloosterman(1, (a * b) // (d * d), c // d)
    return total
