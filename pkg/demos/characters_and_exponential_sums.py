"""
Dirichlet characters, Gauss sums, and Kloosterman identities
============================================================

A quick tour of the arithmetic layer: enumerating characters, the magnitude
of Gauss sums, the Selberg identity, and the vanishing of twisted Kloosterman
sums at moduli divisible by the square of the conductor.
"""

from math import gcd, sqrt

import numpy as np

from specrec.charkit import enumerate_characters, primitive_characters
from specrec.expsums import (gauss_sum, kloosterman, selberg_rhs,
                             twisted_kloosterman)

# --- character enumeration -------------------------------------------------

q = 15
chars = enumerate_characters(q)
print(f"phi({q}) = {len(chars)} characters mod {q}, "
      f"{len(primitive_characters(q))} primitive")

# Every character is multiplicative and supported on units.
chi = primitive_characters(7)[0]
print("chi(3) * chi(5) =", chi(3) * chi(5), " chi(15) =", chi(15))

# --- Gauss sums ------------------------------------------------------------

# For a primitive character mod q the Gauss sum has magnitude sqrt(q).
for q in (5, 7, 13):
    tau = gauss_sum(primitive_characters(q)[0])
    print(f"q={q}: |tau(chi)| = {abs(tau):.12f}  sqrt(q) = {sqrt(q):.12f}")

# --- the Selberg identity --------------------------------------------------

# S(a, b, c) = sum over d | (a, b, c) of d * S(1, ab/d^2, c/d).
a, b, c = 12, 18, 36
print("S(12, 18, 36)        =", kloosterman(a, b, c))
print("divisor combination  =", selberg_rhs(a, b, c))

# --- twisted sums ----------------------------------------------------------

# With chi mod q and q^2 | c, the twisted sum vanishes identically in its
# second argument multiples of q.
chi = primitive_characters(5)[0]
vals = [abs(twisted_kloosterman(1, n2 * 5, 50, chi)) for n2 in range(50)]
print("max |S_chi(1, 5*n2, 50)| over n2:", max(vals))

# Away from that degenerate case the twisted sum factors through the
# prime-to-q modulus, picking up the Gauss sum and a chi(-1) parity sign.
c, r, n2 = 11, 2, 3
from specrec.charkit import inv_mod
qbar = inv_mod(5 % c, c)
lhs = twisted_kloosterman(-r, n2 * 5, 5 * c, chi)
rhs = (gauss_sum(chi) * chi(-1) * np.conj(chi(r)) * chi(c)
       * kloosterman((-r * qbar) % c, n2, c))
print("twisted multiplicativity residual:", abs(lhs - rhs))
