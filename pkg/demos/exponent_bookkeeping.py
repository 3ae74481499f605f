"""
Exact exponent bookkeeping for the subconvexity endgame
=======================================================

All exponents are tracked as exact rationals: the error terms of the
amplified fourth moment, the amplifier length that balances them, and the
subconvex saving that falls out after taking fourth roots.
"""

from fractions import Fraction as F

from specrec.charkit import primitive_characters
from specrec.exponents import (amplifier_lower_bound, balance_amplifier,
                               divisor_eigenvalues, fourth_moment_terms,
                               subconvex_exponent, t_exponent)

# --- the error terms and the balancing amplifier ---------------------------

print("fourth-moment error terms (exponents of q, T, L):")
for term in fourth_moment_terms():
    print(f"  {term.label:12s} q^{term.q}  T^{term.T}  L^{term.L}")

bal = balance_amplifier(0)
print("\nbalanced amplifier length: L = q^(%s) T^(%s)"
      % (bal["L_q_exp"], bal["L_T_exp"]))
print("fourth root of the moment bound: q^(%s) T^(%s)"
      % (bal["fourth_root_q_exp"], bal["fourth_root_T_exp"]))

# --- the headline exponents ------------------------------------------------

q_exp, (c0, c1) = subconvex_exponent(F(3, 8), F(1, 4))
print("\nq-aspect exponent:", q_exp, "=", float(q_exp),
      " (convexity is 1/4)")
print("t-aspect exponent at theta0 = 7/64:", t_exponent(F(1, 4), F(7, 64)))

# The saving degrades continuously toward convexity as beta grows.
for beta in (F(1, 4), F(1, 2), F(2, 1), F(10, 1)):
    print(f"  beta = {beta}: q-exponent 1/4 - {F(1, 4) - subconvex_exponent(F(3, 8), beta)[0]}")

# --- the amplifier really amplifies ----------------------------------------

from sympy import divisors

chi = primitive_characters(5)[0]
eig = divisor_eigenvalues(chi, 12)
print("\nfirst divisor-function eigenvalues:",
      [complex(round(z.real, 3), round(z.imag, 3)) for z in eig[1:7]])


def lam(n):
    return sum(chi(a) for a in divisors(n))


for L in (25, 100, 400):
    res = amplifier_lower_bound(L, lam)
    print(f"L = {L:4d}: amplifier lower bound c = {res['fitted_c']:.3f}")
