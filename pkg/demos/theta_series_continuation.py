"""
Character theta series and their functional equation
====================================================

The pair of series

    Theta_q(n, d; v)  = sum_{(c,d)=1} chi(c) e(c^-1 n q / d) c^-v
    Theta~ (n, d; v)  = sum_c chi~(c) chi(d) S(n, c, d) c^-v

converges only for Re v > 1, but both continue to the whole plane through
residue classes mod qd and Hurwitz zeta values.  The continued pair satisfies
a 2x2 functional equation coupling (n, -n) at v <-> 1-v.
"""

import numpy as np

from specrec.charkit import primitive_characters
from specrec.theta import (ThetaArgs, theta_q, theta_q_direct,
                           verify_theta_functional_equation)

chi = primitive_characters(5)[0]

# --- continuation agrees with the defining sum where it converges ----------

args = ThetaArgs(n=1, d=3, v=2.5, chi=chi)
cont = theta_q(args)
direct = theta_q_direct(args, kmax=200000)
print("Theta_q(1, 3; 2.5):")
print("  continued:", cont)
print("  truncated:", direct)

# --- and keeps making sense far outside ------------------------------------

for v in (0.5, -0.5, -2.3 + 1j):
    print(f"Theta_q(1, 3; {v}) =", theta_q(ThetaArgs(1, 3, v, chi)))

# v = 1 is a removable point for nontrivial chi: the polar parts carried by
# the residue classes cancel because the character weights sum to zero.
print("value at the removable point v=1:", theta_q(ThetaArgs(1, 3, 1.0, chi)))

# --- the functional equation -----------------------------------------------

# Both components (n and -n) are needed: the equation mixes them through a
# 2x2 matrix of gamma-type factors and the Gauss sum.
for v in (1.5, 0.5 + 4j, -0.5, 2.0):
    rep = verify_theta_functional_equation(ThetaArgs(2, 3, v, chi))
    print(f"v = {v}: {rep.status}  (abs err {rep.abs_err:.2e})")

# An odd character flips the sign of the off-diagonal entries; the check
# knows this and still closes.
odd = [c for c in primitive_characters(5) if abs(c(-1) + 1) < 1e-12][0]
rep = verify_theta_functional_equation(ThetaArgs(1, 2, 0.7, odd))
print("odd character case:", rep.status)
