"""
GL(3) Eisenstein coefficients, local factors, and the Voronoi identity
======================================================================

The coefficient array A(n1, n2) of the minimal-parabolic Eisenstein family,
its degree-6 Rankin-Selberg local factors against a GL(2) form, the per-prime
residue Euler factors, and the small-modulus Voronoi functional equation.
"""

import numpy as np

from specrec.charkit import primitive_characters
from specrec.gl3 import (E0, SatakeGL2, SatakeGL3, local_rs_factor,
                         local_rs_series, phi_series, residue_factor_brute,
                         residue_factor_closed, tau3, xi_series)
from specrec.special import riemann_zeta, script_g

# --- coefficients ----------------------------------------------------------

print("tau_3(n) for n = 1..12:", [tau3(n) for n in range(1, 13)])
print("A(2, 2) =", E0.A(2, 2), " A(6, 4) =", E0.A(6, 4))
# multiplicative across coprime pairs
print("A(6*5, 4) = A(6,4) A(5,1):",
      E0.A(30, 4), "=", E0.A(6, 4) * E0.A(5, 1))

# --- local Rankin-Selberg factors ------------------------------------------

# Closed product over the six Satake pairs vs. the coefficient double series.
f = SatakeGL2(np.exp(0.6j), np.exp(-1.3j))
F = SatakeGL3((np.exp(0.4j), np.exp(0.5j), np.exp(-0.9j)))
s, p = 1.2 + 0.7j, 3
closed = local_rs_factor(s, f, F, f.central_value, p)
for K in (4, 8, 12):
    series = local_rs_series(s, f, F, f.central_value, K, p)
    print(f"K={K:2d}: |closed - series| = {abs(closed - series):.3e}")

# --- residue Euler factors -------------------------------------------------

# The same rational function in p^-s, p^-w computed two ways: a brute-force
# valuation sum and the closed numerator-over-five-factors form.
chi = primitive_characters(5)[0]
mu = (0.01, -0.003, -0.007)
for p in (2, 7, 23):
    b = residue_factor_brute(p, 1.6, 2.2, mu, chi)
    c = residue_factor_closed(p, 1.6, 2.2, mu, chi)
    print(f"p={p:2d}: rel diff {abs(b - c) / abs(c):.2e}")

# --- Voronoi at small modulus ----------------------------------------------

# Phi(c, d, 1; v) continues through Hurwitz zeta triples; at modulus 1 it is
# just zeta(v)^3.
v = 1.8 - 0.2j
print("Phi(1,1,1;v) - zeta(v)^3 =",
      abs(phi_series(1, 1, 1, v) - riemann_zeta(v) ** 3))

# The functional equation trades Phi at v for the Kloosterman-dual Xi at -v,
# weighted by the degree-3 gamma factors.
v = -1.5
gp = script_g(1 - v, (0, 0, 0), +1)
gm = script_g(1 - v, (0, 0, 0), -1)
lhs = phi_series(2, 1, 1, v)
rhs = gp * xi_series(2, 1, 1, -v, K=16000) + gm * xi_series(2, -1, 1, -v, K=16000)
print(f"Voronoi identity at c=2: rel err {abs(lhs - rhs) / abs(lhs):.2e}")
