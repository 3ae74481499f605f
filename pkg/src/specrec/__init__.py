"""specrec: computation and verification toolkit for exponential sums,
Dirichlet/Hurwitz L-values, GL(3) Eisenstein coefficients, local Euler-factor
identities, Bessel-kernel integral transforms, and subconvexity exponent
arithmetic."""

__version__ = "0.1.0"
