"""Exact exponent bookkeeping for the subconvexity and amplifier bounds.

Everything here is rational arithmetic over the symbol basis (q, T, L, l):
a BoundTerm is a monomial q^a T^b L^c l^d with Fraction exponents, and the
qualitative statements (which term dominates, which choice of L balances a
pair of terms) reduce to exact exponent-vector comparisons.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import log

from .errors import DomainViolation

SYMBOLS = ("q", "T", "L", "l")


@dataclass(frozen=True)
class BoundTerm:
    """A monomial bound q^a T^b L^c l^d with exact rational exponents."""

    label: str
    q: Fraction = Fraction(0)
    T: Fraction = Fraction(0)
    L: Fraction = Fraction(0)
    l: Fraction = Fraction(0)

    @property
    def exponents(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        return (self.q, self.T, self.L, self.l)

    def substitute_L(self, a: Fraction, b: Fraction) -> "BoundTerm":
        """Replace L by q^a T^b, folding its exponent into q and T."""
        return BoundTerm(self.label, self.q + self.L * a,
                         self.T + self.L * b, Fraction(0), self.l)

    def scale(self, factor: Fraction) -> "BoundTerm":
        return BoundTerm(self.label, self.q * factor, self.T * factor,
                         self.L * factor, self.l * factor)

    def log_size(self, log_sizes: dict[str, float]) -> float:
        """log of the term at given log-parameter sizes (missing symbols = 0)."""
        return sum(float(e) * log_sizes.get(s, 0.0)
                   for s, e in zip(SYMBOLS, self.exponents))

    def __str__(self) -> str:
        parts = [f"{s}^({e})" for s, e in zip(SYMBOLS, self.exponents) if e != 0]
        return "*".join(parts) if parts else "1"


def dominant_term(terms: list[BoundTerm], log_sizes: dict[str, float]) -> BoundTerm:
    """The term of maximal size at the given parameter log-sizes."""
    return max(terms, key=lambda t: t.log_size(log_sizes))


def subconvex_exponent(alpha, beta) -> tuple[Fraction, tuple[Fraction, Fraction]]:
    """Subconvexity exponents from an amplified fourth-moment bound.

    Given a fourth-moment estimate of strength (alpha, beta), the resulting
    central-value bound is q^(q_exp) * (1+|t|)^(c0 - c1*(1-2*theta0)) where

        q_exp = 1/4 - (1 - 2*alpha) / (8*(3 + 4*beta))
        t_exp(theta0) = 1/2 - (1 - 2*theta0_factor) with
                        c0 = 1/2, c1 = 1/(4*(3 + 4*beta))

    Returns (q_exp, (c0, c1)) so that the t-aspect exponent at a given
    theta0 is c0 - c1 * (1 - 2*theta0), all as exact Fractions.
    """
    alpha = Fraction(alpha)
    beta = Fraction(beta)
    if not (0 < alpha < Fraction(1, 2)):
        raise DomainViolation(f"alpha={alpha} outside (0, 1/2)")
    if not beta > 0:
        raise DomainViolation(f"beta={beta} must be positive")
    denom = 3 + 4 * beta
    q_exp = Fraction(1, 4) - (1 - 2 * alpha) / (8 * denom)
    c0 = Fraction(1, 2)
    c1 = Fraction(1) / (4 * denom)
    return q_exp, (c0, c1)


def t_exponent(beta, theta0) -> Fraction:
    """The t-aspect exponent 1/2 - (1 - 2*theta0)/(4*(3+4*beta)) exactly."""
    _, (c0, c1) = subconvex_exponent(Fraction(1, 4), Fraction(beta))
    return c0 - c1 * (1 - 2 * Fraction(theta0))


def fourth_moment_terms() -> list[BoundTerm]:
    """The five monomials of the amplified fourth-moment bound, with the
    amplifier length L and the Hecke-eigenvalue exponent theta0 kept symbolic
    (theta0 enters only the last two terms, as T^(2*theta0); they are returned
    at theta0 = 0 and the caller shifts the T-exponent by 2*theta0)."""
    return [
        BoundTerm("q T^2 / L", q=Fraction(1), T=Fraction(2), L=Fraction(-1)),
        BoundTerm("q^1/2 T^2", q=Fraction(1, 2), T=Fraction(2)),
        BoundTerm("q^3/4 T^7/4", q=Fraction(3, 4), T=Fraction(7, 4)),
        BoundTerm("T q^7/8 L^3", q=Fraction(7, 8), T=Fraction(1), L=Fraction(3)),
        BoundTerm("T q^3/4 L^4", q=Fraction(3, 4), T=Fraction(1), L=Fraction(4)),
    ]


def balance_amplifier(theta0) -> dict:
    """Choose the amplifier length L = q^a T^b balancing the fourth moment.

    With a = 1/32 the q-exponents of the first term q*T^2/L and the fourth
    term T^(1+2*theta0)*q^(7/8)*L^3 agree (both 31/32); with
    b = (1-2*theta0)/5 their T-exponents agree as well.  The fourth root of
    the balanced q-power is q^(31/128) = q^(1/4 - 1/128), and of the balanced
    T-power is T^(1/2 - (1-2*theta0)/20).

    Returns the exact choice (a, b), the five substituted terms, the balanced
    dominant term, and the fourth-root exponents.
    """
    theta0 = Fraction(theta0)
    if not (0 <= theta0 <= Fraction(7, 64)):
        raise DomainViolation(f"theta0={theta0} outside [0, 7/64]")
    a = Fraction(1, 32)
    b = (1 - 2 * theta0) / 5
    terms = fourth_moment_terms()
    # the last two carry the extra T^(2*theta0) factor
    terms = terms[:3] + [BoundTerm(t.label, t.q, t.T + 2 * theta0, t.L, t.l)
                         for t in terms[3:]]
    substituted = [t.substitute_L(a, b) for t in terms]
    first, fourth = substituted[0], substituted[3]
    # a = 1/32 balances the q-aspect of the first and fourth terms
    assert first.q == fourth.q == Fraction(31, 32)
    balanced = BoundTerm("balanced pair", q=first.q, T=first.T)
    return {
        "L_q_exp": a,
        "L_T_exp": b,
        "terms": substituted,
        "balanced": balanced,
        "fourth_root_q_exp": balanced.q / 4,
        "fourth_root_T_exp": balanced.T / 4,
    }


def divisor_eigenvalues(chi, nmax: int) -> list[complex]:
    """Hecke eigenvalues lambda(n) = sum_{ad=n} chi(a) of the weight-zero
    Eisenstein newform attached to chi; satisfies the exact Hecke relation
    lambda(p)^2 = chi(p) + lambda(p^2)."""
    lam = [0j] * (nmax + 1)
    for n in range(1, nmax + 1):
        lam[n] = sum(chi(a) for a in range(1, n + 1) if n % a == 0)
    return lam


def amplifier_lower_bound(L: int, lam) -> dict:
    """Lower bound for the self-amplified value A = |sum_p lam(p) x(p)|^2 +
    |sum_p lam(p^2) x(p^2)|^2 with the sign choice x(n) = sgn(lam(n)).

    For any multiplicative sequence with lam(p)^2 = chi(p) + lam(p^2), one of
    |lam(p)|, |lam(p^2)| is bounded below, so A >= (1/2)(sum_{p<=L} |lam(p)|
    + |lam(p^2)|)^2 / pi(L) ~ c L^2/log L.  `lam` is a callable n -> lambda(n).

    Returns the amplified value, the lower bound, and the fitted constant
    relative to L^2/log L.
    """
    from sympy import primerange

    primes = list(primerange(2, L + 1))
    s1 = sum(lam(p) * _sgn(lam(p)) for p in primes)
    s2 = sum(lam(p * p) * _sgn(lam(p * p)) for p in primes)
    amplified = abs(s1) ** 2 + abs(s2) ** 2
    total = sum(abs(lam(p)) + abs(lam(p * p)) for p in primes)
    # Cauchy-Schwarz over the two blocks: |a|^2 + |b|^2 >= (|a|+|b|)^2 / 2
    lower = total ** 2 / (2 * len(primes)) if primes else 0.0
    ref = L * L / log(L) if L > 1 else 1.0
    return {
        "amplified": float(amplified.real if isinstance(amplified, complex) else amplified),
        "lower_bound": float(lower.real if isinstance(lower, complex) else lower),
        "fitted_c": float((amplified / ref).real if isinstance(amplified, complex)
                          else amplified / ref),
        "n_primes": len(primes),
    }


def _sgn(z) -> complex:
    z = complex(z)
    return z.conjugate() / abs(z) if z != 0 else 0j


def hecke_relation_defect(chi, p: int) -> complex:
    """lambda(p)^2 - chi(p) - lambda(p^2); identically zero for the divisor
    eigenvalues of chi."""
    lam_p = sum(chi(a) for a in (1, p))
    lam_p2 = sum(chi(a) for a in (1, p, p * p))
    return lam_p * lam_p - chi(p) - lam_p2
