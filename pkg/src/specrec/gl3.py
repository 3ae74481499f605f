"""Degree-3 Eisenstein coefficients, Satake local factors, the twisted
Voronoi series pair at small modulus, the per-prime residue Euler factors of
the shifted coefficient sum, and the Eisenstein correction factor.

Coefficient conventions: A(n, 1) = sum over ordered factorizations n = abc of
a^(-mu1) b^(-mu2) c^(-mu3) (tau_3(n) in the unshifted case), A(1, n) the same
with +mu, and general A(n1, n2) by the Moebius convolution
A(n1, n2) = sum_{e | (n1, n2)} mu(e) A(n1/e, 1) A(1, n2/e).
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from math import gcd

import numpy as np

from .charkit import DirichletCharacter, inv_mod
from .errors import (ConductorViolation, DomainViolation, GcdViolation, Pole,
                     RegionViolation, UnsupportedContinuation)
from .expsums import kloosterman
from .numtheory import divisors, factorize, mobius, smooth_numbers, v_p
from .special import DEFAULT, PrecisionContract, hurwitz_vector


def tau3(n: int) -> int:
    """Number of ordered factorizations n = abc."""
    if n < 1:
        raise DomainViolation("n must be positive")
    return sum(len(divisors(n // a)) for a in divisors(n))


def _shifted_divisor_sum(n: int, mu: tuple[complex, complex, complex]) -> complex:
    """sum over abc = n of a^(-mu1) b^(-mu2) c^(-mu3)."""
    m1, m2, m3 = mu
    total = 0.0 + 0.0j
    for a in divisors(n):
        for b in divisors(n // a):
            c = n // (a * b)
            total += a ** (-m1) * b ** (-m2) * c ** (-m3)
    return total


class GL3Coefficients:
    """Coefficient table A(n1, n2) for the minimal-parabolic Eisenstein family.

    kind 'E0' is the unshifted case (A(n,1) = tau_3(n), all values real);
    kind 'E_mu' carries a complex shift triple summing to zero.
    """

    def __init__(self, kind: str = "E0",
                 mu: tuple[complex, complex, complex] = (0, 0, 0)):
        if kind not in ("E0", "E_mu"):
            raise DomainViolation(f"unknown coefficient kind {kind!r}")
        if kind == "E0" and any(m != 0 for m in mu):
            raise DomainViolation("E0 requires mu = (0, 0, 0)")
        if abs(sum(complex(m) for m in mu)) > 1e-12:
            raise DomainViolation("mu must sum to 0")
        self.kind = kind
        self.mu = tuple(complex(m) for m in mu)
        self._memo: dict[tuple[int, int], complex] = {(1, 1): 1.0 + 0.0j}
        self._lock = threading.Lock()

    def a_first(self, n: int) -> complex:
        """A(n, 1)."""
        if self.kind == "E0":
            return complex(tau3(n))
        return _shifted_divisor_sum(n, self.mu)

    def a_second(self, n: int) -> complex:
        """A(1, n)."""
        if self.kind == "E0":
            return complex(tau3(n))
        return _shifted_divisor_sum(n, tuple(-m for m in self.mu))

    def A(self, n1: int, n2: int) -> complex:
        if n1 < 1 or n2 < 1:
            raise DomainViolation("indices must be positive")
        key = (n1, n2)
        with self._lock:
            if key in self._memo:
                return self._memo[key]
        total = 0.0 + 0.0j
        for e in divisors(gcd(n1, n2)):
            m = mobius(e)
            if m:
                total += m * self.a_first(n1 // e) * self.a_second(n2 // e)
        with self._lock:
            self._memo[key] = total
        return total

    def table(self, limit1: int, limit2: int) -> np.ndarray:
        """Array T with T[i, j] = A(i+1, j+1), computed in bulk."""
        first = np.array([self.a_first(n) for n in range(1, max(limit1, limit2) + 1)])
        second = np.array([self.a_second(n) for n in range(1, max(limit1, limit2) + 1)])
        out = np.zeros((limit1, limit2), dtype=np.complex128)
        for i in range(1, limit1 + 1):
            for j in range(1, limit2 + 1):
                v = 0.0 + 0.0j
                for e in divisors(gcd(i, j)):
                    m = mobius(e)
                    if m:
                        v += m * first[i // e - 1] * second[j // e - 1]
                out[i - 1, j - 1] = v
        return out


E0 = GL3Coefficients("E0")


def gl3_coeff(F: GL3Coefficients, n1: int, n2: int) -> complex:
    return F.A(n1, n2)


# ---------------------------------------------------------------------------
# Satake parameters and local Rankin-Selberg factors

@dataclass(frozen=True)
class SatakeGL2:
    alpha1: complex
    alpha2: complex

    @property
    def central_value(self) -> complex:
        return self.alpha1 * self.alpha2

    def lam(self, nu: int) -> complex:
        """lambda(p^nu) = sum_{i+j=nu} alpha1^i alpha2^j."""
        return sum(self.alpha1 ** i * self.alpha2 ** (nu - i)
                   for i in range(nu + 1))


@dataclass(frozen=True)
class SatakeGL3:
    betas: tuple[complex, complex, complex]

    def __post_init__(self):
        if abs(self.betas[0] * self.betas[1] * self.betas[2] - 1) > 1e-9:
            raise DomainViolation("Satake parameters must have product 1")

    def _h(self, k: int, betas: tuple[complex, complex, complex]) -> complex:
        """Complete homogeneous symmetric polynomial of degree k."""
        if k < 0:
            return 0.0 + 0.0j
        b1, b2, b3 = betas
        return sum(b1 ** i * b2 ** j * b3 ** (k - i - j)
                   for i in range(k + 1) for j in range(k - i + 1))

    def coeff(self, nu: int, mu: int) -> complex:
        """A(p^nu, p^mu) via the Moebius convolution of the one-sided values.

        Stable in the degenerate-parameter limit, unlike the quotient form of
        coeff_determinant.
        """
        duals = tuple(1 / b for b in self.betas)
        out = self._h(nu, self.betas) * self._h(mu, duals)
        if nu >= 1 and mu >= 1:
            out -= self._h(nu - 1, self.betas) * self._h(mu - 1, duals)
        return out

    def coeff_determinant(self, nu: int, mu: int) -> complex:
        """A(p^nu, p^mu) as a ratio of 3x3 alternants (Weyl character formula);
        requires pairwise distinct parameters."""
        lam = (nu + mu + 2, mu + 1, 0)
        num = np.array([[b ** e for e in lam] for b in self.betas])
        den = np.array([[b ** e for e in (2, 1, 0)] for b in self.betas])
        dd = np.linalg.det(den)
        if abs(dd) < 1e-12:
            raise DomainViolation("degenerate Satake parameters; use coeff()")
        return complex(np.linalg.det(num) / dd)


def local_rs_factor(s: complex, f: SatakeGL2, F: SatakeGL3, chi_p: complex,
                    p: int) -> complex:
    """The closed-form local factor: product over the six parameter pairs of
    (1 - beta_j alpha_nu p^(-s))^(-1).

    chi_p must agree with the GL(2) central value (the series side weights
    n1 by chi at p)."""
    if abs(complex(chi_p) - f.central_value) > 1e-9:
        raise DomainViolation("chi_p must equal the product of the GL(2) parameters")
    ps = p ** (-complex(s))
    out = 1.0 + 0.0j
    for b in F.betas:
        for a in (f.alpha1, f.alpha2):
            factor = 1 - b * a * ps
            if abs(factor) < 1e-13:
                raise Pole(f"local factor pole: parameter product {b * a} at p^-s={ps}")
            out /= factor
    return out


def local_rs_series(s: complex, f: SatakeGL2, F: SatakeGL3, chi_p: complex,
                    K: int, p: int) -> complex:
    """Truncated double series sum_{a+b<=K} A(p^b, p^a) chi_p^a lambda(p^b)
    p^(-bs) p^(-2as)."""
    s = complex(s)
    chi_p = complex(chi_p)
    total = 0.0 + 0.0j
    for a in range(K + 1):
        ca = chi_p ** a if a else 1.0 + 0.0j
        if ca == 0:
            continue
        for b in range(K + 1 - a):
            total += (F.coeff(b, a) * ca * f.lam(b)
                      * p ** (-b * s - 2 * a * s))
    return total


def local_rs_tail(s: complex, f: SatakeGL2, F: SatakeGL3, K: int, p: int) -> float:
    """Geometric majorant for the truncation error of local_rs_series."""
    r = max(abs(b * a) for b in F.betas for a in (f.alpha1, f.alpha2))
    rho = r * p ** (-complex(s).real)
    if rho >= 1:
        raise RegionViolation("series does not converge at this s")
    # coefficient growth is polynomial; absorb it into a crude constant
    return 50.0 * (K + 2) ** 4 * rho ** (K + 1) / (1 - rho)


# ---------------------------------------------------------------------------
# Voronoi series pair at small modulus

def _check_coprime(c: int, d: int):
    if c < 1:
        raise DomainViolation("modulus must be positive")
    if gcd(c, abs(d) if d else 0) != 1:
        raise GcdViolation(f"({c}, {d}) != 1")


def phi_series(c: int, d: int, m: int, v: complex, mode: str = "hurwitz",
               F: GL3Coefficients | None = None, kmax: int = 10 ** 5,
               contract: PrecisionContract = DEFAULT) -> complex:
    """Additively twisted coefficient series
    sum_{n>0} A(m, n) e(n dbar / c) n^(-v).

    direct mode truncates at kmax (needs Re v > 1); hurwitz mode continues the
    m=1 unshifted case exactly through residue classes mod c:
    c^(-3v) sum_{alpha,beta,gamma mod c} e(alpha beta gamma dbar / c)
    zeta(v,alpha/c) zeta(v,beta/c) zeta(v,gamma/c).
    """
    _check_coprime(c, d)
    F = F or E0
    v = complex(v)
    dbar = inv_mod(d % c, c) if c > 1 else 0
    if mode == "direct":
        ns = np.arange(1, kmax + 1)
        coeffs = np.array([F.A(m, int(n)) for n in ns])
        phases = np.exp(2j * np.pi * ((ns * dbar) % c) / c) if c > 1 else 1.0
        return complex((coeffs * phases * ns ** (-v)).sum())
    if mode != "hurwitz":
        raise DomainViolation(f"unknown mode {mode!r}")
    if m != 1:
        raise UnsupportedContinuation("exact continuation implemented for m = 1 only")
    if F.kind != "E0":
        raise UnsupportedContinuation("exact continuation implemented for the unshifted case only")
    if v == 1:
        raise Pole("triple pole at v = 1")
    zs = hurwitz_vector(v, c, contract)
    z = np.empty(c, dtype=np.complex128)
    z[1:] = zs[:c - 1]
    z[0] = zs[c - 1]  # residue 0 mod c carries zeta(v, 1)
    idx = np.arange(c)
    two = np.zeros(c, dtype=np.complex128)
    np.add.at(two, np.outer(idx, idx).ravel() % c, np.outer(z, z).ravel())
    three = np.zeros(c, dtype=np.complex128)
    np.add.at(three, np.outer(idx, idx).ravel() % c, np.outer(two, z).ravel())
    phases = np.exp(2j * np.pi * ((idx * dbar) % c) / c)
    return complex(c ** (-3 * v) * (three * phases).sum())


def phi_tail(m: int, v: complex, kmax: int, F: GL3Coefficients | None = None) -> float:
    """Majorant for the direct-mode truncation tail, from |A(m,n)| growth."""
    F = F or E0
    rv = complex(v).real
    eta = 0.4
    if rv <= 1 + eta:
        raise RegionViolation("direct mode needs Re v > 1.4 for the tail majorant")
    cconst = max(tau3(n) / n ** eta for n in range(1, 2001))
    return abs(F.a_first(m)) * 9 * cconst * kmax ** (1 + eta - rv) / (rv - 1 - eta)


def xi_series(c: int, d: int, m: int, v: complex, K: int = 10 ** 4,
              F: GL3Coefficients | None = None) -> complex:
    """Kloosterman-twisted dual series
    c sum_{n1 | cm} sum_{n2>0} A(n2, n1)/(n2 n1) S(m d, n2, m c / n1)
    (n2 n1^2 / (c^3 m))^(-v), truncated at n2 <= K."""
    _check_coprime(c, d)
    F = F or E0
    v = complex(v)
    total = 0.0 + 0.0j
    n2s = np.arange(1, K + 1)
    for n1 in divisors(c * m):
        mod = m * c // n1
        coeffs = np.array([F.A(int(n2), n1) for n2 in n2s])
        kl = np.array([kloosterman(m * d, int(n2), mod) for n2 in n2s])
        total += (coeffs * kl / (n2s * n1)
                  * (n2s * n1 ** 2 / (c ** 3 * m)) ** (-v)).sum()
    return complex(c * total)


def xi_tail(c: int, m: int, v: complex, K: int, F: GL3Coefficients | None = None) -> float:
    """Majorant for the n2-tail of xi_series: |S| <= modulus and polynomial
    coefficient growth."""
    rv = complex(v).real
    eta = 0.4
    if rv <= eta:
        raise RegionViolation("tail majorant needs Re v > 0.4")
    cconst = max(tau3(n) / n ** eta for n in range(1, 2001))
    out = 0.0
    for n1 in divisors(c * m):
        mod = m * c // n1
        amp = 3 * cconst * tau3(n1) * mod / n1
        out += amp * abs((n1 ** 2 / (c ** 3 * m)) ** (-complex(v))) \
            * K ** (eta - rv) / (rv - eta)
    return c * out


# ---------------------------------------------------------------------------
# Residue Euler factors of the shifted coefficient sum

def _char_values(chi, p: int) -> tuple[complex, complex, complex]:
    """(chi(p), conj chi(p), trivial-character value at p)."""
    if isinstance(chi, DirichletCharacter):
        cp = complex(chi(p))
        c0 = 1.0 if gcd(p, chi.modulus) == 1 else 0.0
    else:
        cp = complex(chi)
        c0 = 0.0 if cp == 0 else 1.0
    cbar = cp.conjugate()
    return cp, cbar, complex(c0)


def _pow_array(base: complex, K: int) -> np.ndarray:
    out = np.empty(K + 1, dtype=np.complex128)
    out[0] = 1.0
    for k in range(1, K + 1):
        out[k] = out[k - 1] * base
    return out


def residue_factor_brute(p: int, s: complex, w: complex,
                         mu: tuple[complex, complex, complex], chi,
                         K: int | None = None, ell_val: int = 0) -> complex:
    """p-Euler factor of the residue multi-sum by direct valuation summation.

    Sums over valuations (e_d in {0,1} squarefree, e_c, e_a in {e_c-1, e_c}
    from the Moebius-weighted divisor pair a | c, e_r, e_b1, e_b2 with
    e_c <= e_d + e_b1 + e_b2 and e_r + e_a >= ell_val), each variable carrying
    its character weight and power of p from the displayed quadruple sum.
    """
    s, w = complex(s), complex(w)
    m1, m2, m3 = (complex(x) for x in mu)
    cp, cbar, _ = _char_values(chi, p)
    # geometric ratios of each summation direction
    rat_b1 = p ** (-(1 + m1 - m3))
    rat_b2 = p ** (-(1 + m2 - m3))
    rat_r = cbar * p ** (-(1 - s + w - m3))
    rat_a = cbar * p ** (s - w + m3)          # p^{e_a} folded in
    rat_c = cp * p ** (-(2 * s - 1 + 2 * m3))
    for name, r in (("b1", rat_b1), ("b2", rat_b2), ("r", rat_r),
                    ("c*a", rat_c * rat_a), ("c", rat_c)):
        if abs(r) >= 1 - 1e-9:
            raise RegionViolation(f"divergent {name}-direction, ratio {abs(r):.3f}")
    if K is None:
        rho = max(abs(rat_b1), abs(rat_b2), abs(rat_r),
                  abs(rat_c * rat_a), abs(rat_c))
        K = max(40, min(4000, int(np.ceil(np.log(1e-14) / np.log(max(rho, 1e-12))))))

    b1 = _pow_array(rat_b1, K)
    b2 = _pow_array(rat_b2, K)
    conv = np.convolve(b1, b2)                      # conv[k] = sum_{i+j=k}
    suffix = np.concatenate([np.cumsum(conv[::-1])[::-1], [0.0]])
    rpow = _pow_array(rat_r, K)
    rsuffix = np.concatenate([np.cumsum(rpow[::-1])[::-1], [0.0]])

    cpow = _pow_array(rat_c, K)
    apow = _pow_array(rat_a, K)
    wd = (1.0, -cp * p ** (-(1 + 2 * s - m3)))       # e_d = 0, 1
    total = 0.0 + 0.0j
    for e_d in (0, 1):
        for off in (0, 1):
            for e_c in range(off, K + 1):
                e_a = e_c - off
                need_b = max(0, e_c - e_d)
                if need_b > 2 * K:
                    continue
                need_r = max(0, ell_val - e_a)
                if need_r > K:
                    continue
                total += (wd[e_d] * (-1) ** off * cpow[e_c] * apow[e_a]
                          * rsuffix[need_r] * suffix[need_b])
    return complex(total)


def residue_factor_closed(p: int, s: complex, w: complex,
                          mu: tuple[complex, complex, complex], chi) -> complex:
    """Closed form of the p-Euler factor for p not dividing the level shift:
    numerator polynomial over the five-factor denominator."""
    s, w = complex(s), complex(w)
    m1, m2, m3 = (complex(x) for x in mu)
    cp, cbar, c0 = _char_values(chi, p)
    P = (1
         - cp * p ** (-(2 * s - m1))
         - cp * p ** (-(2 * s - m2))
         + cp * p ** (-(1 + 3 * s + w - m3 + m1))
         + cp * p ** (-(1 + 3 * s + w - m3 + m2))
         - c0 * p ** (-(1 + s + w - m3 + m1 + m2))
         + cp ** 2 * p ** (-(4 * s + m3))
         - cp ** 2 * p ** (-(1 + 5 * s + w - m3)))
    dens = (1 - p ** (-1 + m3 - m1),
            1 - p ** (-1 + m3 - m2),
            1 - c0 * p ** (-s - w - m1),
            1 - c0 * p ** (-s - w - m2),
            1 - cbar * p ** (-1 - w + s + m3))
    out = complex(P)
    for f in dens:
        if abs(f) < 1e-13:
            raise Pole("denominator factor vanishes")
        out /= f
    return out


def residue_factor_reduced(p: int, s: complex, w: complex,
                           mu: tuple[complex, complex, complex], chi) -> complex:
    """P_p times (1 - chi(p)p^{-(2s-mu1)})^{-1} (1 - chi(p)p^{-(2s-mu2)})^{-1}.

    The two linear factors absorb the slowly decaying terms of the numerator,
    leaving a product converging like p^{-(1+s+w)} over primes; used to
    accelerate the global Euler product.
    """
    s, w = complex(s), complex(w)
    m1, m2, m3 = (complex(x) for x in mu)
    cp, cbar, c0 = _char_values(chi, p)
    P = (1
         - cp * p ** (-(2 * s - m1))
         - cp * p ** (-(2 * s - m2))
         + cp * p ** (-(1 + 3 * s + w - m3 + m1))
         + cp * p ** (-(1 + 3 * s + w - m3 + m2))
         - c0 * p ** (-(1 + s + w - m3 + m1 + m2))
         + cp ** 2 * p ** (-(4 * s + m3))
         - cp ** 2 * p ** (-(1 + 5 * s + w - m3)))
    lin = (1 - cp * p ** (-(2 * s - m1))) * (1 - cp * p ** (-(2 * s - m2)))
    if abs(lin) < 1e-13:
        raise Pole("linear factor vanishes")
    return complex(P / lin)


# ---------------------------------------------------------------------------
# Eisenstein correction factor

def _nu_index(n: int) -> float:
    """prod over p | n of (1 + 1/p)."""
    out = 1.0
    for p in factorize(n):
        out *= 1 + 1 / p
    return out


def _ntilde_sq(M: int, N: int) -> float:
    """prod_{p | N, p not dividing (M, N/M)} p/(p+1)
    * prod_{p | (M, N/M)} (p-1)/(p+1)."""
    g = gcd(M, N // M)
    out = 1.0
    for p in factorize(N):
        if g % p == 0:
            out *= (p - 1) / (p + 1)
        else:
            out *= p / (p + 1)
    return out


def _char_at(psi: DirichletCharacter, n: int) -> complex:
    return complex(psi(n)) if psi.modulus > 1 else 1.0 + 0.0j


def _local_rs_inverse(v: complex, p: int, psi_p: complex,
                      F: GL3Coefficients) -> complex:
    """Inverse local factor prod_j (1 - psi(p) p^{mu_j} p^(-v)) of the dual
    coefficient series."""
    out = 1.0 + 0.0j
    for mj in F.mu:
        out *= 1 - psi_p * p ** (mj - complex(v))
    return out


def eis_correction(ell: int, Q: int, s: complex, w: complex, t: float,
                   psi: DirichletCharacter, chi: DirichletCharacter,
                   K: int = 10 ** 4, F: GL3Coefficients | None = None) -> complex:
    """Correction Euler factor of the continuous-spectrum moment decomposition.

    ell is coprime to the character modulus q, Q is 1 or q, psi is primitive
    of conductor d0 with d0^2 | ell*Q. The m, c1, f1 sums run over integers
    supported on primes dividing ell*q, truncated at value K.
    """
    F = F or E0
    q = chi.modulus
    s, w = complex(s), complex(w)
    if Q not in (1, q):
        raise DomainViolation("Q must be 1 or the character modulus")
    N_total = ell * Q
    if q > 1 and N_total % (q * q) == 0:
        raise ConductorViolation("q^2 divides ell*Q")
    if gcd(ell, q) != 1:
        raise GcdViolation("(ell, q) != 1")
    d0 = psi.conductor
    if psi.modulus != d0:
        raise ConductorViolation("psi must be primitive")
    if N_total % (d0 * d0) != 0:
        raise ConductorViolation("conductor^2 of psi must divide ell*Q")

    # local factor at primes of ell2 from the square of psi
    def l_psi(ell2: int) -> complex:
        out = 1.0 + 0.0j
        for p in factorize(ell2):
            f1 = 1 - _char_at(psi, p) ** 2 * p ** (-(1 + 2j * t))
            f2 = 1 - _char_at(psi, p).conjugate() ** 2 * p ** (-(1 - 2j * t))
            out /= f1 * f2
        return out

    total = 0.0 + 0.0j
    for ell1 in divisors(ell):
        ell2 = ell // ell1
        lev = ell2 * Q
        if lev % d0 != 0:
            continue
        # primes available to the m-sum: divide ell, coprime to ell2 q
        m_primes = [p for p in factorize(ell) if ell2 % p != 0 and q % p != 0]
        m_vals = smooth_numbers(m_primes, 60, K) if m_primes else [1]
        cf_primes = [p for p in factorize(ell * q)]
        cf_vals = smooth_numbers(cf_primes, 60, K) if cf_primes else [1]
        outer0 = l_psi(ell2) / (ell1 ** (2 * s) * lev * _nu_index(lev))
        # M1 supported on primes of d0, divisible by d0, with d0*M1*M2 | lev
        for M1 in divisors(lev):
            if M1 % d0 != 0 or lev % (d0 * M1) != 0:
                continue
            if any(d0 % p != 0 for p in factorize(M1)):
                continue
            for M2 in divisors(lev // (d0 * M1)):
                if gcd(M2, d0) != 1:
                    continue
                N = lev // (d0 * M1 * M2)
                ncorr = 1.0 + 0.0j
                for p in factorize(N):
                    pc = _char_at(psi, p) * complex(chi(p)).conjugate()
                    ncorr *= (1 - pc * p ** (-(w + 1j * t)))
                    ncorr *= (1 - pc.conjugate() * p ** (-(w - 1j * t)))
                for p in factorize(ell * q):
                    ncorr *= _local_rs_inverse(s + 1j * t, p, _char_at(psi, p), F)
                    ncorr *= _local_rs_inverse(s - 1j * t, p,
                                               _char_at(psi, p).conjugate(), F)
                nt2 = _ntilde_sq(d0 * M1 * M2, lev) if lev > 1 else 1.0
                for d1 in divisors(M2):
                    mu1 = mobius(M2 // d1)
                    if not mu1:
                        continue
                    for d2 in divisors(M2):
                        mu2 = mobius(M2 // d2)
                        if not mu2:
                            continue
                        outer = (outer0 * M1 * d1 * d2 * mu1 * mu2
                                 * _char_at(psi, d1).conjugate() * _char_at(psi, d2)
                                 / (nt2 * M2)) * ncorr
                        if outer == 0:
                            continue
                        inner = 0.0 + 0.0j
                        for m in m_vals:
                            mm = m ** (-2 * s)
                            for c1 in cf_vals:
                                if gcd(c1, N) != 1:
                                    continue
                                pc1 = _char_at(psi, c1).conjugate()
                                if pc1 == 0:
                                    continue
                                for f1 in cf_vals:
                                    if c1 * f1 > K:
                                        continue
                                    pf1 = _char_at(psi, f1)
                                    if pf1 == 0:
                                        continue
                                    n2 = c1 * f1 * M1 * d1
                                    inner += (F.A(ell1 * m, n2) * pc1 * pf1
                                              * c1 ** (2j * t)
                                              * n2 ** (-(s + 1j * t)) * mm)
                        total += outer * inner * (M1 * d2) ** (-(w - 1j * t))
    return complex(total)
