"""Complex special functions: log-gamma, Hurwitz/periodic zeta, Dirichlet L,
Bessel kernels of complex order, and the gamma-factor products.

Scalar evaluations run through mpmath at the contract's working precision and
are returned as Python complex; hurwitz_vector provides a cached fast path for
the residue-class zeta vectors the theta continuations consume in bulk.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import mpmath as mp
import numpy as np

from .charkit import DirichletCharacter
from .errors import DomainViolation, Pole, PrecisionLoss


@dataclass(frozen=True)
class PrecisionContract:
    working_digits: int = 34
    target_rel_tol: float = 1e-25

    def __post_init__(self):
        if self.working_digits < 15:
            raise ValueError("working_digits must be >= 15")


DEFAULT = PrecisionContract()
FAST = PrecisionContract(working_digits=16, target_rel_tol=1e-10)


def log_gamma(z: complex, contract: PrecisionContract = DEFAULT) -> complex:
    """Principal branch of log Gamma(z)."""
    if z == int(z.real if isinstance(z, complex) else z) and complex(z).real <= 0 and complex(z).imag == 0:
        raise Pole(f"log_gamma pole at {z}")
    with mp.workdps(contract.working_digits):
        return complex(mp.loggamma(z))


def hurwitz_zeta(v: complex, alpha, contract: PrecisionContract = DEFAULT) -> complex:
    """zeta(v, alpha) = sum_{n>=0} (n+alpha)^(-v), continued in v."""
    if complex(v) == 1:
        raise Pole("hurwitz_zeta has a simple pole at v=1")
    if not 0 < float(alpha) <= 1:
        raise DomainViolation("alpha must lie in (0, 1]")
    with mp.workdps(contract.working_digits):
        return complex(mp.zeta(mp.mpc(v), mp.mpf(alpha)))


def hurwitz_zeta_deflated(alpha, contract: PrecisionContract = DEFAULT) -> complex:
    """Constant Laurent coefficient of zeta(v, alpha) at v=1, i.e. -psi(alpha)."""
    with mp.workdps(contract.working_digits):
        return complex(-mp.digamma(mp.mpf(alpha)))


@lru_cache(maxsize=100000)
def _hurwitz_vector_cached(v_key: complex, m: int, digits: int) -> tuple[complex, ...]:
    with mp.workdps(digits):
        vv = mp.mpc(v_key)
        if vv == 1:
            return tuple(complex(-mp.digamma(mp.mpf(g) / m)) for g in range(1, m + 1))
        return tuple(complex(mp.zeta(vv, mp.mpf(g) / m)) for g in range(1, m + 1))


def hurwitz_vector(v: complex, m: int, contract: PrecisionContract = DEFAULT,
                   deflate: bool = False) -> np.ndarray:
    """Array of zeta(v, g/m) for g = 1..m (entry m is zeta(v, 1)).

    With deflate=True (only meaningful at v=1) returns the constant Laurent
    coefficients -psi(g/m) instead; callers must supply weights summing to 0.
    """
    v = complex(v)
    if v == 1 and not deflate:
        raise Pole("hurwitz_vector pole at v=1; use deflate")
    key = 1 if deflate else v
    digits = min(contract.working_digits, 25)
    return np.array(_hurwitz_vector_cached(key, m, digits), dtype=np.complex128)


def riemann_zeta(v: complex, contract: PrecisionContract = DEFAULT) -> complex:
    if complex(v) == 1:
        raise Pole("zeta pole at v=1")
    with mp.workdps(contract.working_digits):
        return complex(mp.zeta(mp.mpc(v)))


def periodic_zeta(v: complex, a: int, m: int, contract: PrecisionContract = DEFAULT) -> complex:
    """zeta*(v, a/m) = sum_{c>0} e(c a/m) c^(-v), continued for rational a/m.

    Uses the finite decomposition m^(-v) * sum_{g mod m} e(g a/m) zeta(v, g/m).
    """
    if a % m == 0:
        raise DomainViolation("alpha must not be an integer")
    zs = hurwitz_vector(v, m, contract)
    gs = np.arange(1, m + 1)
    weights = np.exp(2j * np.pi * (gs * a % m) / m)
    return complex(m ** (-complex(v)) * (weights * zs).sum())


def dirichlet_l(s: complex, chi: DirichletCharacter, contract: PrecisionContract = DEFAULT) -> complex:
    """L(s, chi) = q^(-s) sum_{a=1}^{q} chi(a) zeta(s, a/q), continued."""
    q = chi.modulus
    s = complex(s)
    if chi.is_trivial and q == 1:
        return riemann_zeta(s, contract)
    if s == 1 and chi.is_trivial:
        raise Pole("L(s, chi_0) pole at s=1")
    if s == 1:
        zs = hurwitz_vector(1, q, contract, deflate=True)
    else:
        zs = hurwitz_vector(s, q, contract)
    weights = chi.values()[np.arange(1, q + 1) % q]
    return complex(q ** (-s) * (weights * zs).sum())


def besselk_imag_order(t: float, y: float, contract: PrecisionContract = DEFAULT) -> complex:
    """K_{2it}(y) for real t via the cosine integral
    int_0^inf exp(-y cosh u) cos(2 t u) du."""
    if y <= 0:
        raise DomainViolation("y must be positive")
    with mp.workdps(contract.working_digits):
        yy = mp.mpf(y)
        depth = contract.working_digits * mp.log(10) + 5
        umax = mp.acosh((yy + depth) / yy)
        val = mp.quad(lambda u: mp.exp(-yy * mp.cosh(u)) * mp.cos(2 * t * u),
                      [0, umax / 2, umax])
        return complex(val)


def bessel_kernels(x: float, order: complex, contract: PrecisionContract = DEFAULT) -> dict:
    """J, I, K of the given complex order at argument x > 0."""
    if x <= 0:
        raise DomainViolation("x must be positive")
    with mp.workdps(contract.working_digits):
        nu = mp.mpc(order)
        rec = {
            "J": complex(mp.besselj(nu, x)),
            "I": complex(mp.besseli(nu, x)),
        }
        if abs(nu.real) < 1e-12 and nu.imag != 0:
            rec["K"] = besselk_imag_order(float(nu.imag) / 2.0, x, contract)
        else:
            rec["K"] = complex(mp.besselk(nu, x))
    for val in rec.values():
        if not np.isfinite([val.real, val.imag]).all():
            raise PrecisionLoss("bessel kernel overflow")
    return rec


# ---------------------------------------------------------------------------
# gamma factors

def g_pm(s: complex, sign: int, contract: PrecisionContract = DEFAULT) -> complex:
    """G^{+-}(s) = Gamma(s) (2 pi)^(-s) exp(+- i pi s / 2)."""
    with mp.workdps(contract.working_digits):
        ss = mp.mpc(s)
        return complex(mp.gamma(ss) * (2 * mp.pi) ** (-ss) * mp.exp(sign * 1j * mp.pi * ss / 2))


def script_g(s: complex, mu: tuple[complex, complex, complex], sign: int,
             contract: PrecisionContract = DEFAULT) -> complex:
    """The degree-3 gamma factor
    4 (2 pi)^(-3s) prod_j Gamma(s + mu_j) (prod_j cos(pi(s+mu_j)/2)
    +- (1/i) prod_j sin(pi(s+mu_j)/2))."""
    if abs(sum(mu)) > 1e-12:
        raise DomainViolation("mu must sum to 0")
    with mp.workdps(contract.working_digits):
        ss = mp.mpc(s)
        gam = mp.mpc(1)
        cos_p = mp.mpc(1)
        sin_p = mp.mpc(1)
        for mj in mu:
            z = ss + mp.mpc(mj)
            gam *= mp.gamma(z)
            cos_p *= mp.cos(mp.pi * z / 2)
            sin_p *= mp.sin(mp.pi * z / 2)
        return complex(4 * (2 * mp.pi) ** (-3 * ss) * gam * (cos_p + sign * sin_p / 1j))


def tt_g(eps: int, s: complex, t: complex, contract: PrecisionContract = DEFAULT) -> complex:
    """tG_eps(s, t) = pi^(-s) Gamma((s + (1-eps)/2 - it)/2) Gamma((s + (1-eps)/2 + it)/2)."""
    if eps not in (1, -1):
        raise DomainViolation("eps must be +1 or -1")
    with mp.workdps(contract.working_digits):
        ss = mp.mpc(s)
        a = (ss + mp.mpf(1 - eps) / 2) / 2
        return complex(mp.pi ** (-ss) * mp.gamma(a - 1j * mp.mpc(t) / 2) * mp.gamma(a + 1j * mp.mpc(t) / 2))


@dataclass(frozen=True)
class GammaFactorSpec:
    kind: str                      # 'G', 'scriptG', or 'ttG'
    sign: int = 1                  # +-1 for G/scriptG, eps for ttG
    mu: tuple[complex, complex, complex] = (0, 0, 0)


def gamma_factor(spec: GammaFactorSpec, s: complex, aux: complex | None = None,
                 contract: PrecisionContract = DEFAULT) -> complex:
    if spec.kind == "G":
        return g_pm(s, spec.sign, contract)
    if spec.kind == "scriptG":
        return script_g(s, spec.mu, spec.sign, contract)
    if spec.kind == "ttG":
        if aux is None:
            raise DomainViolation("ttG needs the spectral parameter t")
        return tt_g(spec.sign, s, aux, contract)
    raise DomainViolation(f"unknown gamma factor kind {spec.kind!r}")
