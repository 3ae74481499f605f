"""The Theta_q / Theta~ series and their Hurwitz-zeta continuation.

Theta_q(n, d; v)  = sum_{(c,d)=1} chi(c) e(c^-1 n q / d) c^(-v)
Theta~ (n, d; v)  = sum_c  chi~(c) chi(d) S(n, c, d) c^(-v)

Both are continued through the finite residue-class decomposition into
Hurwitz zeta values mod qd, and satisfy a 2x2 functional equation coupling
(n, -n) at v <-> 1-v with the G^{+-} gamma factors and tau(chi).
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

import numpy as np

from .charkit import DirichletCharacter, inv_mod
from .errors import GcdViolation
from .expsums import gauss_sum, kloosterman
from .reports import VerificationReport, make_report
from .special import DEFAULT, PrecisionContract, g_pm, hurwitz_vector


@dataclass(frozen=True)
class ThetaArgs:
    n: int
    d: int
    v: complex
    chi: DirichletCharacter

    def __post_init__(self):
        if self.n == 0:
            raise ValueError("n must be nonzero")
        if self.d < 1:
            raise ValueError("d must be positive")
        if gcd(self.d, self.chi.modulus) != 1:
            raise GcdViolation(f"(d, q) = {gcd(self.d, self.chi.modulus)} != 1")


def _theta_q_weights(n: int, d: int, chi: DirichletCharacter) -> np.ndarray:
    """Weight chi(gamma) e(gamma^-1 n q / d) on residues gamma = 1..dq,
    zero off units mod dq."""
    q = chi.modulus
    m = d * q
    gammas = np.arange(1, m + 1)
    vals = chi.values()[gammas % q]
    if d > 1:
        inv_d = np.array([inv_mod(int(g), d) if gcd(int(g), d) == 1 else 0
                          for g in gammas % d])
        coprime_d = np.array([gcd(int(g), d) == 1 for g in gammas % d])
        vals = np.where(coprime_d, vals, 0.0)
        vals = vals * np.exp(2j * np.pi * ((inv_d * n * q) % d) / d)
    return vals


def _theta_tilde_weights(n: int, d: int, chi: DirichletCharacter) -> np.ndarray:
    """Weight chi~(gamma) chi(d) S(n, gamma, d) on gamma = 1..dq."""
    q = chi.modulus
    m = d * q
    gammas = np.arange(1, m + 1)
    chibar = chi.conjugate()
    vals = chibar.values()[gammas % q] * chi(d)
    srow = np.array([kloosterman(n, b, d) for b in range(d)])
    return vals * srow[gammas % d]


def _continued_sum(weights: np.ndarray, m: int, v: complex,
                   contract: PrecisionContract) -> complex:
    v = complex(v)
    if v == 1:
        # removable point: polar parts cancel because the weights sum to zero
        if abs(weights.sum()) > 1e-6 * max(1.0, np.abs(weights).sum()):
            raise ValueError("weights do not sum to zero at v=1")
        zs = hurwitz_vector(1, m, contract, deflate=True)
    else:
        zs = hurwitz_vector(v, m, contract)
    return complex(m ** (-v) * (weights * zs).sum())


def theta_q(args: ThetaArgs, contract: PrecisionContract = DEFAULT) -> complex:
    m = args.d * args.chi.modulus
    return _continued_sum(_theta_q_weights(args.n, args.d, args.chi), m, args.v, contract)


def theta_tilde(args: ThetaArgs, contract: PrecisionContract = DEFAULT) -> complex:
    m = args.d * args.chi.modulus
    return _continued_sum(_theta_tilde_weights(args.n, args.d, args.chi), m, args.v, contract)


def theta_q_batch(ns: np.ndarray, d: int, v: complex, chi: DirichletCharacter,
                  contract: PrecisionContract = DEFAULT) -> np.ndarray:
    """Theta_q(n, d; v) for an array of nonzero n, sharing one Hurwitz vector."""
    q = chi.modulus
    if gcd(d, q) != 1:
        raise GcdViolation(f"(d, q) = {gcd(d, q)} != 1")
    m = d * q
    v = complex(v)
    gammas = np.arange(1, m + 1)
    base = chi.values()[gammas % q] * hurwitz_vector(v, m, contract)
    ns = np.asarray(ns)
    if d == 1:
        return m ** (-v) * base.sum() * np.ones(len(ns), dtype=np.complex128)
    gd = gammas % d
    cop = np.gcd(gd, d) == 1
    invq = np.array([inv_mod(int(g), d) if ok else 0 for g, ok in zip(gd, cop)])
    base = np.where(cop, base, 0)
    phase = np.exp(2j * np.pi * ((ns[:, None] * ((invq * q) % d)) % d) / d)
    return m ** (-v) * (phase @ base)


def theta_tilde_batch(ns: np.ndarray, d: int, v: complex, chi: DirichletCharacter,
                      contract: PrecisionContract = DEFAULT) -> np.ndarray:
    """Theta~(n, d; v) for an array of nonzero n, sharing one Hurwitz vector."""
    from .expsums import kloosterman_matrix
    q = chi.modulus
    if gcd(d, q) != 1:
        raise GcdViolation(f"(d, q) = {gcd(d, q)} != 1")
    m = d * q
    v = complex(v)
    gammas = np.arange(1, m + 1)
    base = (chi.conjugate().values()[gammas % q] * chi(d)
            * hurwitz_vector(v, m, contract))
    kmat = kloosterman_matrix(d, np.asarray(ns), gammas % d)
    return m ** (-v) * (kmat @ base)


def theta_q_direct(args: ThetaArgs, kmax: int) -> complex:
    """Truncated defining sum; valid for Re v > 1 only (oracle use)."""
    chi, d, n, v = args.chi, args.d, args.n, complex(args.v)
    total = 0.0 + 0.0j
    for c in range(1, kmax + 1):
        if gcd(c, d) != 1:
            continue
        w = chi(c)
        if w == 0:
            continue
        ph = (inv_mod(c, d) * n * chi.modulus) % d if d > 1 else 0
        total += w * np.exp(2j * np.pi * ph / d) * c ** (-v)
    return total


def theta_tilde_direct(args: ThetaArgs, kmax: int) -> complex:
    chi, d, n, v = args.chi, args.d, args.n, complex(args.v)
    chibar = chi.conjugate()
    srow = [kloosterman(n, b, d) for b in range(d)]
    total = 0.0 + 0.0j
    for c in range(1, kmax + 1):
        w = chibar(c)
        if w == 0:
            continue
        total += w * chi(d) * srow[c % d] * c ** (-v)
    return total


def verify_theta_functional_equation(args: ThetaArgs,
                                     contract: PrecisionContract = DEFAULT,
                                     tolerance: float = 1e-5) -> VerificationReport:
    """Check the 2x2 functional equation relating Theta_q at v to Theta~ at 1-v."""
    chi, d, n, v = args.chi, args.d, args.n, complex(args.v)
    q = chi.modulus
    th = np.array([
        theta_q(ThetaArgs(n, d, v, chi), contract),
        theta_q(ThetaArgs(-n, d, v, chi), contract),
    ])
    tt = np.array([
        theta_tilde(ThetaArgs(n, d, 1 - v, chi), contract),
        theta_tilde(ThetaArgs(-n, d, 1 - v, chi), contract),
    ])
    # For odd chi the off-diagonal entries acquire a chi(-1) sign (the minus
    # branch of the additive-twist Gauss-sum identity picks up chi(-1)).
    e = complex(chi(-1))
    # 1-v at a nonpositive integer puts the matrix entries on a gamma pole;
    # the equation is then checked in the equivalent inverted form, whose
    # matrix G^{+-}(v) is regular there.
    at_pole = abs(v.imag) < 1e-9 and v.real >= 1 - 1e-9 and \
        abs(v.real - round(v.real)) < 1e-9
    if at_pole:
        gm = g_pm(v, -1, contract)
        gp = g_pm(v, 1, contract)
        mat = np.array([[gp, e * gm], [e * gm, gp]])
        pref = (q * d) ** v / gauss_sum(chi)
        lhs = tt
        rhs = pref * (mat @ th)
        vec = th
    else:
        gm = g_pm(1 - v, -1, contract)
        gp = g_pm(1 - v, 1, contract)
        mat = np.array([[gm, e * gp], [e * gp, gm]])
        pref = gauss_sum(chi) * (q * d) ** (-v)
        lhs = th
        rhs = pref * (mat @ tt)
        vec = tt
    # noise floor: when both sides vanish, the achievable resolution is set by
    # the magnitudes entering the matrix product, not by the (zero) result
    floor = 1e-9 * abs(pref) * float(np.abs(mat).max() * np.abs(vec).max())
    scale = max(np.abs(lhs).max(), np.abs(rhs).max(), floor, 1e-300)
    err = np.abs(lhs - rhs).max()
    rep = make_report(
        "theta-feq", f"q={q},chi={chi.label},d={d},n={n},v={v}",
        {"q": q, "chi": list(chi.label), "d": d, "n": n, "v": v},
        complex(lhs[0]), complex(rhs[0]), tolerance,
    )
    rep.status = "pass" if err <= tolerance * scale else "fail"
    return rep


def theta_residue_weight_sum(n: int, d: int, chi: DirichletCharacter) -> complex:
    """Residue of Theta_q at v=1 times qd: should vanish for nontrivial chi."""
    return complex(_theta_q_weights(n, d, chi).sum())
