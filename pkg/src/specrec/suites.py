"""Named verification suites: each runs a family of identity checks and
returns one VerificationReport per case.

Suites are registered in SUITES by name; run_suite dispatches by name and
raises UnknownSuite otherwise.  Every suite accepts a configuration mapping
(possibly empty) whose recognized keys override the default grids, so the
command line and config files share one code path.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, log

import numpy as np

from .charkit import DirichletCharacter, inv_mod, primitive_characters
from .errors import UnknownSuite
from .expsums import gauss_sum, kloosterman, selberg_rhs, twisted_kloosterman
from .gl3 import (E0, SatakeGL2, SatakeGL3, local_rs_factor, local_rs_series,
                  local_rs_tail, phi_series, residue_factor_brute,
                  residue_factor_closed, xi_series)
from .reports import Timer, VerificationReport, make_report
from .special import DEFAULT, script_g
from .theta import ThetaArgs, verify_theta_functional_equation


def _cfg(config, key, default):
    return config.get(key, default) if config else default


def suite_theta_feq(config=None) -> list[VerificationReport]:
    qs = _cfg(config, "q", [5, 7])
    ds = _cfg(config, "d", [1, 2, 3])
    ns = _cfg(config, "n", [1, -1, 2])
    vs = [complex(v) for v in _cfg(config, "v", [2, 1.5, 0.5, 0.5 + 4j])]
    tol = _cfg(config, "tol", 1e-5)
    out = []
    for q in qs:
        for chi in primitive_characters(q):
            for d in ds:
                if gcd(d, q) != 1:
                    continue
                for n in ns:
                    for v in vs:
                        with Timer() as tm:
                            rep = verify_theta_functional_equation(
                                ThetaArgs(n, d, v, chi), tolerance=tol)
                        rep.wall_time = tm.elapsed
                        out.append(rep)
    return out


def suite_selberg(config=None) -> list[VerificationReport]:
    """S(a, b, c) = sum_{d | (a,b,c)} d S(1, ab/d^2, c/d), all a, b mod c."""
    cmax = _cfg(config, "cmax", 60)
    tol = _cfg(config, "tol", 1e-10)
    out = []
    for c in range(1, cmax + 1):
        with Timer() as tm:
            worst = 0.0
            arg = (1, 1)
            for a in range(1, c + 1):
                for b in range(1, c + 1):
                    err = abs(kloosterman(a, b, c) - selberg_rhs(a, b, c))
                    if err > worst:
                        worst, arg = err, (a, b)
        rep = make_report("selberg", f"c={c}", {"c": c, "worst_ab": list(arg)},
                          worst, 0.0, tol, relative=False, wall_time=tm.elapsed)
        out.append(rep)
    return out


def suite_twisted_mult(config=None) -> list[VerificationReport]:
    """S_chi(-r, n2 q, qc) = tau(chi) conj(chi)(r) chi(c) S(-r qbar, n2, c)
    for (c, q) = (r, q) = 1."""
    qs = _cfg(config, "q", [5, 7])
    cmax = _cfg(config, "cmax", 40)
    tol = _cfg(config, "tol", 1e-9)
    out = []
    for q in qs:
        chi = primitive_characters(q)[0]
        tau = gauss_sum(chi)
        for c in range(1, cmax + 1):
            if gcd(c, q) != 1:
                continue
            qbar = inv_mod(q % c, c) if c > 1 else 0
            with Timer() as tm:
                worst = 0.0
                for r in range(1, min(q, 5)):
                    for n2 in range(1, min(c, 6) + 1):
                        lhs = twisted_kloosterman(-r, n2 * q, q * c, chi)
                        # the factorization through the prime-to-q part picks
                        # up chi(-1) alongside conj(chi)(r) chi(c)
                        rhs = (tau * chi(-1) * np.conj(chi(r)) * chi(c)
                               * kloosterman((-r * qbar) % c, n2, c))
                        worst = max(worst, abs(lhs - rhs))
            scale = q * c
            rep = make_report("twisted-mult", f"q={q},c={c}", {"q": q, "c": c},
                              worst / scale, 0.0, tol, relative=False,
                              wall_time=tm.elapsed)
            out.append(rep)
    return out


def suite_vanishing(config=None) -> list[VerificationReport]:
    """S_chi(r, n2 q, c) = 0 whenever q^2 | c and (r, q) = 1."""
    qs = _cfg(config, "q", [5, 7])
    mults = _cfg(config, "multiples", [1, 2, 3])
    tol = _cfg(config, "tol", 1e-9)
    out = []
    for q in qs:
        chi = primitive_characters(q)[0]
        for k in mults:
            c = q * q * k
            with Timer() as tm:
                worst = max(
                    abs(twisted_kloosterman(r, n2 * q, c, chi))
                    for r in (1, 2) for n2 in range(c)
                )
            rep = make_report("vanishing", f"q={q},c={c}", {"q": q, "c": c},
                              worst, 0.0, tol * c, relative=False,
                              wall_time=tm.elapsed)
            out.append(rep)
    return out


def suite_local_rs(config=None) -> list[VerificationReport]:
    """Closed-form degree-6 local factor vs. the coefficient series at K=12,
    within the geometric tail bound, for random unitary Satake data."""
    n_samples = _cfg(config, "samples", 50)
    seed = _cfg(config, "seed", 20240817)
    K = _cfg(config, "K", 12)
    rng = np.random.default_rng(seed)
    out = []
    for i in range(n_samples):
        th = rng.uniform(0, 2 * np.pi, size=4)
        f = SatakeGL2(np.exp(1j * th[0]), np.exp(1j * th[1]))
        F = SatakeGL3((np.exp(1j * th[2]), np.exp(1j * (th[3] - th[2])),
                       np.exp(-1j * th[3])))
        chi_p = f.central_value
        p = int(rng.choice([2, 3, 5, 7]))
        s = complex(rng.choice([0.6, 1.2, 2.0]), rng.uniform(-2, 2))
        with Timer() as tm:
            closed = local_rs_factor(s, f, F, chi_p, p)
            series = local_rs_series(s, f, F, chi_p, K, p)
            tail = local_rs_tail(s, f, F, K, p)
        # the tail bound can drop below double-precision roundoff at K=12;
        # allow the machine-arithmetic floor on top of it
        rep = make_report("local-rs", f"sample={i}",
                          {"p": p, "s": s, "seed": seed}, closed, series,
                          0.0, tail_budget=tail + 1e-12, relative=False,
                          wall_time=tm.elapsed)
        out.append(rep)
    return out


def suite_residue_euler(config=None) -> list[VerificationReport]:
    """Seven-case brute-force residue Euler factor equals the closed form."""
    pmax = _cfg(config, "pmax", 50)
    tol = _cfg(config, "tol", 1e-7)
    sw_points = _cfg(config, "sw", [(1.8, 14.5), (1.6, 2.2), (0.75, 0.9)])
    radius = _cfg(config, "mu_radius", 1e-2)
    from sympy import primerange
    chi = primitive_characters(5)[0]
    grid = [-radius, 0.0, radius]
    out = []
    for p in primerange(2, pmax + 1):
        for s0, w0 in sw_points:
            with Timer() as tm:
                worst = 0.0
                for m1 in grid:
                    for m2 in grid:
                        mu = (m1, m2, -m1 - m2)
                        b = residue_factor_brute(p, s0, w0, mu, chi)
                        c = residue_factor_closed(p, s0, w0, mu, chi)
                        worst = max(worst, abs(b - c) / max(abs(b), abs(c)))
            rep = make_report("residue-euler", f"p={p},s={s0},w={w0}",
                              {"p": p, "s": s0, "w": w0}, worst, 0.0, tol,
                              relative=False, wall_time=tm.elapsed)
            out.append(rep)
    return out


def suite_voronoi_small_c(config=None) -> list[VerificationReport]:
    """Additively twisted coefficient series at small modulus equals the
    gamma-matrix combination of its Kloosterman-dual series."""
    cs = _cfg(config, "c", [1, 2, 3])
    v = complex(_cfg(config, "v", -1.5))
    K = _cfg(config, "K", 16000)
    tol = _cfg(config, "tol", 1e-4)
    mu = (0.0, 0.0, 0.0)
    gp = script_g(1 - v, mu, +1)
    gm = script_g(1 - v, mu, -1)
    out = []
    for c in cs:
        for d in ([1] if c == 1 else [1, -1]):
            with Timer() as tm:
                lhs = phi_series(c, d, 1, v)
                rhs = (gp * xi_series(c, d, 1, -v, K=K)
                       + gm * xi_series(c, -d, 1, -v, K=K))
            rep = make_report("voronoi-small-c", f"c={c},d={d}",
                              {"c": c, "d": d, "v": v, "K": K}, lhs, rhs, tol,
                              wall_time=tm.elapsed)
            out.append(rep)
    return out


def suite_bijection(config=None) -> list[VerificationReport]:
    """The divisor-bijection rearrangement: both orderings of the truncated
    Kloosterman-coefficient sum agree term-for-term."""
    from .series import eval_D, eval_E
    q = _cfg(config, "q", 5)
    ells = _cfg(config, "ell", [1, 2, 6])
    K = _cfg(config, "K", 200)
    tol = _cfg(config, "tol", 1e-12)
    s, u, w = (complex(x) for x in _cfg(config, "suw", (1.8, -0.8, 1.6)))
    chi = primitive_characters(q)[0]
    out = []
    for ell in ells:
        with Timer() as tm:
            e = eval_E(q, ell, s, u, w, chi, K=K)
            d = eval_D(q, ell, s, u, w, chi, K=K)
        rep = make_report("bijection", f"q={q},ell={ell},K={K}",
                          {"q": q, "ell": ell, "K": K, "s": s, "u": u, "w": w},
                          e, d, tol, wall_time=tm.elapsed)
        out.append(rep)
    return out


def suite_kernel_identities(config=None) -> list[VerificationReport]:
    """The holomorphic kernel is the spectral kernel at t = (k-1)/(2i), and
    the minus kernel at t = 0 is 4 K_0(4 pi x)."""
    from mpmath import besselk, pi as mppi
    from .transforms import kernel_J
    tol = _cfg(config, "tol", 1e-9)
    xs = np.geomspace(0.05, 20.0, _cfg(config, "nx", 20))
    out = []
    for k in _cfg(config, "k", [6, 8]):
        with Timer() as tm:
            worst = 0.0
            for x in xs:
                a = kernel_J("hol", float(x), k)
                b = kernel_J("+", float(x), (k - 1) / 2j)
                worst = max(worst, abs(a - b) / max(abs(a), abs(b), 1e-300))
        out.append(make_report("kernel-identities", f"hol-vs-plus,k={k}",
                               {"k": k}, worst, 0.0, tol, relative=False,
                               wall_time=tm.elapsed))
    with Timer() as tm:
        worst = 0.0
        for x in [0.1, 0.5, 2.0]:
            a = kernel_J("-", x, 0.0)
            b = complex(4 * besselk(0, 4 * mppi * x))
            worst = max(worst, abs(a - b) / abs(b))
    out.append(make_report("kernel-identities", "minus-at-zero", {},
                           worst, 0.0, tol, relative=False,
                           wall_time=tm.elapsed))
    return out


def suite_k_decay(config=None) -> list[VerificationReport]:
    """Fitted constant in |Kh(x)| <= C T min((x/T)^3, (x/T)^-3) for the
    sup-normalized test function, plus the far-range decay example."""
    from .transforms import AdmissibleTestFunction, K_transform, k_bound_constant
    Ts = _cfg(config, "T", [10.0])
    cmax = _cfg(config, "cmax", 1e3)
    out = []
    for T in Ts:
        h = AdmissibleTestFunction(T=float(T))
        with Timer() as tm:
            C = k_bound_constant(h)
        out.append(make_report("k-decay", f"bound-constant,T={T}", {"T": T},
                               C, 0.0, cmax, relative=False,
                               wall_time=tm.elapsed))
        x_far = 10 * float(T) ** (13 / 12)
        with Timer() as tm:
            val = abs(K_transform(h, x_far)) / h.sup_norm()
        out.append(make_report("k-decay", f"far-range,T={T}",
                               {"T": T, "x": x_far}, val, 0.0, 1e-6 * float(T),
                               relative=False, wall_time=tm.elapsed))
    return out


def suite_h_contour(config=None) -> list[VerificationReport]:
    """Contour-shift soundness of the curved-contour transform: the integral
    on the original contour equals the shifted integral plus the residue of
    the pole crossed at the origin."""
    from .transforms import AdmissibleTestFunction, h_contour_decomposition
    points = _cfg(config, "points", [(0.6, 0.7, -0.4)])
    sign_pairs = _cfg(config, "signs", [(1, 1), (-1, -1)])
    tol = _cfg(config, "tol", 1e-6)
    h = AdmissibleTestFunction(T=float(_cfg(config, "T", 4.0)))
    out = []
    for s, w, u in points:
        for signs in sign_pairs:
            with Timer() as tm:
                direct, shifted = h_contour_decomposition(
                    s, w, u, tuple(signs), h)
            rep = make_report("h-contour", f"s={s},w={w},u={u},signs={signs}",
                              {"s": s, "w": w, "u": u, "signs": list(signs)},
                              direct, shifted, tol, wall_time=tm.elapsed)
            out.append(rep)
    return out


def suite_exponents(config=None) -> list[VerificationReport]:
    """Exact reproduction of the headline subconvexity exponents."""
    from .exponents import balance_amplifier, subconvex_exponent
    out = []
    with Timer() as tm:
        q_exp, (c0, c1) = subconvex_exponent(Fraction(3, 8), Fraction(1, 4))
    ok_q = q_exp == Fraction(1, 4) - Fraction(1, 128)
    ok_t = (c0, c1) == (Fraction(1, 2), Fraction(1, 16))
    out.append(make_report(
        "exponents", "subconvex(3/8,1/4)",
        {"q_exp": str(q_exp), "t_exp": f"{c0} - {c1}*(1-2*theta0)"},
        float(q_exp), float(Fraction(31, 128)), 0.0, relative=False,
        wall_time=tm.elapsed))
    out[-1].status = "pass" if (ok_q and ok_t) else "fail"
    with Timer() as tm:
        bal = balance_amplifier(Fraction(0))
    ok = (bal["fourth_root_q_exp"] == Fraction(31, 128)
          and bal["fourth_root_T_exp"] == Fraction(1, 2) - Fraction(1, 20)
          and bal["L_q_exp"] == Fraction(1, 32))
    rep = make_report(
        "exponents", "balance(0)",
        {"L": f"q^({bal['L_q_exp']}) T^({bal['L_T_exp']})",
         "fourth_root_q": str(bal["fourth_root_q_exp"]),
         "fourth_root_T": str(bal["fourth_root_T_exp"])},
        float(bal["fourth_root_q_exp"]), float(Fraction(31, 128)), 0.0,
        relative=False, wall_time=tm.elapsed)
    rep.status = "pass" if ok else "fail"
    out.append(rep)
    return out


def suite_amplifier(config=None) -> list[VerificationReport]:
    """Amplifier lower bound L^2/log L for the divisor eigenvalue sequence,
    plus the exact Hecke relation at primes."""
    from .exponents import (amplifier_lower_bound, divisor_eigenvalues,
                            hecke_relation_defect)
    L = _cfg(config, "L", 100)
    q = _cfg(config, "q", 5)
    chi = primitive_characters(q)[0]
    lamv = divisor_eigenvalues(chi, (L + 1) * (L + 1))
    with Timer() as tm:
        res = amplifier_lower_bound(L, lambda n: lamv[n])
    ratio = res["amplified"] / (L * L / log(L))
    rep = make_report("amplifier", f"L={L},q={q}", {"L": L, "q": q, **res},
                      ratio, 1.0, 0.0, relative=False, wall_time=tm.elapsed)
    rep.status = "pass" if 0.1 <= ratio <= 10 else "fail"
    out = [rep]
    with Timer() as tm:
        worst = max(abs(hecke_relation_defect(chi, p))
                    for p in (2, 3, 7, 11, 13))
    out.append(make_report("amplifier", f"hecke-relation,q={q}", {"q": q},
                           worst, 0.0, 1e-12, relative=False,
                           wall_time=tm.elapsed))
    return out


SUITES = {
    "theta-feq": suite_theta_feq,
    "selberg": suite_selberg,
    "twisted-mult": suite_twisted_mult,
    "vanishing": suite_vanishing,
    "local-rs": suite_local_rs,
    "residue-euler": suite_residue_euler,
    "voronoi-small-c": suite_voronoi_small_c,
    "bijection": suite_bijection,
    "kernel-identities": suite_kernel_identities,
    "k-decay": suite_k_decay,
    "h-contour": suite_h_contour,
    "exponents": suite_exponents,
    "amplifier": suite_amplifier,
}


def run_suite(name: str, config=None) -> list[VerificationReport]:
    if name not in SUITES:
        raise UnknownSuite(f"unknown suite {name!r}; known: {sorted(SUITES)}")
    reports = SUITES[name](config)
    reports.sort(key=lambda r: r.case_id)
    return reports
