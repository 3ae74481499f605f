"""Archimedean integral transforms for the opposite-sign Kuznetsov kernel.

The central objects are:

  * AdmissibleTestFunction -- the even entire test function
        h(t) = e^{-(t/T)^2} T^{-6A-24} (t^2+(1/2+i tau)^2)^3 (t^2+(1/2-i tau)^2)^3
               prod_{n=1}^{A+2} (t^2+(n-1/2)^2)(t^2+(n+i tau-1/2)^2)(t^2+(n-i tau-1/2)^2)
    with zeros at i(n-1/2) for |n| <= A+2 and quadruple zeros at
    +-i(1/2 +- i tau); extra zeros can be forced through `forced_zeros`.

  * kernel_J            -- the Bessel kernels J^{+}, J^{-}, J^{hol}
  * K_transform         -- Kh(x) = int J^-(x,t) h(t) t tanh(pi t) dt / (2 pi^2)
  * k_mellin            -- its Mellin transform, via the gamma-pair kernel
  * L_transform         -- the inverse (Mellin-Barnes) transforms L^{+-,hol}
  * H_transform         -- the double-contour transform coupling k_mellin with
                           the degree-3 and degree-1 gamma factors
  * q_tau               -- the unit-modulus root-number weight

Numerical routes are kept independent where they back dual-route checks:
K_transform integrates the kernel's cosine-integral (Lebedev) representation
with the t-integral performed first, while k_mellin integrates the
gamma-pair kernel; the two are tied together only by verification code.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import asinh, cosh, log, pi, sinh, sqrt

import mpmath as mp
import numpy as np
from scipy.interpolate import CubicSpline
from scipy.special import gamma as _sp_gamma
from scipy.special import loggamma as _sp_loggamma

from .errors import DomainViolation, Pole, PrecisionLoss, RegionViolation
from .special import DEFAULT, PrecisionContract, bessel_kernels

LOG_2PI = log(2 * pi)


# ---------------------------------------------------------------------------
# test functions

@dataclass(frozen=True)
class AdmissibleTestFunction:
    """Even entire test function with the mandatory half-integer zeros.

    T sets the spectral scale, tau shifts the forced zeros off the critical
    line, depth is the zero-forcing order A (zeros at i(n-1/2) up to n=A+2),
    forced_zeros is a tuple of (a, order) pairs adding ((t^2+a^2)/(1+a^2))^order,
    and scale is an overall constant multiplier.

    The built-in normalizer T^{-6A-24} calibrates h(T) to order one; the
    supremum over the real line still grows like e^{3A ln(...)} and sits near
    t = T*sqrt(3A+12), so quantitative decay checks divide by sup_norm().
    """
    T: float = 10.0
    tau: float = 0.0
    depth: int = 8
    forced_zeros: tuple = ()
    scale: float = 1.0

    def __post_init__(self):
        if self.T < 1:
            raise DomainViolation("T must be >= 1")
        if self.depth < 1:
            raise DomainViolation("depth must be a positive integer")

    def _zero_offsets(self):
        """The constants z with quadratic factors (t^2 + z^2)/T^2."""
        tau = self.tau
        offs = [0.5 + 1j * tau] * 3 + [0.5 - 1j * tau] * 3
        for n in range(1, self.depth + 3):
            offs.append(n - 0.5)
            offs.append(n - 0.5 + 1j * tau)
            offs.append(n - 0.5 - 1j * tau)
        return offs

    def __call__(self, t):
        t = np.asarray(t, dtype=np.complex128)
        t2 = t * t
        tt = self.T * self.T
        out = np.exp(-t2 / tt) * self.scale
        for z in self._zero_offsets():
            out = out * ((t2 + z * z) / tt)
        for a, order in self.forced_zeros:
            a = complex(a)
            out = out * ((t2 + a * a) / (1 + abs(a) ** 2)) ** order
        if out.ndim == 0:
            return complex(out)
        return out

    def sup_norm(self) -> float:
        return _sup_norm(self)

    def effective_tmax(self, tol: float = 1e-18) -> float:
        """Point beyond which |h(t) t tanh(pi t)| < tol * its real-line max."""
        return _effective_tmax(self, tol)


@lru_cache(maxsize=64)
def _sup_norm(h: AdmissibleTestFunction) -> float:
    ts = np.linspace(0.0, 16 * h.T, 32001)
    return float(np.abs(h(ts)).max())


@lru_cache(maxsize=64)
def _effective_tmax(h: AdmissibleTestFunction, tol: float) -> float:
    ts = np.linspace(0.0, 24 * h.T, 48001)
    w = np.abs(h(ts) * ts * np.tanh(np.pi * ts))
    top = w.max()
    above = np.nonzero(w > tol * top)[0]
    return float(ts[min(above[-1] + 1, len(ts) - 1)])


def h_eval(h: AdmissibleTestFunction, t: complex) -> complex:
    """Evaluate the test function; meaningful in |Im t| <= depth + 1."""
    return h(t)


def q_tau(tau: float, t: complex) -> complex:
    """(1 - i sinh(pi tau)/cosh(pi t)) / (1 + i sinh(pi tau)/cosh(pi t));
    unit modulus for real t, and 1 + O(e^{-pi |t|})."""
    r = 1j * mp.sinh(pi * mp.mpf(tau)) / mp.cosh(pi * mp.mpmathify(t))
    return complex((1 - r) / (1 + r))


# ---------------------------------------------------------------------------
# Bessel kernels

def kernel_J(kind: str, x: float, t_or_k, contract: PrecisionContract = DEFAULT) -> complex:
    """The three integral kernels at argument 4 pi x:

      '-'   : 4 cosh(pi t) K_{2it}(4 pi x)
      '+'   : (pi i / sinh(pi t)) (J_{2it}(4 pi x) - J_{-2it}(4 pi x))
      'hol' : 2 pi i^k J_{k-1}(4 pi x)
    """
    if x <= 0:
        raise DomainViolation("x must be positive")
    y = 4 * pi * x
    if kind == "-":
        t = complex(t_or_k)
        kval = bessel_kernels(y, 2j * t, contract)["K"]
        return complex(4 * mp.cosh(pi * mp.mpmathify(t)) * kval)
    if kind == "+":
        t = complex(t_or_k)
        with mp.workdps(contract.working_digits):
            tt = mp.mpmathify(t)
            sh = mp.sinh(pi * tt)
            if abs(sh) < 1e-30:
                raise Pole("kernel '+' needs sinh(pi t) != 0")
            val = (mp.pi * 1j / sh) * (mp.besselj(2j * tt, y) - mp.besselj(-2j * tt, y))
            return complex(val)
    if kind == "hol":
        k = int(t_or_k)
        if k % 2 != 0 or k <= 0:
            raise DomainViolation("hol kernel needs even k >= 2")
        with mp.workdps(contract.working_digits):
            return complex(2 * mp.pi * (1j) ** k * mp.besselj(k - 1, y))
    raise DomainViolation(f"unknown kernel kind {kind!r}")


# ---------------------------------------------------------------------------
# quadrature helpers

def _gl_panels(edges: np.ndarray, order: int = 10):
    """Gauss-Legendre nodes/weights on consecutive [edges[i], edges[i+1]]."""
    xg, wg = np.polynomial.legendre.leggauss(order)
    a = edges[:-1]
    half = (edges[1:] - a) / 2
    nodes = (a + half)[:, None] + half[:, None] * xg[None, :]
    weights = half[:, None] * wg[None, :]
    return nodes.ravel(), weights.ravel()


def _tanh_sinh_segment(f, z0: complex, z1: complex, levels: int = 7) -> complex:
    """Tanh-sinh rule for int_{z0}^{z1} f(z) dz along the straight segment."""
    hstep = 1.75 / 2 ** (levels - 1)
    kmax = int(6.0 / hstep)
    ks = np.arange(-kmax, kmax + 1)
    u = hstep * ks
    s = np.tanh(0.5 * pi * np.sinh(u))
    w = hstep * (0.5 * pi * np.cosh(u)) / np.cosh(0.5 * pi * np.sinh(u)) ** 2
    mid = (z0 + z1) / 2
    half = (z1 - z0) / 2
    vals = f(mid + half * s)
    return complex(half * np.sum(w * vals))


# ---------------------------------------------------------------------------
# the K transform (Lebedev route)

@lru_cache(maxsize=16)
def _g_hat_spline(h: AdmissibleTestFunction, tol: float):
    """Cubic spline of g(v) = int_R h(t) t tanh(pi t) cos(2 t v) dt plus the
    cutoff v beyond which |g| is negligible."""
    tmax = max(h.effective_tmax(1e-18), h.T * sqrt(log(1 / tol)))
    edges = np.linspace(0.0, tmax, max(64, int(tmax / min(h.T / 4, 1.2))) + 1)
    tn, tw = _gl_panels(edges, 10)
    w0 = np.real(h(tn)) * tn * np.tanh(np.pi * tn) * tw

    vmax_scan = 3.0
    nv = max(20000, int(2 * tmax * vmax_scan * 128 / (2 * pi)))
    vs = np.linspace(0.0, vmax_scan, nv + 1)
    g = np.empty(nv + 1)
    chunk = max(1, (4 * 10 ** 7) // max(len(tn), 1))
    for i in range(0, nv + 1, chunk):
        block = vs[i:i + chunk]
        g[i:i + chunk] = 2.0 * np.cos(2.0 * np.outer(block, tn)) @ w0
    peak = np.abs(g).max()
    floor = peak * 1e-15
    keep = np.nonzero(np.abs(g) > floor)[0]
    vmax = float(vs[min(keep[-1] + 2, nv)]) if len(keep) else 0.1
    spline = CubicSpline(vs, g)
    t95 = h.effective_tmax(1e-3)
    return spline, vmax, peak, t95


def K_transform(h: AdmissibleTestFunction, x: float, tol: float = 1e-9) -> float:
    """Kh(x) = int_R J^-(x,t) h(t) t tanh(pi t) dt / (2 pi^2).

    The t-integral (truncated where the integrand falls below tol of its
    Gaussian peak, no earlier than |t| = T sqrt(log(1/tol))) is carried out
    first against the cosine kernel, leaving the absolutely convergent
    oscillatory v-integral of the kernel's cosine-integral representation:
        Kh(x) = (2/pi^2) int_0^infty cos(4 pi x sinh v) g(v) dv.
    """
    if x <= 0:
        raise DomainViolation("x must be positive")
    spline, vmax, peak, t95 = _g_hat_spline(h, tol)
    y = 4 * pi * x
    total_phase = y * sinh(vmax) + 2 * t95 * vmax
    n_osc = int(total_phase / 3.0) + 2
    k1 = np.arange(1, n_osc)
    osc_edges = np.arcsinh(3.0 * k1 / y)
    flat_edges = np.arange(0.0, vmax, 3.0 / (2 * t95 + 1.0))
    edges = np.unique(np.concatenate([[0.0], osc_edges, flat_edges, [vmax]]))
    edges = edges[edges <= vmax]
    if edges[-1] < vmax:
        edges = np.append(edges, vmax)
    vn, vw = _gl_panels(edges, 8)
    vals = np.cos(y * np.sinh(vn)) * spline(vn)
    return float((2 / pi ** 2) * np.sum(vw * vals))


def k_bound_constant(h: AdmissibleTestFunction, B: int = 3,
                     n_x: int = 25) -> float:
    """Fitted constant C in |Kh(x)| <= C * T * min((x/T)^B, (x/T)^{-B}) on a
    log-grid x in [T/100, 100T], measured for h normalized to unit sup-norm."""
    T = h.T
    sup = h.sup_norm()
    xs = np.exp(np.linspace(log(T / 100), log(100 * T), n_x))
    best = 0.0
    for x in xs:
        bound = T * min((x / T) ** B, (x / T) ** (-B))
        best = max(best, abs(K_transform(h, float(x))) / (sup * bound))
    return best


# ---------------------------------------------------------------------------
# the Mellin transform of Kh (gamma-pair route)

def _log_cosh(t: np.ndarray) -> np.ndarray:
    a = np.abs(t)
    return pi * a - log(2) + np.log1p(np.exp(-2 * pi * a))


def _t_nodes_for_mellin(h: AdmissibleTestFunction, u: complex):
    """Panels on [0, tmax] refined near t = |Im u|/2, where the gamma pair
    develops near-poles once Re u drops below 0."""
    sigma, y = u.real, abs(u.imag)
    tmax = max(h.effective_tmax(1e-18), y / 2 + 2.0)
    base = np.linspace(0.0, tmax, max(96, int(tmax / min(h.T / 4, 1.0))) + 1)
    extra = []
    n = 0
    while n + sigma / 2 < 2.0:
        height = abs(n + sigma / 2)
        if height < 0.5:
            if height < 1e-5:
                raise Pole(f"gamma-pair pole pinches the contour at u={u}")
            half = max(height / 4, 1e-4)
            scales = half * 2.0 ** np.arange(0, 14)
            pts = np.concatenate([y / 2 - scales[::-1], [y / 2], y / 2 + scales])
            extra.append(pts[(pts > 0) & (pts < tmax)])
        n += 1
    if extra:
        base = np.unique(np.concatenate([base] + extra))
    return _gl_panels(base, 10)


def k_mellin(h: AdmissibleTestFunction, u: complex, tol: float = 1e-10,
             _extrapolate: bool = True) -> complex:
    """Mellin transform of K_transform via the gamma-pair kernel:

        Kh^(u) = int (2 pi)^{-u} Gamma(u/2+it) Gamma(u/2-it) cosh(pi t)
                 h(t) t tanh(pi t) dt / (2 pi^2).

    For Re u < 0 the real-t integral is supplemented by the residues of the
    gamma poles that cross the contour during continuation; the mandatory
    half-integer zeros of h cancel the odd-integer singularities, so the
    result is holomorphic in the strip away from even nonpositive integers.
    """
    u = complex(u)
    sigma = u.real
    if _extrapolate and sigma < 1.0:
        # near Re u in 2Z_{<=0} a gamma pole sits on the integration contour;
        # the transform itself is holomorphic there, so recover it from safe
        # neighbours by sixth-order even extrapolation in the real direction
        pinch = min(abs(n + sigma / 2)
                    for n in range(int(max(0, -sigma / 2)) + 2))
        if pinch < 0.02:
            d = 0.08
            g = [(k_mellin(h, u + k * d, tol, _extrapolate=False)
                  + k_mellin(h, u - k * d, tol, _extrapolate=False)) / 2
                 for k in (1, 2, 3)]
            return (15 * g[0] - 6 * g[1] + g[2]) / 10
    tn, tw = _t_nodes_for_mellin(h, u)
    lg = (_sp_loggamma(u / 2 + 1j * tn) + _sp_loggamma(u / 2 - 1j * tn)
          + _log_cosh(tn) - u * LOG_2PI)
    vals = np.exp(lg) * h(tn) * tn * np.tanh(np.pi * tn)
    total = np.sum(tw * vals) / pi ** 2

    n = 0
    while n + sigma / 2 < 0:
        zn = n + u / 2
        corr = (-1) ** n / _factorial(n)
        term = corr * _sp_gamma(u + n) * np.sin(pi * zn) * zn * h(1j * zn)
        total -= (2 * pi) ** (-u) * (2 / pi) * term
        n += 1
    if not np.isfinite([total.real, total.imag]).all():
        raise PrecisionLoss("k_mellin overflow")
    return complex(total)


@lru_cache(maxsize=None)
def _factorial(n: int) -> float:
    out = 1.0
    for k in range(2, n + 1):
        out *= k
    return out


def K_mellin(h: AdmissibleTestFunction, u: complex, tol: float = 1e-10) -> complex:
    return k_mellin(h, u, tol)


def k_mellin_numeric(h: AdmissibleTestFunction, u: complex,
                     span: float = 1e3, n_panels: int = 160) -> complex:
    """Independent oracle: numeric Mellin integral of K_transform over a
    log-grid in x (valid for |Re u| < 3 by the cubic decay of Kh)."""
    T = h.T
    edges = np.linspace(log(T / span), log(span * T), n_panels + 1)
    ln, lw = _gl_panels(edges, 8)
    xs = np.exp(ln)
    vals = np.array([K_transform(h, float(x)) for x in xs])
    return complex(np.sum(lw * vals * np.exp(u * ln)))


# ---------------------------------------------------------------------------
# inverse transforms

def _j_hat(kind: str, t_or_k, u: np.ndarray) -> np.ndarray:
    """Mellin transforms of the kernels in their first argument."""
    if kind in ("+", "-"):
        t = complex(t_or_k)
        lg = (_sp_loggamma(u / 2 + 1j * t) + _sp_loggamma(u / 2 - 1j * t)
              - u * LOG_2PI)
        base = np.exp(lg)
        if kind == "+":
            return base * np.cos(pi * u / 2)
        return base * complex(mp.cosh(pi * mp.mpmathify(t)))
    if kind == "hol":
        k = int(t_or_k)
        lg = (_sp_loggamma((u + k - 1) / 2) - _sp_loggamma((1 + k - u) / 2)
              - u * LOG_2PI)
        return (1j) ** k * pi * np.exp(lg)
    raise DomainViolation(f"unknown kernel kind {kind!r}")


def L_transform(kind: str, phi, t_or_k, eps: float = 0.25,
                im_max: float = 80.0, order: int = 10) -> complex:
    """Mellin-Barnes form of the inverse transform:
        L^{kind} phi-check (t) = int_{(eps)} J^{kind}-hat(., t)(u) phi(-u) du / (2 pi i)
    for phi holomorphic with decay on the working line Re u = eps."""
    edges = np.linspace(-im_max, im_max, max(int(im_max * 4), 64) + 1)
    yn, yw = _gl_panels(edges, order)
    us = eps + 1j * yn
    kern = _j_hat(kind, t_or_k, us)
    phiv = np.array([complex(phi(-z)) for z in us])
    return complex(np.sum(yw * kern * phiv) * 1j / (2j * pi))


# ---------------------------------------------------------------------------
# stable gamma-factor products for contour work

def _log_cos_c(w: np.ndarray) -> np.ndarray:
    up = np.imag(w) >= 0
    out = np.empty_like(w, dtype=np.complex128)
    wu = w[up]
    out[up] = -1j * wu - log(2) + np.log1p(np.exp(2j * wu))
    wd = w[~up]
    out[~up] = 1j * wd - log(2) + np.log1p(np.exp(-2j * wd))
    return out


def _log_sin_c(w: np.ndarray) -> np.ndarray:
    up = np.imag(w) >= 0
    out = np.empty_like(w, dtype=np.complex128)
    wu = w[up]
    out[up] = -1j * wu - log(2) + 1j * pi / 2 + np.log1p(-np.exp(2j * wu))
    wd = w[~up]
    out[~up] = 1j * wd - log(2) - 1j * pi / 2 + np.log1p(-np.exp(-2j * wd))
    return out


def g_pm_fast(s, sign: int):
    """G^{+-}(s) = Gamma(s) (2 pi)^{-s} e^{+- i pi s/2}, numpy-vectorized."""
    s = np.asarray(s, dtype=np.complex128)
    out = np.exp(_sp_loggamma(s) - s * LOG_2PI + sign * 1j * pi * s / 2)
    return complex(out) if out.ndim == 0 else out


def script_g_fast(s, mu: tuple, sign: int):
    """Degree-3 gamma factor, stable for large |Im s| via log-space trig."""
    s = np.asarray(s, dtype=np.complex128)
    scalar = s.ndim == 0
    s = np.atleast_1d(s)
    lg = np.zeros_like(s)
    lc = np.zeros_like(s)
    ls = np.zeros_like(s)
    for mj in mu:
        z = s + complex(mj)
        lg = lg + _sp_loggamma(z)
        lc = lc + _log_cos_c(pi * z / 2)
        ls = ls + _log_sin_c(pi * z / 2)
    out = 4 * np.exp(-3 * s * LOG_2PI + lg + lc) * (1 + sign * np.exp(ls - lc) / 1j)
    return complex(out[0]) if scalar else out


# ---------------------------------------------------------------------------
# the curved contour and the H transform

@dataclass(frozen=True)
class CurvedContour:
    """The path (y - i inf, y - i] + [y - i, x] + [x, y + i] + [y + i, y + i inf)."""
    x: float
    y: float

    def finite_legs(self):
        return ((self.y - 1j, self.x + 0j), (self.x + 0j, self.y + 1j))

    def integrate(self, f, tol: float = 1e-9, panel: float = 1.0,
                  max_panels: int = 400, order: int = 12) -> complex:
        """tanh-sinh on the finite legs; panel-by-panel Gauss rule on the
        infinite vertical legs until the tails are negligible."""
        total = 0.0 + 0.0j
        for z0, z1 in self.finite_legs():
            total += _tanh_sinh_segment(f, z0, z1, levels=7)
        xg, wg = np.polynomial.legendre.leggauss(order)
        for direction in (1.0, -1.0):
            # both infinite legs are traversed in the direction of increasing
            # Im xi, so dxi = +i dtau on each
            quiet = 0
            k = 0
            while k < max_panels:
                a = 1.0 + k * panel
                mid = a + panel / 2
                zs = self.y + 1j * direction * (mid + (panel / 2) * xg)
                contrib = complex(np.sum(wg * f(zs)) * (panel / 2) * 1j)
                total += contrib
                quiet = quiet + 1 if abs(contrib) <= tol * max(abs(total), 1e-300) else 0
                if quiet >= 3:
                    break
                k += 1
            else:
                raise PrecisionLoss("contour tail did not converge")
        return total


def _h_integrand_factory(s: complex, w: complex, u: complex, pm: int, eps: int,
                         h: AdmissibleTestFunction, mu: tuple):
    neg_mu = tuple(-complex(m) for m in mu)

    def f(xis: np.ndarray) -> np.ndarray:
        xis = np.atleast_1d(np.asarray(xis, dtype=np.complex128))
        khat = np.array([k_mellin(h, 1 + w - 3 * s - u + 2 * xi) for xi in xis])
        return (khat * script_g_fast(s + u / 2 - xis, neg_mu, pm)
                * g_pm_fast(xis, pm))
    return f


def _check_region(s: complex, w: complex, u: complex, mu: tuple) -> None:
    theta = max(abs(complex(m).real) for m in mu)
    if (s + u / 2).real <= -1 + theta:
        raise RegionViolation("need Re(s + u/2) > -1 + theta")
    if (w + u / 2).real <= -1:
        raise RegionViolation("need Re(w + u/2) > -1")


def H_transform(s: complex, w: complex, u: complex, signs: tuple,
                h: AdmissibleTestFunction, mu: tuple = (0, 0, 0),
                contour: CurvedContour | None = None,
                tol: float = 1e-9) -> complex:
    """H^{pm,eps}_{s,w}(u): the xi-integral along the curved contour of

        Kh^(1 + w - 3s - u + 2 xi) G^{pm}_{-mu}(s + u/2 - xi) G^{pm}(xi)

    times the constant factor G^{-pm*eps}(w + u/2)."""
    s, w, u = complex(s), complex(w), complex(u)
    pm, eps = signs
    _check_region(s, w, u, mu)
    if contour is None:
        contour = CurvedContour(0.1, -1.5)
    f = _h_integrand_factory(s, w, u, pm, eps, h, mu)
    outer = g_pm_fast(np.complex128(w + u / 2), -pm * eps)
    return complex(outer * contour.integrate(f, tol) / (2j * pi))


def h_transform_residue(s: complex, w: complex, u: complex, signs: tuple,
                        h: AdmissibleTestFunction,
                        mu: tuple = (0, 0, 0)) -> complex:
    """Residue at xi = 0 picked up when the curved contour moves left across
    the origin: Kh^(1+w-3s-u) G^{pm}_{-mu}(s+u/2) G^{-pm eps}(w+u/2)."""
    s, w, u = complex(s), complex(w), complex(u)
    pm, eps = signs
    neg_mu = tuple(-complex(m) for m in mu)
    return complex(k_mellin(h, 1 + w - 3 * s - u)
                   * script_g_fast(np.complex128(s + u / 2), neg_mu, pm)
                   * g_pm_fast(np.complex128(w + u / 2), -pm * eps))


def h_contour_decomposition(s: complex, w: complex, u: complex, signs: tuple,
                            h: AdmissibleTestFunction, mu: tuple = (0, 0, 0),
                            eps_shift: float = 0.2, b0: float = 1.5,
                            tol: float = 1e-9) -> tuple[complex, complex]:
    """Evaluate H on the default contour C(1/10, -3/2) and, independently, as
    the xi=0 residue plus the integral over C(-1+eps, -B0); the two must agree
    within quadrature tolerance."""
    direct = H_transform(s, w, u, signs, h, mu, CurvedContour(0.1, -1.5), tol)
    shifted = H_transform(s, w, u, signs, h, mu,
                          CurvedContour(-1 + eps_shift, -b0), tol)
    residue = h_transform_residue(s, w, u, signs, h, mu)
    return direct, shifted + residue
