"""Half-integer order Bessel and Hankel functions of complex argument, plus leading-order Airy.

For nu = m + 1/2 the cylinder functions are elementary:

    H1_nu(z) = -i sqrt(2/(pi z)) e^{iz} z^{-m} theta_m(-iz)
    H2_nu(z) =  i sqrt(2/(pi z)) e^{-iz} z^{-m} theta_m(iz)

with theta_m the reverse Bessel polynomial.  The polynomial form of H1 is
evaluated without cancellation when Im z >= 0 and that of H2 when Im z <= 0;
in the other half-plane we use H = 2J - H(other kind).  J comes from Miller's
backward recurrence normalized by J_{1/2} or J_{-1/2}.

Internally every value carries a separate log-scale so that large orders
(m ~ 150) never overflow.  The ``*_scaled`` helpers return (C_nu, C_{nu+1}, L)
with the true values equal to C * exp(L); ratios need no rescaling.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple

import numpy as np

from .olvermap import zeta

_BIG = 1e150


@dataclass(frozen=True)
class HalfIntOrder:
    """nu = twice_nu / 2, with nu = l + n/2 - 1 for a spherical mode of degree l in R^n."""

    twice_nu: int
    l: int | None = None
    n: int | None = None

    def __post_init__(self):
        if self.twice_nu < 1 or self.twice_nu % 2 == 0:
            raise ValueError(f"twice_nu must be a positive odd integer, got {self.twice_nu}")
        if self.l is not None and self.n is not None:
            if self.twice_nu != 2 * self.l + self.n - 2:
                raise ValueError("twice_nu must equal 2l + n - 2")

    @classmethod
    def from_ln(cls, l: int, n: int) -> "HalfIntOrder":
        if l < 0:
            raise ValueError("l must be >= 0")
        if n < 3 or n % 2 == 0:
            raise ValueError("n must be an odd integer >= 3")
        return cls(2 * l + n - 2, l, n)

    @classmethod
    def from_nu(cls, nu: float) -> "HalfIntOrder":
        tw = round(2 * nu)
        if abs(tw - 2 * nu) > 1e-12:
            raise ValueError(f"{nu} is not a half-integer")
        return cls(tw)

    @property
    def nu(self) -> float:
        return self.twice_nu / 2

    @property
    def m(self) -> int:
        """Degree of the reverse Bessel polynomial, nu - 1/2."""
        return (self.twice_nu - 1) // 2


class CylValue(NamedTuple):
    value: complex | np.ndarray
    derivative: complex | np.ndarray


def _order(nu) -> HalfIntOrder:
    return nu if isinstance(nu, HalfIntOrder) else HalfIntOrder.from_nu(nu)


def _prep(z):
    zz = np.atleast_1d(np.asarray(z, dtype=complex))
    if np.any(zz == 0):
        raise ValueError("cylinder functions are evaluated only for z != 0")
    return zz


def _finish(z_in, arr):
    return arr if np.ndim(z_in) else complex(arr[0])


@lru_cache(maxsize=None)
def reverse_bessel_coeffs(m: int) -> tuple[int, ...]:
    """Exact coefficients of theta_m(y), highest power first.

    theta_m(y) = sum_k (m+k)! / ((m-k)! k! 2^k) y^{m-k}.
    """
    if m < 0:
        raise ValueError("m must be >= 0")
    return tuple(
        math.factorial(m + k) // (math.factorial(m - k) * math.factorial(k) * 2**k)
        for k in range(m + 1)
    )


def _theta_pair(m: int, y):
    """theta_m(y), theta_{m+1}(y) and a common log-scale."""
    p0 = np.ones_like(y)
    p1 = y + 1
    ls = np.zeros(y.shape)
    for k in range(2, m + 2):
        p0, p1 = p1, (2 * k - 1) * p1 + y * y * p0
        big = np.abs(p1) > _BIG
        if np.any(big):
            f = np.where(big, 1 / np.abs(p1), 1.0)
            p0 = p0 * f
            p1 = p1 * f
            ls -= np.log(f)
    return p0, p1, ls


def _h1_direct(m: int, z):
    # polynomial form, stable for Im z >= 0
    p, q, ls = _theta_pair(m, -1j * z)
    lz = np.log(z)
    e = 1j * z - m * lz
    L = ls + e.real - 0.5 * np.log(np.abs(z))
    ph = -1j * math.sqrt(2 / math.pi) * np.exp(1j * e.imag - 0.5j * lz.imag)
    return ph * p, ph * q / z, L


def _h2_direct(m: int, z):
    a, b, L = _h1_direct(m, np.conj(z))
    return np.conj(a), np.conj(b), L


def _j_scaled(m: int, z):
    """J_{m+1/2}, J_{m+3/2} by Miller's backward recurrence."""
    top = max(m, float(np.max(np.abs(z))))
    N = int(top + 30 + 2 * math.sqrt(top))
    fkp1 = np.zeros_like(z)
    fk = np.ones_like(z)
    ls = np.zeros(z.shape)
    keep = keep1 = None
    for k in range(N, -1, -1):
        # order k+1/2 -> k-1/2
        fkm1 = (2 * k + 1) / z * fk - fkp1
        if k == m + 1:
            keep1 = fk.copy()
        if k == m:
            keep = fk.copy()
        fkp1, fk = fk, fkm1
        big = np.abs(fk) > _BIG
        if np.any(big):
            f = np.where(big, 1 / np.abs(fk), 1.0)
            fk = fk * f
            fkp1 = fkp1 * f
            if keep is not None:
                ls += np.log(f)
            elif keep1 is not None:
                keep1 = keep1 * f
    # fkp1 ~ J_{1/2}, fk ~ J_{-1/2}, both divided by exp(ls)
    sq = np.sqrt(2 / (np.pi * z))
    s, c = np.sin(z), np.cos(z)
    use_sin = np.abs(s) >= np.abs(c)
    with np.errstate(divide="ignore", invalid="ignore"):
        norm = np.where(use_sin, sq * s / fkp1, sq * c / fk)
    nz = np.abs(norm)
    return keep * (norm / nz), keep1 * (norm / nz), ls + np.log(nz)


def _lsum(a, La, b, Lb):
    L = np.maximum(La, Lb)
    return a * np.exp(La - L) + b * np.exp(Lb - L), L


def _h_scaled(kind: int, m: int, z):
    direct, other = (_h1_direct, _h2_direct) if kind == 1 else (_h2_direct, _h1_direct)
    good = z.imag >= 0 if kind == 1 else z.imag <= 0
    c0 = np.empty_like(z)
    c1 = np.empty_like(z)
    L = np.empty(z.shape)
    if np.any(good):
        c0[good], c1[good], L[good] = direct(m, z[good])
    bad = ~good
    if np.any(bad):
        zb = z[bad]
        j0, j1, Lj = _j_scaled(m, zb)
        h0, h1, Lh = other(m, zb)
        c0[bad], L[bad] = _lsum(2 * j0, Lj, -h0, Lh)
        c1[bad], _ = _lsum(2 * j1, Lj, -h1, Lh)
    return c0, c1, L


def cyl_scaled(kind, m: int, z):
    """(C_nu, C_{nu+1}, L) for nu = m + 1/2 with C = J (kind 'j'), H1 (1) or H2 (2)."""
    z = _prep(z)
    if kind == "j":
        return _j_scaled(m, z)
    if kind in (1, 2):
        return _h_scaled(kind, m, z)
    raise ValueError("kind must be 'j', 1 or 2")


def _value(kind, nu, z) -> CylValue:
    order = _order(nu)
    zz = _prep(z)
    c0, c1, L = cyl_scaled(kind, order.m, zz)
    with np.errstate(over="ignore", under="ignore"):
        s = np.exp(L)
        v = c0 * s
        d = (order.nu / zz * c0 - c1) * s
    return CylValue(_finish(z, v), _finish(z, d))


def bessel_j(nu, z) -> CylValue:
    """J_nu(z) and J_nu'(z) for half-integer nu."""
    return _value("j", nu, z)


def hankel_h(kind: int, nu, z) -> CylValue:
    """H^(kind)_nu(z) and its z-derivative for half-integer nu."""
    if kind not in (1, 2):
        raise ValueError("kind must be 1 or 2")
    return _value(kind, nu, z)


# --- Airy --------------------------------------------------------------------

_AI0 = 3 ** (-2 / 3) / math.gamma(2 / 3)
_AIP0 = -(3 ** (-1 / 3)) / math.gamma(1 / 3)
_SERIES_RADIUS = 6.0


def _airy_series(z):
    z3 = z**3
    f = np.ones_like(z)
    g = z.copy()
    fp = np.zeros_like(z)
    gp = np.ones_like(z)
    tf = np.ones_like(z)
    tg = z.copy()
    for k in range(1, 70):
        tf = tf * z3 / ((3 * k - 1) * (3 * k))
        tg = tg * z3 / ((3 * k) * (3 * k + 1))
        f = f + tf
        g = g + tg
        fp = fp + 3 * k * tf / z
        gp = gp + (3 * k + 1) * tg / z
    return _AI0 * f + _AIP0 * g, _AI0 * fp + _AIP0 * gp


def airy_leading(z):
    """Ai(z), Ai'(z): Maclaurin series for |z| <= 6, leading asymptotics beyond.

    The decaying form e^{-xi} / (2 sqrt(pi) z^{1/4}) is used for
    |arg z| <= 2 pi/3 and the oscillatory form in -z near the negative axis.
    """
    zz = np.atleast_1d(np.asarray(z, dtype=complex))
    ai = np.empty_like(zz)
    aip = np.empty_like(zz)
    near = np.abs(zz) <= _SERIES_RADIUS
    if np.any(near):
        zn = zz[near]
        safe = np.where(zn == 0, 1.0, zn)
        a, ap = _airy_series(safe)
        ai[near] = np.where(zn == 0, _AI0, a)
        aip[near] = np.where(zn == 0, _AIP0, ap)
    dec = ~near & (np.abs(np.angle(zz)) <= 2 * np.pi / 3)
    if np.any(dec):
        w = zz[dec]
        xi = 2 / 3 * w**1.5
        q = w**0.25
        e = np.exp(-xi) / (2 * math.sqrt(math.pi))
        ai[dec] = e / q
        aip[dec] = -q * e
    osc = ~near & ~dec
    if np.any(osc):
        w = -zz[osc]
        xi = 2 / 3 * w**1.5
        q = w**0.25
        ai[osc] = np.sin(xi + np.pi / 4) / (math.sqrt(math.pi) * q)
        aip[osc] = -q * np.cos(xi + np.pi / 4) / math.sqrt(math.pi)
    if np.ndim(z):
        return ai, aip
    return complex(ai[0]), complex(aip[0])


def airy_zero_approx(k: int) -> float:
    """a_k = [3/2 (k pi - pi/4)]^{2/3}, approximate k-th zero of Ai(-x)."""
    if k < 1:
        raise ValueError("k must be >= 1")
    return (1.5 * (k * math.pi - math.pi / 4)) ** (2 / 3)


# --- Olver leading terms ----------------------------------------------------------

def _olver_check(z):
    zz = np.atleast_1d(np.asarray(z, dtype=complex))
    if np.any(zz == 0) or np.any(np.abs(np.angle(zz)) > np.pi - 0.05):
        raise ValueError("Olver expansion requires z != 0 and |arg z| <= pi - 0.05")
    return zz


def _olver_prefactor(zz):
    zt = zeta(zz)
    w = 1 - zz
    # 4 zeta/(1 - z^2) -> 2^{4/3} at z = 1
    near = np.abs(w) < 1e-8
    ratio = np.where(near, 2 ** (4 / 3), 4 * zt / np.where(near, 1.0, 1 - zz * zz))
    return zt, ratio**0.25


def olver_leading_j(nu, z):
    """Leading term of J_nu(nu z): (4 zeta/(1-z^2))^{1/4} Ai(nu^{2/3} zeta) / nu^{1/3}."""
    v = _order(nu).nu
    zz = _olver_check(z)
    zt, pre = _olver_prefactor(zz)
    ai, _ = airy_leading(v ** (2 / 3) * zt)
    out = pre * ai / v ** (1 / 3)
    return out if np.ndim(z) else complex(out[0])


def olver_leading_h(kind: int, nu, z):
    """Leading term of H^(kind)_nu(nu z), 2 e^{-+i pi/3} (...)^{1/4} Ai(e^{+-2 pi i/3} nu^{2/3} zeta) / nu^{1/3}."""
    if kind not in (1, 2):
        raise ValueError("kind must be 1 or 2")
    v = _order(nu).nu
    zz = _olver_check(z)
    zt, pre = _olver_prefactor(zz)
    sgn = 1 if kind == 1 else -1
    ai, _ = airy_leading(np.exp(sgn * 2j * np.pi / 3) * v ** (2 / 3) * zt)
    out = 2 * np.exp(-sgn * 1j * np.pi / 3) * pre * ai / v ** (1 / 3)
    return out if np.ndim(z) else complex(out[0])


def olver_leading_h2(nu, z):
    return olver_leading_h(2, nu, z)


# --- real zeros ---------------------------------------------------------------

def bessel_real_zeros(nu, up_to: float) -> np.ndarray:
    """Positive zeros of J_nu not exceeding ``up_to``.

    J_nu has no zeros below nu, and consecutive zeros are more than pi
    apart, so sign changes on a grid of step 0.5 starting at nu isolate
    every root; each bracket is narrowed by bisection and finished by Newton.
    """
    order = _order(nu)
    if up_to <= 0:
        raise ValueError("up_to must be positive")
    start = max(order.nu, 0.5)
    if up_to <= start:
        return np.empty(0)
    x = np.arange(start, up_to + 0.5, 0.5)
    x[-1] = min(x[-1], up_to)
    if len(x) < 2:
        return np.empty(0)

    def ratio(t):
        # J / J' up to a positive factor, from scaled values
        c0, c1, _ = _j_scaled(order.m, np.asarray(t, dtype=complex))
        return c0.real, c0.real / (order.nu / t * c0.real - c1.real)

    f, _ = ratio(x)
    idx = np.flatnonzero(np.sign(f[:-1]) * np.sign(f[1:]) < 0)
    exact = x[f == 0]
    lo, hi = x[idx].copy(), x[idx + 1].copy()
    flo = f[idx]
    # bisect to width ~1e-4, then Newton (quadratic from there)
    for _ in range(13):
        if not len(lo):
            break
        mid = 0.5 * (lo + hi)
        fm, _ = ratio(mid)
        left = np.sign(fm) == np.sign(flo)
        lo = np.where(left, mid, lo)
        flo = np.where(left, fm, flo)
        hi = np.where(left, hi, mid)
    root = 0.5 * (lo + hi)
    for _ in range(4):
        if not len(root):
            break
        _, step = ratio(root)
        root = np.clip(root - step, lo, hi)
    roots = np.sort(np.concatenate([root, exact]))
    return roots[roots <= up_to]
