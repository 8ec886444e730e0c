"""Olver's maps rho and zeta, the eye-shaped domain K and the sector weight h_n.

    rho(z) = log((1 + sqrt(1 - z^2)) / z) - sqrt(1 - z^2),   |arg z| < pi
    rho(z) = (2/3) zeta(z)^{3/2}

Branches are the ones continued from the interval (0, 1), where both maps are
real and positive.  In the closed upper half-plane the principal square root
of 1 - z^2 is that continuation; on the ray z > 1 we return the limit from
above.  All functions accept scalars or numpy arrays.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import quad
from scipy.optimize import brentq

# zeta(1 - w) = w * sum_k _ZETA_SERIES[k] w^k, exact through w^28
_ZETA_SERIES = np.array([
    1.2599210498948731648, 0.37797631496846194943, 0.23038556340934823584,
    0.16590960364964869484, 0.12931387086451008907, 0.10568046188858133991,
    0.089169979522681869784, 0.077000149006188024557, 0.067670556612510618198,
    0.060299425132433090388, 0.054334491580577288070, 0.049412387042235346732,
    0.045284391486465493480, 0.041774638317746030155, 0.038755339428219429698,
    0.036131460014187497883, 0.033830892459954931252, 0.031797959672738536850,
    0.029989003878782158489, 0.028369320751977910316, 0.026910984153200042561,
    0.025591274114662718320, 0.024391521867005306409, 0.023296248530009948816,
    0.022292514054144630302, 0.021369418983957309899, 0.020517718843420687296,
    0.019729522574087348279,
])
_SERIES_RADIUS = 0.25

T0_REFERENCE = 1.19967864
K_INTERCEPT = 0.6627


class DomainError(ValueError):
    """Argument outside the cut plane |arg z| < pi, or z = 0."""


def _as_complex(z):
    return np.asarray(z, dtype=complex)


def _check_domain(z):
    bad = (z == 0) | ((z.imag == 0) & (z.real < 0))
    if np.any(bad):
        raise DomainError("rho/zeta require z != 0 and |arg z| < pi")


def _sqrt1mz2(z):
    s = np.sqrt(1 - z * z)
    # principal sqrt is the continuation from (0, 1) for Im z >= 0, except on
    # the ray z > 1 where it gives the limit from below
    on_ray = (z.imag == 0) & (z.real > 1)
    if np.any(on_ray):
        s = np.where(on_ray, -1j * np.sqrt(np.abs(z.real * z.real - 1) + 0j), s)
    return s


def _out(z_in, value):
    return value if np.ndim(z_in) else complex(value)


def rho(z):
    """Olver's rho on the branch real for z in (0, 1)."""
    zz = _as_complex(z)
    _check_domain(zz)
    s = _sqrt1mz2(zz)
    return _out(z, np.log((1 + s) / zz) - s)


def rho_prime(z):
    """d rho / dz = -sqrt(1 - z^2) / z, same branch as :func:`rho`."""
    zz = _as_complex(z)
    _check_domain(zz)
    return _out(z, -_sqrt1mz2(zz) / zz)


def _zeta_series(w):
    acc = np.zeros_like(w)
    for c in _ZETA_SERIES[::-1]:
        acc = acc * w + c
    return w * acc


def _zeta_series_prime(w):
    # d/dz of w*S(w) with w = 1 - z
    acc = np.zeros_like(w)
    for k in range(len(_ZETA_SERIES) - 1, -1, -1):
        acc = acc * w + (k + 1) * _ZETA_SERIES[k]
    return -acc


def zeta(z):
    """Olver's zeta, analytic across z = 1, real on the positive real axis.

    Computed as (3 rho / 2)^{2/3} with the argument of rho taken in
    (-3 pi/2, pi/2] for Im z >= 0 (conjugate symmetric below), and from a
    power series in 1 - z inside |z - 1| < 0.25, where rho^{2/3} would lose
    digits to the 3/2-order zero of rho.
    """
    zz = _as_complex(z)
    _check_domain(zz)
    w = 1 - zz
    near = np.abs(w) < _SERIES_RADIUS
    out = np.empty_like(zz)
    if np.any(near):
        out[near] = _zeta_series(w[near])
    far = ~near
    if np.any(far):
        zf = zz[far]
        upper = zf.imag >= 0
        # evaluate in the closed upper half-plane, reflect the rest
        zu = np.where(upper, zf, np.conj(zf))
        r = 1.5 * rho(zu)
        ang = np.angle(r)
        ang = np.where(ang > np.pi / 2, ang - 2 * np.pi, ang)
        val = np.abs(r) ** (2.0 / 3.0) * np.exp(2j * ang / 3)
        val = np.where(zu.imag == 0, val.real + 0j, val)
        out[far] = np.where(upper, val, np.conj(val))
    return _out(z, out)


def zeta_prime(z):
    """d zeta / dz = rho'(z) / zeta^{1/2}."""
    zz = _as_complex(z)
    _check_domain(zz)
    w = 1 - zz
    near = np.abs(w) < _SERIES_RADIUS
    out = np.empty_like(zz)
    if np.any(near):
        out[near] = _zeta_series_prime(w[near])
    far = ~near
    if np.any(far):
        zf = zz[far]
        out[far] = rho_prime(zf) / np.sqrt(zeta(zf))
    return _out(z, out)


def neg_re_rho_plus(z):
    """[-Re rho]_+ = max(-Re rho(z), 0); vanishes exactly on K in the upper half-plane."""
    zz = _as_complex(z)
    if np.any(zz.imag <= 0):
        raise DomainError("neg_re_rho_plus is defined for Im z > 0")
    v = np.maximum(-rho(zz).real, 0.0)
    return v if np.ndim(z) else float(v)


# --- the eye ------------------------------------------------------------------

def solve_t0(tol: float = 1e-15) -> float:
    """Positive root of t = coth t, by Newton on t*tanh(t) - 1 safeguarded to [1, 1.5]."""
    lo, hi = 1.0, 1.5
    t = 1.2
    for _ in range(100):
        f = t * math.tanh(t) - 1.0
        if f > 0:
            hi = t
        else:
            lo = t
        df = math.tanh(t) + t / math.cosh(t) ** 2
        t_new = t - f / df
        if not lo < t_new < hi:
            t_new = 0.5 * (lo + hi)
        if abs(t_new - t) < tol:
            return t_new
        t = t_new
    return t


def _t_coth_t(t):
    t = np.asarray(t, dtype=float)
    safe = np.where(t == 0, 1.0, t)
    return np.where(t == 0, 1.0, safe / np.tanh(safe))


def _t_minus_tanh(t):
    # t - tanh t, accurate for small t
    t = np.asarray(t, dtype=float)
    small = np.abs(t) < 1e-2
    t2 = t * t
    series = t * t2 * (1 / 3 - t2 * (2 / 15 - t2 * 17 / 315))
    return np.where(small, series, t - np.tanh(t))


def boundary_point(t, sign: int = 1):
    """Point of the upper boundary of K at parameter t in [0, t0] (right half for sign=+1)."""
    t = np.asarray(t, dtype=float)
    x = np.sqrt(np.maximum(_t_coth_t(t) - t * t, 0.0))
    y = np.sqrt(np.maximum(t * _t_minus_tanh(t), 0.0))
    return sign * x + 1j * y


def boundary_velocity(t, sign: int = 1):
    """dz/dt along the boundary parameterization, from closed-form derivatives."""
    t = np.asarray(t, dtype=float)
    X = np.maximum(_t_coth_t(t) - t * t, 0.0)
    Y = np.maximum(t * _t_minus_tanh(t), 0.0)
    safe = np.where(t == 0, 1.0, t)
    dX = np.where(t == 0, 0.0, 1 / np.tanh(safe) - safe / np.sinh(safe) ** 2 - 2 * safe)
    dY = 2 * t - np.tanh(t) - t / np.cosh(t) ** 2
    with np.errstate(divide="ignore", invalid="ignore"):
        dx = np.where(X > 0, dX / (2 * np.sqrt(X)), -np.inf)
        # y ~ t^2/sqrt(3) near 0
        dy = np.where(Y > 0, dY / (2 * np.sqrt(Y)), 0.0)
    return sign * dx + 1j * dy


@dataclass(frozen=True)
class EyeBoundary:
    """Samples of the right half of the upper boundary of K.

    ``s`` holds -Im rho at each sample (Re rho vanishes there), which runs
    from 0 at z = 1 to pi/2 at the imaginary-axis intercept.
    """

    t0: float
    t: np.ndarray = field(repr=False)
    z: np.ndarray = field(repr=False)
    s: np.ndarray = field(repr=False)

    def guess(self, s):
        """Interpolated boundary point with -Im rho = s, for 0 <= s <= pi/2."""
        s = np.asarray(s, dtype=float)
        return np.interp(s, self.s, self.z.real) + 1j * np.interp(s, self.s, self.z.imag)

    def full(self):
        """Both halves of the upper boundary, ordered from z = 1 to z = -1."""
        return np.concatenate([self.z, -np.conj(self.z[::-1])])


def eye_boundary(n_samples: int = 401) -> EyeBoundary:
    if n_samples < 2:
        raise ValueError("n_samples must be >= 2")
    t0 = solve_t0()
    # cluster samples at t0, where x ~ sqrt(t0 - t)
    u = np.linspace(0.0, 1.0, n_samples)
    t = t0 * (1 - (1 - u) ** 2)
    t[-1] = t0
    z = boundary_point(t)
    z[0] = 1.0
    z[-1] = 1j * z[-1].imag
    s = np.empty(n_samples)
    s[0] = 0.0
    s[1:] = -rho(z[1:]).imag
    s = np.maximum.accumulate(s)
    return EyeBoundary(t0=t0, t=t, z=z, s=s)


_DEFAULT_EYE: EyeBoundary | None = None


def _default_eye() -> EyeBoundary:
    global _DEFAULT_EYE
    if _DEFAULT_EYE is None:
        _DEFAULT_EYE = eye_boundary(801)
    return _DEFAULT_EYE


def rho_inverse_boundary(s, tol: float = 1e-13, maxiter: int = 60):
    """The point z of the upper boundary of K with rho(z) = -i s, 0 <= s <= pi.

    For s <= pi/2 the point lies in the right half (Re z >= 0); larger s are
    mapped through the symmetry z -> -conj(z), which sends s to pi - s.
    Newton is run on zeta rather than rho: zeta has a simple zero at z = 1
    where rho has a 3/2-order one, so the iteration stays quadratic up to s = 0.
    """
    s_in = s
    s = np.atleast_1d(np.asarray(s, dtype=float))
    if np.any(s < 0) or np.any(s > np.pi + 1e-9):
        raise ValueError("s must lie in [0, pi]")
    s = np.minimum(s, np.pi)
    mirror = s > np.pi / 2
    sr = np.where(mirror, np.pi - s, s)
    eye = _default_eye()
    z = eye.guess(sr).astype(complex)
    target = (1.5 * sr) ** (2.0 / 3.0) * np.exp(-1j * np.pi / 3)
    zero = sr == 0
    active = ~zero
    for _ in range(maxiter):
        if not np.any(active):
            break
        za = z[active]
        step = (zeta(za) - target[active]) / zeta_prime(za)
        z[active] = za - step
        done = np.abs(step) <= tol * np.maximum(np.abs(za), 1.0)
        idx = np.flatnonzero(active)
        active[idx[done]] = False
    z[zero] = 1.0
    z = np.where(mirror, -np.conj(z), z)
    return z if np.ndim(s_in) else complex(z[0])


# --- sector weight h_n ---------------------------------------------------------

def boundary_radius(theta: float) -> float:
    """|z| of the boundary point of K with arg z = theta, 0 < theta < pi."""
    if not 0 < theta < np.pi:
        raise ValueError("theta must lie in (0, pi)")
    th = min(theta, np.pi - theta)
    e = np.exp(1j * th)
    return brentq(lambda t: rho(t * e).real, 0.1, 1.1, xtol=1e-15, rtol=4 * np.finfo(float).eps)


def h_n_theta(theta: float, n: int, rtol: float = 1e-10) -> float:
    """Sector weight h_n(theta) = 4/(n-2)! * int_0^inf [-Re rho]_+(t e^{i theta}) t^{-(n+1)} dt.

    The radial integral starts at the crossing t* of the boundary of K.  With
    s = 1/t it becomes int_0^{1/t*} -Re rho(e^{i theta}/s) s^{n-1} ds, whose
    integrand is bounded (-Re rho(t e^{i theta}) = t sin(theta) + O(1/t)), so
    the infinite tail needs no separate treatment.
    """
    if n < 3 or n % 2 == 0:
        raise ValueError("n must be an odd integer >= 3")
    if not 0 < theta < np.pi:
        raise ValueError("theta must lie in (0, pi)")
    th = min(theta, np.pi - theta)
    e = np.exp(1j * th)
    tstar = boundary_radius(th)

    def f(s):
        if s == 0.0:
            return 0.0
        return -rho(e / s).real * s ** (n - 1)

    val, _ = quad(f, 0.0, 1.0 / tstar, epsabs=0.0, epsrel=rtol, limit=200)
    return 4.0 / math.factorial(n - 2) * max(val, 0.0)


_POLYLINE: np.ndarray | None = None


def _boundary_polyline() -> np.ndarray:
    global _POLYLINE
    if _POLYLINE is None:
        # equal steps in s = -Im rho spread samples evenly along the curve
        _POLYLINE = rho_inverse_boundary(np.linspace(0.0, np.pi, 4001))
    return _POLYLINE


def eye_distance(z) -> np.ndarray:
    """Distance from z to the upper boundary of K (closed upper half-plane points).

    Points below the real axis are reflected first, which gives the distance
    to the lower boundary.  The boundary is resolved as a polyline with about
    1e-3 spacing, accurate far below the 1/nu scales it is compared with.
    """
    zz = np.atleast_1d(np.asarray(z, dtype=complex))
    zz = np.where(zz.imag < 0, np.conj(zz), zz)
    poly = _boundary_polyline()
    a, d = poly[:-1], np.diff(poly)
    dd = np.abs(d) ** 2
    out = np.empty(zz.shape)
    for i in range(0, len(zz), 512):
        p = zz[i:i + 512, None]
        u = np.clip(((p - a) * np.conj(d)).real / dd, 0.0, 1.0)
        out[i:i + 512] = np.min(np.abs(p - (a + u * d)), axis=1)
    return out if np.ndim(z) else float(out[0])
