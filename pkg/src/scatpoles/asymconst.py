"""The Weyl constant tau_n and the sharp sphere constant A_{S^{n-1}}.

A is computed two ways: as an area integral of [-Re rho]_+ / |z|^{n+2} over
the upper half-plane, and as a line integral over the upper boundary of K.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import quad

from .olvermap import boundary_point, h_n_theta, solve_t0


def _check_n(n: int) -> None:
    if n < 3 or n % 2 == 0:
        raise ValueError("n must be an odd integer >= 3")


class QuadratureError(RuntimeError):
    """Adaptive quadrature did not reach the requested tolerance."""


def _quad(f, a, b, rel, **kw):
    val, err = quad(f, a, b, epsabs=0.0, epsrel=rel, limit=400, full_output=1, **kw)[:2]
    if err > 10 * rel * abs(val):
        raise QuadratureError(f"quadrature reached only {err / abs(val):.2e} relative")
    return val, err


def unit_ball_volume(n: int) -> float:
    return math.pi ** (n / 2) / math.gamma(n / 2 + 1)


def tau(n: int) -> float:
    """tau_n = (2 pi)^{-n} vol(B)^2, the Weyl constant of the unit ball."""
    _check_n(n)
    return unit_ball_volume(n) ** 2 / (2 * math.pi) ** n


def h_integral(n: int, rtol: float = 1e-9) -> float:
    """(n / 2 pi) * int_0^pi h_n(theta) d theta, using h_n(pi - theta) = h_n(theta)."""
    _check_n(n)
    val, _ = _quad(lambda th: h_n_theta(th, n, rtol=rtol * 1e-2), 0.0, math.pi / 2, rtol,
                   points=[0.05, 0.2])
    return n / math.pi * val


def a_area(n: int, rtol: float = 1e-9) -> float:
    """A from the area integral: 2n/(pi (n-2)!) int_{Im z>0} [-Re rho]_+ |z|^{-n-2} dx dy - 2 tau_n.

    In polar coordinates the radial integral is the sector weight h_n, so the
    double integral reduces to (n / 2 pi) int_0^pi h_n.
    """
    return h_integral(n, rtol) - 2 * tau(n)


# --- boundary route ------------------------------------------------------------

def _g_near_t0(t0: float, v):
    # cosh t - t sinh t at t = t0 - v, Taylor about its zero t0
    ch, sh = math.cosh(t0), math.sinh(t0)
    total = np.zeros_like(v)
    term = np.ones_like(v)
    for k in range(1, 9):
        a, b = (sh, ch) if k % 2 else (ch, sh)
        term = term * (-v) / k
        total = total - ((k - 1) * a + t0 * b) * term
    return total


def _x_squared(t, t0):
    # t coth t - t^2 = t (cosh t - t sinh t) / sinh t, stable near t0
    g = np.where(t0 - t < 0.02, _g_near_t0(t0, t0 - t), np.cosh(t) - t * np.sinh(t))
    # t / sinh t -> 1 at t = 0
    ratio = np.where(t > 1e-8, t / np.where(t > 1e-8, np.sinh(t), 1.0), 1.0)
    return np.maximum(ratio * g, 0.0)


def _dx_squared(t):
    # d/dt (t coth t - t^2)
    small = t < 0.05
    ts = np.where(small, 1.0, t)
    big = 1 / np.tanh(ts) - ts / np.sinh(ts) ** 2
    series = 2 * t / 3 - 4 * t**3 / 45 + 12 * t**5 / 945
    return np.where(small, series, big) - 2 * t


def boundary_integrand(u, n: int, t0: float, sign: int = 1):
    """|1-z^2|^{1/2} |z|^{-n-1} |dz/du| along the boundary, with t = t0 - u^2.

    The substitution absorbs the square-root singularity of x(t) at t0,
    where the curve meets the imaginary axis.
    """
    u = np.asarray(u, dtype=float)
    t = t0 - u * u
    X = _x_squared(t, t0)
    y = boundary_point(t).imag
    z = sign * np.sqrt(X) + 1j * y
    dX = _dx_squared(t)
    dY = 2 * t - np.tanh(t) - t / np.cosh(t) ** 2
    with np.errstate(divide="ignore", invalid="ignore"):
        # |dx/du| = |X'| u / sqrt(X) -> sqrt(|X'(t0)|) as u -> 0
        dxu = np.where(X > 0, np.abs(dX) * u / np.sqrt(X), np.sqrt(np.abs(dX)))
        dyu = np.where(y > 0, np.abs(dY) * u / y, 0.0)
    speed = np.hypot(dxu, dyu)
    return np.abs(1 - z * z) ** 0.5 / np.abs(z) ** (n + 1) * speed


def boundary_line_integral(n: int, half: str = "both", rtol: float = 1e-11) -> float:
    """int over the upper boundary of K of |1-z^2|^{1/2} / |z|^{n+1} |dz|."""
    t0 = solve_t0()
    ub = math.sqrt(t0)
    halves = {"right": (1,), "left": (-1,), "both": (1, -1)}[half]
    return sum(_quad(lambda u: float(boundary_integrand(u, n, t0, s)), 0.0, ub, rtol)[0]
               for s in halves)


def a_boundary(n: int, rtol: float = 1e-11) -> float:
    """A = (2/pi) / (n (n-2)!) * int_{dK+} |1-z^2|^{1/2} / |z|^{n+1} |dz|."""
    _check_n(n)
    return 2 / (math.pi * n * math.factorial(n - 2)) * boundary_line_integral(n, "both", rtol)


# --- identities ---------------------------------------------------------------

def radial_identity(n: int) -> tuple[float, float]:
    """int_1^inf sqrt(t^2-1) t^{-n-1} dt by quadrature, and its Gamma-function value.

    After t = 1/s the integral is int_0^1 sqrt(1-s^2) s^{n-2} ds; the
    (1-s)^{1/2} endpoint factor goes into the quadrature weight.
    """
    _check_n(n)
    lhs, _ = quad(lambda s: s ** (n - 2) * math.sqrt(1 + s), 0.0, 1.0,
                  weight="alg", wvar=(0.0, 0.5), epsabs=0.0, epsrel=1e-13)
    rhs = math.sqrt(math.pi) * math.gamma((n - 1) / 2) / (2 * n * math.gamma(n / 2))
    return lhs, rhs


def duplication_residual(n: int) -> float:
    """Relative gap in 2/(pi n (n-2)!) * sqrt(pi) G((n-1)/2) / (2n G(n/2)) = tau_n."""
    _, rhs = radial_identity(n)
    lhs = 2 / (math.pi * n * math.factorial(n - 2)) * rhs
    return abs(lhs - tau(n)) / tau(n)


@dataclass
class ConstantReport:
    n: int
    tau_n: float
    a_area: float
    a_boundary: float
    radial_integral: float
    identity_residuals: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "tau_n": self.tau_n,
            "a_area": self.a_area,
            "a_boundary": self.a_boundary,
            "radial_integral": self.radial_integral,
            "identity_residuals": dict(sorted(self.identity_residuals.items())),
        }


def constant_report(n: int) -> ConstantReport:
    aa = a_area(n)
    ab = a_boundary(n)
    lhs, rhs = radial_identity(n)
    right = boundary_line_integral(n, "right")
    both = boundary_line_integral(n, "both")
    res = {
        "two_route_relative": abs(aa - ab) / ab,
        "radial_identity": abs(lhs - rhs),
        "duplication": duplication_residual(n),
        "half_symmetry": abs(2 * right - both) / both,
    }
    return ConstantReport(n=n, tau_n=tau(n), a_area=aa, a_boundary=ab,
                          radial_integral=lhs, identity_residuals=res)
