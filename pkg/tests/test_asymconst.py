import math

import mpmath as mp
import numpy as np
import pytest
from scipy.integrate import quad

from scatpoles.asymconst import (
    a_area, a_boundary, boundary_integrand, boundary_line_integral, constant_report,
    duplication_residual, h_integral, radial_identity, tau, unit_ball_volume,
)
from scatpoles.olvermap import rho_inverse_boundary, solve_t0


def test_tau_closed_forms():
    assert tau(3) == pytest.approx(2 / (9 * math.pi), rel=1e-15)
    # vol(B^5) = 8 pi^2 / 15
    assert tau(5) == pytest.approx((8 * math.pi**2 / 15) ** 2 / (2 * math.pi) ** 5, rel=1e-15)
    assert tau(5) == pytest.approx(2.8294e-3, rel=1e-4)
    assert unit_ball_volume(3) == pytest.approx(4 * math.pi / 3)


def test_tau_rejects_even():
    for bad in (2, 4, 1):
        with pytest.raises(ValueError):
            tau(bad)


def test_radial_identity_n3():
    lhs, rhs = radial_identity(3)
    assert abs(lhs - 1 / 3) <= 1e-10
    assert rhs == pytest.approx(1 / 3, rel=1e-15)


@pytest.mark.parametrize("n", [3, 5, 7, 9])
def test_radial_identity_against_mpmath(n):
    lhs, rhs = radial_identity(n)
    with mp.workdps(30):
        ref = mp.quad(lambda t: mp.sqrt(t * t - 1) * t ** (-n - 1), [1, 2, mp.inf])
    assert abs(lhs - float(ref)) < 1e-13
    assert abs(rhs - float(ref)) < 1e-13


@pytest.mark.parametrize("n", [3, 5, 7])
def test_duplication(n):
    assert duplication_residual(n) <= 1e-12


def _arc_oracle(n):
    # on the boundary rho(z(s)) = -i s, so |dz| = |z| / |1-z^2|^{1/2} ds
    val, _ = quad(lambda s: abs(complex(rho_inverse_boundary(s))) ** (-n), 0, math.pi,
                  epsabs=0, epsrel=1e-12, limit=200)
    return val


@pytest.mark.parametrize("n", [3, 5, 7])
def test_boundary_integral_against_arc_parameterization(n):
    assert boundary_line_integral(n) == pytest.approx(_arc_oracle(n), rel=1e-11)


def test_boundary_integral_halves():
    right = boundary_line_integral(3, "right")
    left = boundary_line_integral(3, "left")
    assert right == pytest.approx(left, rel=1e-12)
    assert right + left == pytest.approx(boundary_line_integral(3), rel=1e-13)


def test_boundary_integrand_finite_at_t0():
    t0 = solve_t0()
    u = np.array([0.0, 1e-8, 1e-4, math.sqrt(t0) - 1e-9, math.sqrt(t0)])
    assert np.all(np.isfinite(boundary_integrand(u, 3, t0)))


@pytest.mark.parametrize("n,expected", [(3, 1.7483351652), (5, 0.3460378658), (7, 0.0250483732)])
def test_a_two_routes(n, expected):
    ab = a_boundary(n)
    aa = a_area(n)
    assert ab == pytest.approx(expected, abs=1e-9)
    assert abs(aa - ab) / ab <= 1e-8


def test_h_integral_includes_twice_tau():
    assert h_integral(3) - a_boundary(3) == pytest.approx(2 * tau(3), rel=1e-8)


def test_constant_report():
    rep = constant_report(3)
    d = rep.as_dict()
    assert set(d) == {"n", "tau_n", "a_area", "a_boundary", "radial_integral", "identity_residuals"}
    assert list(d["identity_residuals"]) == sorted(d["identity_residuals"])
    assert all(v < 1e-8 for v in d["identity_residuals"].values())
    assert d["radial_integral"] == pytest.approx(1 / 3, abs=1e-12)
