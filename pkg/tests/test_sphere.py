import math

import mpmath as mp
import numpy as np
import pytest

from scatpoles.asymconst import a_boundary
from scatpoles.olvermap import eye_distance, rho
from scatpoles.specfun import HalfIntOrder, hankel_h, reverse_bessel_coeffs
from scatpoles.sphere import (
    ResonanceRecord, hankel2_zeros, multiplicity_m, olver_approx_resonances,
    olver_seeds, sphere_table, sphere_zeros, total_multiplicity,
)


def test_multiplicity():
    assert [multiplicity_m(l, 3) for l in (0, 1, 5)] == [1, 3, 11]
    assert multiplicity_m(1, 5) == 5
    # ratio to 2 l^{n-2}/(n-2)! is 1 + 4.5/l + O(l^-2) for n = 5
    for l in (200, 2000):
        ratio = multiplicity_m(l, 5) * math.factorial(3) / (2 * l**3)
        assert (ratio - 1) * l == pytest.approx(4.5, rel=0.02)
    with pytest.raises(ValueError):
        multiplicity_m(1, 4)


def test_multiplicity_against_harmonic_dimension():
    # dim of harmonic polynomials = C(l+n-1, n-1) - C(l+n-3, n-1)
    for n in (3, 5, 7):
        for l in range(12):
            dim = math.comb(l + n - 1, n - 1) - (math.comb(l + n - 3, n - 1) if l >= 2 else 0)
            assert multiplicity_m(l, n) == dim


def test_closed_form_zeros():
    assert sphere_zeros(0, 3).size == 0
    assert sphere_zeros(1, 3) == pytest.approx(np.array([-1j]), abs=1e-14)
    expected = np.array([(-math.sqrt(3) - 3j) / 2, (math.sqrt(3) - 3j) / 2])
    assert sphere_zeros(2, 3) == pytest.approx(expected, abs=1e-13)


def test_radius_scaling():
    assert sphere_zeros(7, 3, 2.0) == pytest.approx(sphere_zeros(7, 3, 1.0) / 2, rel=1e-14)
    with pytest.raises(ValueError):
        sphere_zeros(3, 3, 0.0)


@pytest.mark.parametrize("twice_nu", [3, 21, 61])
def test_zero_count(twice_nu):
    nu = HalfIntOrder(twice_nu)
    z = hankel2_zeros(nu)
    assert len(z) == nu.m == len(np.unique(np.round(z, 8)))


@pytest.mark.parametrize("l", [3, 6, 10])
def test_against_companion_matrix(l):
    nu = HalfIntOrder.from_ln(l, 3)
    # theta_m(i lam) = 0  <=>  lam = -i y for each root y of theta_m
    ref = -1j * np.roots(np.array(reverse_bessel_coeffs(nu.m), dtype=float))
    got = hankel2_zeros(nu)
    d = np.abs(got[:, None] - ref[None, :]).min(axis=1)
    assert d.max() < 1e-8 * nu.nu


@pytest.mark.parametrize("l", [20, 35])
def test_against_multiprecision_roots(l):
    # float companion matrices lose digits beyond l ~ 12; exact coefficients at 80 digits do not
    nu = HalfIntOrder.from_ln(l, 3)
    with mp.workdps(80):
        ys = mp.polyroots([mp.mpf(c) for c in reverse_bessel_coeffs(nu.m)], maxsteps=400, extraprec=400)
        ref = np.array([complex(-1j * y) for y in ys])
    got = hankel2_zeros(nu)
    d = np.abs(got[:, None] - ref[None, :]).min(axis=1)
    assert d.max() < 1e-12 * nu.nu


@pytest.mark.parametrize("twice_nu", [41, 121, 201])
def test_zeros_are_zeros(twice_nu):
    nu = HalfIntOrder(twice_nu)
    z = hankel2_zeros(nu)
    v, d = hankel_h(2, nu, z)
    # Newton step |H/H'| is the relative location error
    assert np.max(np.abs(v / d) / np.abs(z)) < 1e-12


def test_conjugacy_with_h1():
    z = sphere_zeros(15, 3)
    assert np.all(z.imag < 0)
    assert sphere_zeros(15, 3) == pytest.approx(np.sort_complex(np.conj(hankel2_zeros(HalfIntOrder.from_ln(15, 3)))))
    v, d = hankel_h(1, 15.5, z)
    assert np.max(np.abs(v / d)) < 1e-12 * 16


def test_mirror_symmetry_of_zero_set():
    z = sphere_zeros(30, 3)
    assert np.sort_complex(-np.conj(z)) == pytest.approx(np.sort_complex(z), abs=1e-12)


def test_olver_seed_quality():
    errs = []
    for tw in (61, 123, 203):
        nu = HalfIntOrder(tw)
        exact = np.conj(hankel2_zeros(nu))
        approx = olver_approx_resonances(nu)
        arg = -np.angle(approx)
        sector = (arg >= math.pi / 6) & (arg <= 5 * math.pi / 6)
        err = np.abs(approx[sector][:, None] - exact[None, :]).min(axis=1).max()
        assert err <= 5 / nu.nu
        errs.append(err)
    assert errs[0] > errs[1] > errs[2]


def test_olver_seeds_near_scaled_eye():
    nu = HalfIntOrder(121)
    z = olver_seeds(nu) / nu.nu
    assert np.max(np.abs(rho(z).real)) < 1e-10
    exact = hankel2_zeros(nu) / nu.nu
    assert max(eye_distance(x) for x in exact) <= 0.05
    with pytest.raises(ValueError):
        olver_approx_resonances(HalfIntOrder(1))


def test_record_validation():
    nu = HalfIntOrder.from_ln(1, 3)
    rec = ResonanceRecord(1, nu, -1j, 3, "sphere_exact")
    assert rec.modulus == 1
    with pytest.raises(ValueError):
        ResonanceRecord(1, nu, -1j, 3, "bogus")


def test_small_table():
    recs = sphere_table(3, 1.0, 1.2)
    assert [(r.l, r.lam, r.multiplicity) for r in recs] == [(1, pytest.approx(-1j), 3)]
    assert total_multiplicity(recs) == 3
    with pytest.raises(ValueError):
        sphere_table(3, 1.0, 0.0)


def test_table_scaling():
    a = sphere_table(3, 2.0, 10.0)
    b = sphere_table(3, 1.0, 20.0)
    assert len(a) == len(b)
    assert np.allclose([r.lam for r in a], [r.lam / 2 for r in b], rtol=1e-13)


def test_table_n67(sphere67):
    inside = [r for r in sphere67 if abs(r.lam) < 67]
    assert total_multiplicity(inside) == 522772
    assert all(r.lam.imag < 0 for r in sphere67)
    keys = [(r.l, r.lam.real) for r in sphere67]
    assert keys == sorted(keys)
    assert total_multiplicity(inside) / 67**3 == pytest.approx(1.7382, abs=1e-4)
    assert abs(total_multiplicity(inside) / 67**3 - a_boundary(3)) <= 0.03


def test_guard_band_orders_are_empty(sphere67):
    lmax = max(r.l for r in sphere67)
    for l in range(lmax + 1, lmax + 4):
        assert np.min(np.abs(sphere_zeros(l, 3))) > 67


def test_count_trend(sphere67):
    a = a_boundary(3)
    errs = []
    for r in (40, 55, 67):
        N = sum(x.multiplicity for x in sphere67 if abs(x.lam) < r)
        errs.append(abs(N / r**3 - a))
    assert errs[-1] <= 0.03
    assert errs[-1] < errs[0]
