"""Exact and asymptotic scattering poles of the Dirichlet sphere in odd dimension n.

The poles of the degree-l spherical mode are the zeros of H1_nu(lambda R0),
nu = l + n/2 - 1.  They are conjugates of the zeros of H2_nu, which are the
roots of the reverse Bessel polynomial theta_m(i lambda), m = nu - 1/2.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .olvermap import K_INTERCEPT, rho_inverse_boundary
from .specfun import HalfIntOrder, cyl_scaled

FAMILIES = ("sphere_exact", "sphere_olver", "transparent_boundary", "transparent_interior")
TIE_TOL = 1e-9


class RootCountError(RuntimeError):
    """The root finder did not return exactly the expected number of distinct zeros."""


@dataclass(frozen=True)
class ResonanceRecord:
    l: int
    nu: HalfIntOrder
    lam: complex
    multiplicity: int
    family: str

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")

    @property
    def modulus(self) -> float:
        return abs(self.lam)


def multiplicity_m(l: int, n: int) -> int:
    """Dimension of degree-l spherical harmonics on S^{n-1}: (2l+n-2)/(n-2) C(l+n-3, n-3)."""
    if l < 0:
        raise ValueError("l must be >= 0")
    if n < 3 or n % 2 == 0:
        raise ValueError("n must be an odd integer >= 3")
    num = (2 * l + n - 2) * math.comb(l + n - 3, n - 3)
    return num // (n - 2)


def olver_seeds(nu: HalfIntOrder) -> np.ndarray:
    """nu * rho^{-1}(-i (k - 1/4) pi / nu), k = 1..nu-1/2: approximate zeros of H2_nu."""
    k = np.arange(1, nu.m + 1)
    return nu.nu * rho_inverse_boundary((k - 0.25) * np.pi / nu.nu)


def olver_approx_resonances(nu: HalfIntOrder) -> np.ndarray:
    """Leading-order resonance approximations, conjugated into Im < 0, ordered by k."""
    if nu.nu < 1.5:
        raise ValueError("nu must be >= 3/2")
    return np.conj(olver_seeds(nu))


def _h2_logderiv(m: int, lam):
    # H2'/H2 = nu/lam - H2_{nu+1}/H2_nu
    c0, c1, _ = cyl_scaled(2, m, lam)
    return (m + 0.5) / lam - c1 / c0


def hankel2_zeros(nu: HalfIntOrder, tol: float = 1e-14, maxiter: int = 100) -> np.ndarray:
    """All m = nu - 1/2 zeros of H2_nu, by Aberth iteration seeded from the Olver map.

    The iteration treats e^{i lam} lam^{nu} H2_nu(lam), a degree-m polynomial,
    but evaluates its log-derivative through the stable cylinder functions
    rather than through ill-conditioned monomial coefficients.
    """
    m = nu.m
    if m == 0:
        return np.empty(0, dtype=complex)
    lam = olver_seeds(nu)
    done = False
    for _ in range(maxiter):
        pp = _h2_logderiv(m, lam) + (m + 0.5) / lam + 1j
        diff = lam[:, None] - lam[None, :]
        np.fill_diagonal(diff, 1.0)
        inv = 1 / diff
        np.fill_diagonal(inv, 0.0)
        step = 1 / (pp - inv.sum(axis=1))
        lam = lam - step
        if np.max(np.abs(step) / np.abs(lam)) < tol:
            done = True
            break
    if not done or not np.all(np.isfinite(lam)):
        raise RootCountError(f"Aberth iteration did not converge for nu = {nu.nu}")
    sep = np.abs(lam[:, None] - lam[None, :]) + np.eye(m)
    if m > 1 and sep.min() < 1e-8 * nu.nu:
        raise RootCountError(f"coincident roots for nu = {nu.nu}")
    return lam[np.lexsort((lam.imag, lam.real))]


def sphere_zeros(l: int, n: int, R0: float = 1.0) -> np.ndarray:
    """The nu - 1/2 zeros of H1_nu(lambda R0) (all in Im lambda < 0), sorted by real part."""
    if R0 <= 0:
        raise ValueError("R0 must be positive")
    nu = HalfIntOrder.from_ln(l, n)
    z = np.conj(hankel2_zeros(nu)) / R0
    if len(z) != nu.m:
        raise RootCountError(f"expected {nu.m} zeros for l = {l}, found {len(z)}")
    return z[np.lexsort((z.imag, z.real))]


def sphere_table(n: int, R0: float, r_max: float, guard: int = 3) -> list[ResonanceRecord]:
    """All sphere poles with |lambda| < r_max (ties within 1e-9 kept).

    Orders are scanned until nu * 0.66 exceeds r_max R0 (zeros sit near
    nu times the boundary of K, whose closest point to 0 is 0.6627 i) and
    ``guard`` further orders in a row contribute nothing.
    """
    if r_max <= 0:
        raise ValueError("r_max must be positive")
    records: list[ResonanceRecord] = []
    empty = 0
    l = 0
    while True:
        nu = HalfIntOrder.from_ln(l, n)
        z = sphere_zeros(l, n, R0)
        inside = z[np.abs(z) < r_max + TIE_TOL]
        mult = multiplicity_m(l, n)
        records.extend(ResonanceRecord(l, nu, complex(x), mult, "sphere_exact") for x in inside)
        beyond = nu.nu * round(K_INTERCEPT, 2) > r_max * R0
        empty = empty + 1 if (beyond and len(inside) == 0) else 0
        if empty >= guard:
            break
        l += 1
    return records


def total_multiplicity(records) -> int:
    return sum(r.multiplicity for r in records)
