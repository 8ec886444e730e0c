"""Counting functions N(r), M(r) and the Dirichlet-ball reference count."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad

from .asymconst import a_boundary, tau
from .specfun import HalfIntOrder, bessel_real_zeros
from .sphere import multiplicity_m


@dataclass(frozen=True)
class CountingFunction:
    """Sorted distinct moduli with multiplicities; build with :meth:`from_pairs`."""

    moduli: np.ndarray
    multiplicities: np.ndarray
    n: int

    @classmethod
    def from_pairs(cls, moduli, multiplicities, n: int) -> "CountingFunction":
        mod = np.asarray(moduli, dtype=float)
        mult = np.asarray(multiplicities, dtype=np.int64)
        if mod.shape != mult.shape:
            raise ValueError("moduli and multiplicities differ in length")
        if np.any(mod <= 0) or np.any(mult < 1):
            raise ValueError("moduli must be positive and multiplicities >= 1")
        uniq, inv = np.unique(mod, return_inverse=True)
        merged = np.bincount(inv, weights=mult, minlength=len(uniq)).astype(np.int64)
        return cls(uniq, merged, n)

    @classmethod
    def from_records(cls, records, n: int) -> "CountingFunction":
        records = list(records)
        return cls.from_pairs([abs(r.lam) for r in records],
                              [r.multiplicity for r in records], n)

    @property
    def cumulative(self) -> np.ndarray:
        return np.cumsum(self.multiplicities)


def count_N(cf: CountingFunction, r: float) -> int:
    """Number of poles with modulus < r, with multiplicity."""
    k = int(np.searchsorted(cf.moduli, r, side="left"))
    return int(cf.multiplicities[:k].sum())


def regularized_M(cf: CountingFunction, r: float) -> float:
    """M(r) = n * sum over |lam_j| < r of log(r / |lam_j|)."""
    k = int(np.searchsorted(cf.moduli, r, side="left"))
    return float(cf.n * np.sum(cf.multiplicities[:k] * np.log(r / cf.moduli[:k])))


def m_by_quadrature(cf: CountingFunction, r: float) -> float:
    """n * int_0^r N(t)/t dt, integrating the step function piece by piece."""
    k = int(np.searchsorted(cf.moduli, r, side="left"))
    knots = np.append(cf.moduli[:k], r)
    counts = np.cumsum(cf.multiplicities[:k])
    total = 0.0
    for a, b, N in zip(knots[:-1], knots[1:], counts):
        if b > a:
            total += N * quad(lambda t: 1.0 / t, a, b, epsabs=0.0, epsrel=1e-13)[0]
    return cf.n * total


def weyl_ball_count(n: int, R: float, r: float) -> int:
    """Dirichlet eigenvalue count of the ball of radius R: sum_l m(l) #{j_{nu,k} <= rR}."""
    if R <= 0 or r <= 0:
        raise ValueError("R and r must be positive")
    x = r * R
    total = 0
    l = 0
    while True:
        nu = HalfIntOrder.from_ln(l, n)
        if nu.nu >= x:
            break
        total += multiplicity_m(l, n) * len(bessel_real_zeros(nu, x))
        l += 1
    return total


def theorem2_gap(cf: CountingFunction, n: int, R0: float, R: float, r: float,
                 a_const: float | None = None) -> tuple[float, float]:
    """(|M(r) - 2 (N#(r) - tau_n R^n r^n)|, (2 tau_n + A) R0^n r^n)."""
    if not R > R0 > 0:
        raise ValueError("need R > R0 > 0")
    A = a_boundary(n) if a_const is None else a_const
    t = tau(n)
    lhs = abs(regularized_M(cf, r) - 2 * (weyl_ball_count(n, R, r) - t * (R * r) ** n))
    rhs = (2 * t + A) * (R0 * r) ** n
    return lhs, rhs
