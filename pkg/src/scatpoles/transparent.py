"""Resonances of the transparent ball: wave speed c inside |x| < R0, 1 outside.

For the degree-l mode with nu = l + n/2 - 1 the zeros of

    F(lam) = lam H2_nu'(lam) J_nu(lam/c) - (lam/c) J_nu'(lam/c) H2_nu(lam)

in the upper half-plane are the conjugates of the resonances.  F differs
from the transmission determinant only by a factor nonvanishing for lam != 0,
is entire, and satisfies F'(lam) = lam (c^-2 - 1) H2_nu(lam) J_nu(lam/c),
which gives Newton steps and phase-speed bounds without differentiating.

Zeros are isolated by the argument principle on rectangles, with the phase
of F followed along each edge in steps small enough that neither the sampled
phase increment nor |dlam| |F'/F| exceeds pi/4.
"""
from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .olvermap import eye_distance
from .specfun import HalfIntOrder, cyl_scaled
from .sphere import ResonanceRecord, RootCountError, TIE_TOL, multiplicity_m

FLOOR_IM = -0.5
LEFT_RE = -0.25
SPLIT = 0.5137          # off-center split keeps new edges away from symmetric roots
MIRROR_TOL = 1e-9


class WindingError(RuntimeError):
    """Phase continuation along a box edge did not resolve."""


@dataclass(frozen=True)
class SearchBox:
    lo_re: float
    hi_re: float
    lo_im: float
    hi_im: float
    winding: int = -1
    depth: int = 0

    def contains(self, z) -> bool:
        return self.lo_re <= z.real <= self.hi_re and self.lo_im <= z.imag <= self.hi_im


def _check(n: int, c: float) -> None:
    if n < 3 or n % 2 == 0:
        raise ValueError("n must be an odd integer >= 3")
    if not c > 0 or c == 1:
        raise ValueError("c must be positive and different from 1")


def _parts(m: int, c: float, lam):
    """Mantissa of F (phase exact), a = lam H'/H, b = t J'(t)/J(t), |F'/F|."""
    lam = np.asarray(lam, dtype=complex)
    nu = m + 0.5
    t = lam / c
    h0, h1, _ = cyl_scaled(2, m, lam)
    j0, j1, _ = cyl_scaled("j", m, t)
    a = nu - lam * h1 / h0
    b = nu - t * j1 / j0
    diff = a - b
    with np.errstate(divide="ignore", invalid="ignore"):
        speed = np.abs(lam * (c**-2 - 1) / diff)
    return h0 * j0 * diff, a, b, speed


def transmission_det(l: int, n: int, c: float, lam):
    """c h'(lam) j(lam/c) - h(lam) j'(lam/c) with j(t) = t^{1-n/2} J_nu(t), h(t) = t^{1-n/2} H2_nu(t)."""
    _check(n, c)
    lam_a = np.atleast_1d(np.asarray(lam, dtype=complex))
    if np.any(lam_a == 0):
        raise ValueError("lam = 0 is excluded")
    nu = HalfIntOrder.from_ln(l, n)
    m = nu.m
    t = lam_a / c
    h0, h1, Lh = cyl_scaled(2, m, lam_a)
    j0, j1, Lj = cyl_scaled("j", m, t)
    a = nu.nu - lam_a * h1 / h0
    b = nu.nu - t * j1 / j0
    p = 1 - n / 2
    with np.errstate(over="ignore", under="ignore"):
        pref = np.exp(Lh + Lj + p * np.log(lam_a * t)) * c / lam_a
        val = pref * h0 * j0 * (a - b)
    return val if np.ndim(lam) else complex(val[0])


def transmission_logderiv(l: int, n: int, c: float, lam):
    """lam h'(lam)/h(lam) - (lam/c) j'(lam/c)/j(lam/c), the log-derivative form of the condition."""
    _check(n, c)
    m = HalfIntOrder.from_ln(l, n).m
    _, a, b, _ = _parts(m, c, np.atleast_1d(lam))
    out = a - b
    return out if np.ndim(lam) else complex(out[0])


def relative_residual(l: int, n: int, c: float, lam):
    """|det| / (|c h' j| + |h j'|), a scale-free residual of the condition."""
    m = HalfIntOrder.from_ln(l, n).m
    _, a, b, _ = _parts(m, c, np.atleast_1d(lam))
    p = 1 - n / 2
    out = np.abs(a - b) / (np.abs(p + a) + np.abs(p + b))
    return out if np.ndim(lam) else float(out[0])


# --- argument principle ---------------------------------------------------------

def _edge_points(boxes, bid, s):
    x0, x1, y0, y1 = (boxes[bid, k] for k in range(4))
    e = np.clip(np.floor(s), 0, 3)
    u = s - e
    re = np.select([e == 0, e == 1, e == 2], [x0 + u * (x1 - x0), x1, x1 - u * (x1 - x0)], x0)
    im = np.select([e == 0, e == 1, e == 2], [y0, y0 + u * (y1 - y0), y1], y1 - u * (y1 - y0))
    return re + 1j * im


def winding_numbers(m: int, c: float, boxes: np.ndarray, n0: int = 8, max_rounds: int = 80):
    """Zero counts of F inside each rectangle (rows lo_re, hi_re, lo_im, hi_im)."""
    boxes = np.asarray(boxes, dtype=float).reshape(-1, 4)
    B = len(boxes)
    s0 = np.linspace(0.0, 4.0, 4 * n0 + 1)
    bid = np.repeat(np.arange(B), len(s0))
    sp = np.tile(s0, B)
    z = _edge_points(boxes, bid, sp)
    F, _, _, spd = _parts(m, c, z)
    ph = np.angle(F)
    for _ in range(max_rounds):
        order = np.lexsort((sp, bid))
        bid, sp, ph, spd, z = bid[order], sp[order], ph[order], spd[order], z[order]
        same = bid[1:] == bid[:-1]
        d = np.angle(np.exp(1j * (ph[1:] - ph[:-1])))
        dz = np.abs(z[1:] - z[:-1])
        bad = same & ((np.abs(d) > np.pi / 4) | (dz * np.maximum(spd[1:], spd[:-1]) > np.pi / 4))
        if not bad.any():
            break
        idx = np.flatnonzero(bad)
        nb = bid[idx]
        ns = 0.5 * (sp[idx] + sp[idx + 1])
        nz = _edge_points(boxes, nb, ns)
        Fn, _, _, sn = _parts(m, c, nz)
        bid = np.concatenate([bid, nb])
        sp = np.concatenate([sp, ns])
        ph = np.concatenate([ph, np.angle(Fn)])
        spd = np.concatenate([spd, sn])
        z = np.concatenate([z, nz])
    else:
        raise WindingError(f"phase continuation unresolved for order m = {m}")
    tot = np.bincount(bid[:-1][same], weights=d[same], minlength=B)
    w = tot / (2 * np.pi)
    wi = np.rint(w).astype(int)
    if np.any(np.abs(w - wi) > 1e-6) or np.any(wi < 0):
        raise WindingError(f"non-integer winding {w} for order m = {m}")
    return wi


def _newton(m: int, c: float, z0, maxiter: int = 40):
    z = np.array(z0, dtype=complex)
    done = np.zeros(len(z), dtype=bool)
    k = c**-2 - 1
    for _ in range(maxiter):
        _, a, b, _ = _parts(m, c, z)
        step = (a - b) / (z * k)
        step = np.where(done | ~np.isfinite(step), 0, step)
        z = z - step
        done |= np.abs(step) <= 1e-14 * np.maximum(np.abs(z), 1.0)
        if done.all():
            break
    _, a, b, _ = _parts(m, c, z)
    rel = np.abs(a - b) / (np.abs(a) + np.abs(b))
    return z, done, rel


def _outside_disk(boxes, r):
    dx = np.maximum(0.0, np.maximum(boxes[:, 0], -boxes[:, 1]))
    dy = np.maximum(0.0, np.maximum(boxes[:, 2], -boxes[:, 3]))
    return np.hypot(dx, dy) >= r


def _solve_boxes(m: int, c: float, region, r_disk: float | None = None,
                 max_depth: int = 60):
    """Quadtree search; returns (roots, total winding of region)."""
    boxes = np.array([region], dtype=float)
    w = winding_numbers(m, c, boxes)
    total = int(w[0])
    roots: list[complex] = []
    dropped = 0
    depth = 0
    while len(boxes):
        keep = w > 0
        if r_disk is not None:
            far = keep & _outside_disk(boxes, r_disk)
            dropped += int(w[far].sum())
            keep &= ~far
        boxes, w = boxes[keep], w[keep]
        if not len(boxes):
            break
        accepted = np.zeros(len(boxes), dtype=bool)
        one = np.flatnonzero(w == 1)
        if len(one):
            b1 = boxes[one]
            z0 = 0.5 * (b1[:, 0] + b1[:, 1]) + 0.5j * (b1[:, 2] + b1[:, 3])
            z, ok, rel = _newton(m, c, z0)
            inside = ((z.real >= b1[:, 0]) & (z.real <= b1[:, 1])
                      & (z.imag >= b1[:, 2]) & (z.imag <= b1[:, 3]))
            good = ok & inside & (rel < 1e-10)
            roots.extend(z[good])
            accepted[one[good]] = True
        rest = boxes[~accepted]
        if not len(rest):
            break
        depth += 1
        if depth > max_depth:
            raise RootCountError(f"box subdivision did not isolate roots for m = {m}")
        wd = rest[:, 1] - rest[:, 0]
        ht = rest[:, 3] - rest[:, 2]
        cut_x = wd >= ht
        xm = rest[:, 0] + SPLIT * wd
        ym = rest[:, 2] + SPLIT * ht
        lo, hi = rest.copy(), rest.copy()
        lo[cut_x, 1] = xm[cut_x]
        hi[cut_x, 0] = xm[cut_x]
        lo[~cut_x, 3] = ym[~cut_x]
        hi[~cut_x, 2] = ym[~cut_x]
        boxes = np.concatenate([lo, hi])
        w = winding_numbers(m, c, boxes)
    if len(roots) + dropped != total:
        raise RootCountError(
            f"m = {m}: {len(roots)} roots + {dropped} discarded != region winding {total}")
    roots_a = np.array(roots, dtype=complex)
    return roots_a[np.lexsort((roots_a.imag, roots_a.real))], total


def zeros_in_region(l: int, n: int, c: float, region) -> np.ndarray:
    """All zeros of the transmission condition in the rectangle (lo_re, hi_re, lo_im, hi_im)."""
    _check(n, c)
    lo_re, hi_re, lo_im, hi_im = map(float, region)
    if not (lo_re < hi_re and lo_im < hi_im):
        raise ValueError("region must be a nondegenerate rectangle")
    m = HalfIntOrder.from_ln(l, n).m
    roots, _ = _solve_boxes(m, c, (lo_re, hi_re, lo_im, hi_im))
    return roots


def mode_zeros(l: int, n: int, c: float, r: float) -> np.ndarray:
    """Zeros with |lam| < r for one mode (R0 = 1), both sides of the imaginary axis.

    The search covers Re lam >= -0.25 and Im lam >= -0.5; zeros with Re < 0
    are recovered from the symmetry lam -> -conj(lam).
    """
    _check(n, c)
    m = HalfIntOrder.from_ln(l, n).m
    roots, _ = _solve_boxes(m, c, (LEFT_RE, r, FLOOR_IM, r), r_disk=r)
    roots = roots[np.abs(roots) < r + TIE_TOL]
    tol = MIRROR_TOL * np.maximum(np.abs(roots), 1.0)
    right = roots[roots.real > tol]
    axis = roots[np.abs(roots.real) <= tol]
    axis = 1j * axis.imag
    out = np.concatenate([right, axis, -np.conj(right)])
    return out[np.lexsort((out.imag, out.real))]


def classify(lam: complex, nu: float) -> str:
    """Boundary family if lam/nu is nearer the boundary of K than the real axis."""
    z = lam / nu
    return "transparent_interior" if abs(z.imag) < eye_distance(z) else "transparent_boundary"


def interior_seeds(nu: float, c: float, r: float) -> np.ndarray:
    """Leading-order interior-family locations: lam = c nu z, z > 1, with
    sqrt(z^2-1) - arcsec z = k pi / nu, |lam| < r."""
    out = []
    k = 1
    while True:
        target = k * math.pi / nu
        # g(w) = w - arctan w is increasing in w = sqrt(z^2 - 1)
        lo, hi = 0.0, target + 2.0
        for _ in range(80):
            mid = 0.5 * (lo + hi)
            if mid - math.atan(mid) < target:
                lo = mid
            else:
                hi = mid
        lam = c * nu * math.sqrt(1 + lo * lo)
        if lam >= r:
            break
        out.append(lam)
        k += 1
    return np.array(out)


def _workers() -> int:
    try:
        return max(1, int(os.environ.get("SCATPOLES_WORKERS", "1")))
    except ValueError:
        return 1


def _mode_task(args):
    l, n, c, r = args
    return l, mode_zeros(l, n, c, r)


def transparent_table(n: int, c: float, R0: float, r_max: float, guard: int = 3,
                      l_max: int | None = None) -> list[ResonanceRecord]:
    """All zeros with |lam| < r_max over every mode, as records in the upper half-plane.

    Resonances are the conjugates (see :func:`resonances`).  Orders are
    scanned until nu min(0.66, c) exceeds r_max R0 and ``guard`` further
    orders in a row are empty.  Set SCATPOLES_WORKERS to spread orders over
    processes; results do not depend on it.
    """
    _check(n, c)
    if R0 <= 0 or r_max <= 0:
        raise ValueError("R0 and r_max must be positive")
    r = r_max * R0
    onset = min(0.66, c)
    workers = _workers()
    records: list[ResonanceRecord] = []
    empty = 0
    l = 0
    pool = ProcessPoolExecutor(workers) if workers > 1 else None
    try:
        while True:
            batch = list(range(l, l + workers))
            tasks = [(k, n, c, r) for k in batch]
            results = list(pool.map(_mode_task, tasks)) if pool else [_mode_task(t) for t in tasks]
            stop = False
            for k, z in sorted(results):
                nu = HalfIntOrder.from_ln(k, n)
                mult = multiplicity_m(k, n)
                records.extend(ResonanceRecord(k, nu, complex(x / R0), mult, classify(x, nu.nu))
                               for x in z)
                beyond = nu.nu * onset > r
                empty = empty + 1 if (beyond and len(z) == 0) else 0
                if empty >= guard or (l_max is not None and k >= l_max):
                    stop = True
                    break
            if stop:
                break
            l += workers
    finally:
        if pool:
            pool.shutdown()
    records.sort(key=lambda rec: (rec.l, rec.lam.real, rec.lam.imag))
    return records


def resonances(records) -> list[ResonanceRecord]:
    """Conjugated view: the actual resonances, in the lower half-plane."""
    return [ResonanceRecord(r.l, r.nu, r.lam.conjugate(), r.multiplicity, r.family)
            for r in records]
