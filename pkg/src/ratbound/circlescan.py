"""Circle sweeps: modulus extrema, zero counting, and log-derivative values.

Extrema of |r| on a circle |z| = k are located by a coarse uniform grid
followed by golden-section refinement inside the bracket formed by the
best sample and its two neighbours.  The coarse grid is the safety net
against aliasing; refinement only polishes a bracket the grid already
found, so a returned value is never worse than the best grid sample.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import NearZeroOfR, OffCircle, PoleOnCircle, ZeroOnContour
from .ratfun import Polynomial, RationalFunction, rat_derivative_eval, rat_eval

DEFAULT_GRID_COUNT = 1024
ACCEPTANCE_GRID_COUNT = 4096
REFINE_THETA_TOL = 1e-12
# Below this any modulus is reported as an exact zero minimum.
ZERO_SNAP = 1e-13
# Poles and numerator zeros are matched against the circle radius with
# this tolerance when deciding PoleOnCircle and the exact-zero minimum.
CIRCLE_MATCH_TOL = 1e-9
WINDING_START = 256
WINDING_MAX = 1 << 22

_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class CircleGrid:
    """Uniform angular grid on the circle of radius k."""

    k: float
    count: int = DEFAULT_GRID_COUNT

    def __post_init__(self):
        if not (np.isfinite(self.k) and self.k > 0):
            raise ValueError("grid radius must be a positive finite real")
        if self.count < 64 or self.count & (self.count - 1):
            raise ValueError("grid count must be a power of two, at least 64")

    def thetas(self) -> np.ndarray:
        return 2.0 * np.pi * np.arange(self.count) / self.count

    def points(self) -> np.ndarray:
        return self.k * np.exp(1j * self.thetas())


@dataclass(frozen=True)
class CircleScanResult:
    value: float
    arg_at: float
    grid_count: int
    refined: bool
    certified_bound: float


def _golden(fun, lo: float, hi: float, maximize: bool):
    """Golden-section search on [lo, hi]; returns (theta, value)."""
    sign = -1.0 if maximize else 1.0
    a, b = lo, hi
    c = b - _INVPHI * (b - a)
    d = a + _INVPHI * (b - a)
    fc = sign * fun(c)
    fd = sign * fun(d)
    best_t, best_f = (c, fc) if fc <= fd else (d, fd)
    while b - a > REFINE_THETA_TOL:
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - _INVPHI * (b - a)
            fc = sign * fun(c)
            if fc < best_f:
                best_t, best_f = c, fc
        else:
            a, c, fc = c, d, fd
            d = a + _INVPHI * (b - a)
            fd = sign * fun(d)
            if fd < best_f:
                best_t, best_f = d, fd
    return best_t, sign * best_f


def _pole_circle_guard(r: RationalFunction, k: float):
    if r.poles.n:
        gap = float(np.min(np.abs(np.abs(r.poles.as_array()) - k)))
        if gap < CIRCLE_MATCH_TOL:
            raise PoleOnCircle(f"pole modulus within {gap:.3g} of the scan radius {k}")


def _scan(r: RationalFunction, k: float, grid: CircleGrid | None, maximize: bool) -> CircleScanResult:
    if grid is None:
        grid = CircleGrid(k)
    elif grid.k != k:
        raise ValueError("grid radius disagrees with the requested circle")
    _pole_circle_guard(r, k)
    thetas = grid.thetas()
    vals = np.abs(rat_eval(r, grid.points()))
    certified = float(np.max(np.abs(np.diff(np.concatenate([vals, vals[:1]])))))
    best = int(np.argmax(vals) if maximize else np.argmin(vals))
    if not maximize and float(vals[best]) < ZERO_SNAP:
        return CircleScanResult(0.0, float(thetas[best]), grid.count, False, certified)
    step = 2.0 * np.pi / grid.count

    def modulus(theta: float) -> float:
        return float(abs(rat_eval(r, k * complex(math.cos(theta), math.sin(theta)))))

    lo = float(thetas[best]) - step
    hi = float(thetas[best]) + step
    theta_ref, val_ref = _golden(modulus, lo, hi, maximize)
    # Refinement must never report something the grid already beat.
    if (maximize and val_ref < vals[best]) or (not maximize and val_ref > vals[best]):
        theta_ref, val_ref = float(thetas[best]), float(vals[best])
    if not maximize and val_ref < ZERO_SNAP:
        return CircleScanResult(0.0, theta_ref % (2.0 * np.pi), grid.count, False, certified)
    return CircleScanResult(float(val_ref), theta_ref % (2.0 * np.pi), grid.count, True, certified)


def sup_modulus_on_circle(r: RationalFunction, k: float, grid: CircleGrid | None = None) -> CircleScanResult:
    """Supremum of |r| on |z| = k (grid scan plus bracket refinement)."""
    return _scan(r, float(k), grid, maximize=True)


def min_modulus_on_circle(r: RationalFunction, k: float, grid: CircleGrid | None = None) -> CircleScanResult:
    """Minimum of |r| on |z| = k.

    A numerator zero lying on the circle (modulus within 1e-9 of k)
    forces an exact 0.0, reported unrefined; this is what makes the
    boundary-zero instances produce m = 0 rather than a grid-limited
    small number.  Any scanned or refined value below 1e-13 snaps to
    0.0 the same way.
    """
    k = float(k)
    if r.t > 0:
        moduli = np.abs(r.zeros())
        hit = np.abs(moduli - k) <= CIRCLE_MATCH_TOL
        if np.any(hit):
            _pole_circle_guard(r, k)
            zero = r.zeros()[np.argmax(hit)]
            theta = float(np.angle(zero) % (2.0 * np.pi))
            count = grid.count if grid is not None else DEFAULT_GRID_COUNT
            return CircleScanResult(0.0, theta, count, False, 0.0)
    return _scan(r, k, grid, maximize=False)


def winding_zero_count(p: Polynomial, k: float) -> int:
    """Zeros of the polynomial p inside |z| < k by the argument principle.

    The phase of p is sampled on the circle with grid doubling until
    every increment is below pi/2, which makes the unwrapped total
    exact; failing to get there before the doubling cap means a root is
    on (or numerically on) the contour.
    """
    if p.is_zero:
        raise ValueError("the zero polynomial has no winding number")
    if p.degree == 0:
        return 0
    dp = p.derivative()
    count = WINDING_START
    while count <= WINDING_MAX:
        zs = k * np.exp(2j * np.pi * np.arange(count) / count)
        vals = np.atleast_1d(p(zs))
        if np.any(vals == 0):
            raise ZeroOnContour("a contour sample is an exact numerator root")
        steps = np.angle(np.roll(vals, -1) / vals)
        if float(np.max(np.abs(steps))) < np.pi / 2.0:
            # Newton step |p|/|p'| estimates the distance to the nearest
            # root; a numerically on-contour root defeats phase sampling.
            with np.errstate(divide="ignore", invalid="ignore"):
                newton = np.abs(vals) / np.abs(np.atleast_1d(dp(zs)))
            newton = np.where(np.isfinite(newton), newton, np.inf)
            if float(newton.min()) <= CIRCLE_MATCH_TOL * max(1.0, k):
                raise ZeroOnContour("a numerator root sits on the contour")
            total = float(np.sum(steps)) / (2.0 * np.pi)
            wind = int(round(total))
            if abs(total - wind) > 0.25:
                raise ZeroOnContour("winding sum is not close to an integer")
            return wind
        count *= 2
    raise ZeroOnContour(f"phase increments still too coarse at {WINDING_MAX} samples")


def count_zeros_in_disk(r: RationalFunction, k: float) -> int:
    """Numerator zeros of r strictly inside |z| < k."""
    return winding_zero_count(r.numer, float(k))


def log_derivative_real_part(r: RationalFunction, z) -> float:
    """Re(z r'(z) / r(z)) for a point z on the unit circle."""
    zc = complex(z)
    if abs(abs(zc) - 1.0) > 1e-12:
        raise OffCircle(f"|z| = {abs(zc)!r} is not on the unit circle")
    rv = rat_eval(r, zc)
    if abs(rv) <= 1e-10:
        raise NearZeroOfR(f"|r(z)| = {abs(rv):.3g} too small for a log derivative")
    return float((zc * rat_derivative_eval(r, zc) / rv).real)
