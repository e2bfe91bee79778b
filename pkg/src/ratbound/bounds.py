"""Derivative bounds on the unit circle for rational functions with fixed poles.

Each supported inequality bounds |r'(z)| for |z| = 1 by an expression in
|B'(z)|, |r(z)|, the Chebyshev norm ||r|| on the unit circle, a minimum
modulus m taken on a designated circle, the zero count t, the pole count
n, and the zero-region radius k.  Upper bounds require the zeros outside
or on |z| = k; lower bounds require them inside or on.  The margin of an
upper bound is RHS - |r'(z)| and of a lower bound |r'(z)| - RHS, so a
nonnegative margin means the inequality held at that point.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .blaschke import BlaschkeProduct, blaschke_deriv_modulus_on_T1
from .circlescan import CircleGrid, min_modulus_on_circle, sup_modulus_on_circle
from .errors import DegenerateBound, HypothesisViolated, ParameterOutOfRange
from .ratfun import (
    MODE_INSIDE,
    MODE_OUTSIDE,
    POLE_PROXIMITY_CUTOFF,
    PoleSet,
    Polynomial,
    RationalFunction,
    ZeroLocation,
    classify_zeros,
    rat_derivative_eval,
    rat_eval,
)

# A margin below -MARGIN_TOL * max(1, ||r||) counts as a violation.
MARGIN_TOL = 1e-9
# Norm and min modulus closer than this make the main upper bound ill-posed.
DEGENERATE_GAP = 1e-12
# A zero counts as sitting on the circle |z| = k within this distance.
BOUNDARY_ZERO_TOL = 1e-9


class TheoremId(enum.Enum):
    """Vocabulary of certified inequalities (values are the CLI names)."""

    LI_UPPER = "li-upper"
    LI_LOWER = "li-lower"
    AZIZ_SHAH_UPPER_97 = "aziz-shah-upper-97"
    AZIZ_SHAH_LOWER_97 = "aziz-shah-lower-97"
    AZIZ_ZARGER_99 = "aziz-zarger-99"
    AZIZ_SHAH_04 = "aziz-shah-04"
    AZIZ_SHAH_04_COR = "aziz-shah-04-cor"
    MAIN_UPPER = "main-upper"
    MAIN_UPPER_COR = "main-upper-cor"
    MAIN_LOWER = "main-lower"
    MAIN_LOWER_COR = "main-lower-cor"

    @classmethod
    def from_name(cls, name: str) -> "TheoremId":
        for member in cls:
            if member.value == name:
                return member
        raise KeyError(f"unknown theorem name {name!r}")


# How the radius argument is constrained per inequality.
K_FIXED_ONE = "fixed-one"
K_AT_LEAST_ONE = "at-least-one"
K_AT_MOST_ONE = "at-most-one"


@dataclass(frozen=True)
class HypothesisProfile:
    """Zero-location and parameter requirements of one inequality."""

    direction: str
    zero_mode: str
    k_rule: str
    needs_all_zeros: bool = False
    needs_boundary_zero: bool = False
    m_circle: str = "none"  # "none" | "unit" | "scan"


_PROFILES = {
    TheoremId.LI_UPPER: HypothesisProfile("upper", MODE_OUTSIDE, K_FIXED_ONE),
    TheoremId.LI_LOWER: HypothesisProfile("lower", MODE_INSIDE, K_FIXED_ONE),
    TheoremId.AZIZ_SHAH_UPPER_97: HypothesisProfile("upper", MODE_OUTSIDE, K_FIXED_ONE, m_circle="unit"),
    TheoremId.AZIZ_SHAH_LOWER_97: HypothesisProfile(
        "lower", MODE_INSIDE, K_FIXED_ONE, needs_all_zeros=True, m_circle="unit"
    ),
    TheoremId.AZIZ_ZARGER_99: HypothesisProfile("upper", MODE_OUTSIDE, K_AT_LEAST_ONE),
    TheoremId.AZIZ_SHAH_04: HypothesisProfile("lower", MODE_INSIDE, K_AT_MOST_ONE),
    TheoremId.AZIZ_SHAH_04_COR: HypothesisProfile("lower", MODE_INSIDE, K_AT_MOST_ONE, needs_all_zeros=True),
    TheoremId.MAIN_UPPER: HypothesisProfile("upper", MODE_OUTSIDE, K_AT_LEAST_ONE, m_circle="scan"),
    TheoremId.MAIN_UPPER_COR: HypothesisProfile("upper", MODE_OUTSIDE, K_AT_LEAST_ONE, needs_boundary_zero=True),
    TheoremId.MAIN_LOWER: HypothesisProfile("lower", MODE_INSIDE, K_AT_MOST_ONE, m_circle="scan"),
    TheoremId.MAIN_LOWER_COR: HypothesisProfile(
        "lower", MODE_INSIDE, K_AT_MOST_ONE, needs_all_zeros=True, m_circle="scan"
    ),
}


def profile(theorem: TheoremId) -> HypothesisProfile:
    return _PROFILES[theorem]


def hypothesis_zero_location(theorem: TheoremId, k: float) -> ZeroLocation:
    prof = _PROFILES[theorem]
    if prof.zero_mode == MODE_OUTSIDE:
        return ZeroLocation.all_outside_or_on(k)
    return ZeroLocation.all_inside_or_on(k)


def _radius_ok(prof: HypothesisProfile, k: float) -> bool:
    if prof.k_rule == K_FIXED_ONE:
        return k == 1.0
    if prof.k_rule == K_AT_LEAST_ONE:
        return k >= 1.0
    return 0.0 < k <= 1.0


def check_hypothesis(theorem: TheoremId, r: RationalFunction, k: float):
    """Raise HypothesisViolated unless r satisfies the theorem's hypotheses."""
    prof = _PROFILES[theorem]
    if not _radius_ok(prof, k):
        raise HypothesisViolated(f"{theorem.value} does not admit radius k={k}")
    if prof.needs_all_zeros and r.t != r.n:
        raise HypothesisViolated(f"{theorem.value} needs exactly n={r.n} zeros, instance has t={r.t}")
    if not classify_zeros(r, hypothesis_zero_location(theorem, k)):
        side = "outside" if prof.zero_mode == MODE_OUTSIDE else "inside"
        raise HypothesisViolated(f"{theorem.value} needs every zero {side} or on |z|={k}")
    if prof.needs_boundary_zero:
        moduli = np.abs(r.zeros())
        if not (moduli.size and np.any(np.abs(moduli - k) <= BOUNDARY_ZERO_TOL)):
            raise HypothesisViolated(f"{theorem.value} needs at least one zero on |z|={k}")


@dataclass(frozen=True)
class BoundContext:
    """Scalars a bound expression needs beyond the evaluation point."""

    norm: float
    m: float
    t: int
    n: int
    k: float
    m_circle: float | None = None

    def __post_init__(self):
        if not (np.isfinite(self.norm) and self.norm > 0):
            raise ValueError("norm must be positive and finite")
        if not (np.isfinite(self.m) and self.m >= 0):
            raise ValueError("m must be nonnegative and finite")
        if not 0 <= self.t <= self.n:
            raise ValueError("need 0 <= t <= n")
        if not (np.isfinite(self.k) and self.k > 0):
            raise ValueError("k must be positive and finite")


def rhs_value(theorem: TheoremId, bprime, r_abs, ctx: BoundContext):
    """Bound right-hand side as a pure function of its scalar ingredients.

    ``bprime`` and ``r_abs`` may be arrays; the result broadcasts.  No
    hypothesis checking happens here, which is what lets tests compare
    arms of the family on one shared context.
    """
    bp = np.asarray(bprime, dtype=np.float64)
    ra = np.asarray(r_abs, dtype=np.float64)
    norm, m, t, n, k = ctx.norm, ctx.m, ctx.t, ctx.n, ctx.k
    if theorem is TheoremId.LI_UPPER:
        out = 0.5 * bp * norm
    elif theorem is TheoremId.LI_LOWER:
        out = (0.5 * bp - 0.5 * (n - t)) * ra
    elif theorem is TheoremId.AZIZ_SHAH_UPPER_97:
        out = 0.5 * bp * (norm - m)
    elif theorem is TheoremId.AZIZ_SHAH_LOWER_97:
        out = 0.5 * bp * (ra + m)
    elif theorem is TheoremId.AZIZ_ZARGER_99:
        out = 0.5 * (bp - n * (k - 1.0) / (k + 1.0) * ra**2 / norm**2) * norm
    elif theorem is TheoremId.AZIZ_SHAH_04:
        out = 0.5 * (bp + (2.0 * t - n * (1.0 + k)) / (1.0 + k)) * ra
    elif theorem is TheoremId.AZIZ_SHAH_04_COR:
        out = 0.5 * (bp + n * (1.0 - k) / (1.0 + k)) * ra
    elif theorem is TheoremId.MAIN_UPPER:
        gap = norm - m
        out = 0.5 * (bp - (n * (1.0 + k) - 2.0 * t) * (ra - m) ** 2 / ((1.0 + k) * gap**2)) * gap
    elif theorem is TheoremId.MAIN_UPPER_COR:
        out = 0.5 * (bp - (n * (1.0 + k) - 2.0 * t) / (1.0 + k) * ra**2 / norm**2) * norm
    elif theorem is TheoremId.MAIN_LOWER:
        out = 0.5 * (bp + (2.0 * t - n * (1.0 + k)) / (1.0 + k)) * (ra + m)
    elif theorem is TheoremId.MAIN_LOWER_COR:
        out = 0.5 * (bp + n * (1.0 - k) / (1.0 + k)) * (ra + m)
    else:  # pragma: no cover
        raise KeyError(theorem)
    if np.isscalar(bprime) and np.isscalar(r_abs):
        return float(out)
    return out


def build_context(theorem: TheoremId, r: RationalFunction, k: float, grid_count: int) -> BoundContext:
    """Compute norm and the designated minimum modulus for one instance."""
    prof = _PROFILES[theorem]
    norm = sup_modulus_on_circle(r, 1.0, CircleGrid(1.0, grid_count)).value
    if prof.m_circle == "unit":
        m, m_circle = min_modulus_on_circle(r, 1.0, CircleGrid(1.0, grid_count)).value, 1.0
    elif prof.m_circle == "scan":
        m, m_circle = min_modulus_on_circle(r, k, CircleGrid(k, grid_count)).value, k
    else:
        m, m_circle = 0.0, None
    ctx = BoundContext(norm=norm, m=m, t=r.t, n=r.n, k=k, m_circle=m_circle)
    _degenerate_guard(theorem, ctx)
    return ctx


def _degenerate_guard(theorem: TheoremId, ctx: BoundContext):
    if theorem is TheoremId.MAIN_UPPER and ctx.norm - ctx.m <= DEGENERATE_GAP:
        raise DegenerateBound(f"norm {ctx.norm!r} and min modulus {ctx.m!r} coincide within {DEGENERATE_GAP}")


def bound_rhs(theorem: TheoremId, ctx: BoundContext, r: RationalFunction, z) -> float:
    """Bound RHS at one circle point, with hypothesis and context checks."""
    if ctx.t != r.t or ctx.n != r.n:
        raise ValueError(f"context (t={ctx.t}, n={ctx.n}) disagrees with instance (t={r.t}, n={r.n})")
    check_hypothesis(theorem, r, ctx.k)
    _degenerate_guard(theorem, ctx)
    zc = complex(z)
    bp = blaschke_deriv_modulus_on_T1(BlaschkeProduct(r.poles), zc)
    return float(rhs_value(theorem, bp, abs(rat_eval(r, zc)), ctx))


@dataclass(frozen=True)
class BoundVerdict:
    """Outcome of sweeping one inequality over the unit-circle grid."""

    theorem: TheoremId
    context: BoundContext
    grid_count: int
    min_margin: float
    worst_theta: float
    violations: int
    skipped_points: int
    degenerate: str | None = None

    @property
    def passed(self) -> bool:
        return self.violations == 0 and self.degenerate is None


def certify(theorem: TheoremId, r: RationalFunction, grid: CircleGrid) -> BoundVerdict:
    """Sweep the inequality over the unit circle and report the margins.

    grid.k is the zero-region radius of the hypothesis; margins are
    always evaluated on the unit circle with grid.count points.  Points
    within 1e-12 of a pole are skipped and counted.  Raises
    HypothesisViolated or DegenerateBound rather than certifying junk.
    """
    prof = _PROFILES[theorem]
    check_hypothesis(theorem, r, grid.k)
    ctx = build_context(theorem, r, grid.k, grid.count)
    unit = CircleGrid(1.0, grid.count)
    thetas = unit.thetas()
    points = unit.points()
    keep = np.ones(points.size, dtype=bool)
    if r.poles.n:
        keep = np.min(np.abs(points[:, None] - r.poles.as_array()[None, :]), axis=1) >= POLE_PROXIMITY_CUTOFF
    zs = points[keep]
    deriv_abs = np.abs(rat_derivative_eval(r, zs))
    bp = blaschke_deriv_modulus_on_T1(BlaschkeProduct(r.poles), zs)
    rhs = rhs_value(theorem, bp, np.abs(rat_eval(r, zs)), ctx)
    margin = rhs - deriv_abs if prof.direction == "upper" else deriv_abs - rhs
    worst = int(np.argmin(margin))
    tol = MARGIN_TOL * max(1.0, ctx.norm)
    return BoundVerdict(
        theorem=theorem,
        context=ctx,
        grid_count=grid.count,
        min_margin=float(margin[worst]),
        worst_theta=float(thetas[keep][worst]),
        violations=int(np.sum(margin < -tol)),
        skipped_points=int(np.sum(~keep)),
    )


def margin_curve(theorem: TheoremId, r: RationalFunction, grid: CircleGrid):
    """Rows (theta, |r'|, RHS, margin), one per grid point on the unit circle."""
    prof = _PROFILES[theorem]
    check_hypothesis(theorem, r, grid.k)
    ctx = build_context(theorem, r, grid.k, grid.count)
    thetas = CircleGrid(1.0, grid.count).thetas()
    zs = np.exp(1j * thetas)
    deriv_abs = np.abs(rat_derivative_eval(r, zs))
    bp = blaschke_deriv_modulus_on_T1(BlaschkeProduct(r.poles), zs)
    rhs = rhs_value(theorem, bp, np.abs(rat_eval(r, zs)), ctx)
    margin = rhs - deriv_abs if prof.direction == "upper" else deriv_abs - rhs
    return thetas, deriv_abs, rhs, margin


def blaschke_offset_family(poles: PoleSet, h: float, alpha: float = 0.0) -> RationalFunction:
    """The equality family B(z) + h e^(i alpha) as a rational function."""
    if not (np.isfinite(h) and h >= 0):
        raise ParameterOutOfRange("offset magnitude h must be a nonnegative real")
    coeffs = np.array([1.0], dtype=np.complex128)
    for a in poles.poles:
        grown = np.zeros(coeffs.size + 1, dtype=np.complex128)
        grown[:-1] += coeffs
        grown[1:] -= np.conj(a) * coeffs
        coeffs = grown
    wpoly = Polynomial.from_roots(poles.as_array(), 1.0)
    total = np.zeros(max(coeffs.size, wpoly.coeffs.size), dtype=np.complex128)
    total[: coeffs.size] += coeffs
    total[: wpoly.coeffs.size] += h * np.exp(1j * alpha) * wpoly.coeffs
    return RationalFunction(Polynomial(total), poles)


_POWER_FAMILY = {
    TheoremId.AZIZ_ZARGER_99,
    TheoremId.AZIZ_SHAH_04,
    TheoremId.AZIZ_SHAH_04_COR,
    TheoremId.MAIN_UPPER,
    TheoremId.MAIN_UPPER_COR,
    TheoremId.MAIN_LOWER,
    TheoremId.MAIN_LOWER_COR,
}


def make_extremal(theorem: TheoremId, a: float, k: float, t: int, n: int):
    """Equality-family instance for a theorem, returned with its tight point.

    For the radius-k inequalities this is (z + k)^t / (z - a)^n with an
    n-fold real pole a > 1; equality holds at z = 1.  For the unit-circle
    inequalities the family is B(z) + h with an n-fold pole at a, where
    the k argument is reused as the offset magnitude h (the zero-region
    radius of those theorems is pinned to 1); with a real and the offset
    positive the tight point is again z = 1.
    """
    prof = _PROFILES[theorem]
    if not (np.isreal(a) and float(a) > 1.0):
        raise ParameterOutOfRange("pole location a must be a real above 1")
    a = float(a)
    if not (isinstance(n, (int, np.integer)) and n >= 1):
        raise ParameterOutOfRange("need an integer pole count n >= 1")
    if not (isinstance(t, (int, np.integer)) and 0 <= t <= n):
        raise ParameterOutOfRange("need an integer zero count 0 <= t <= n")
    if prof.needs_all_zeros and t != n:
        raise ParameterOutOfRange(f"{theorem.value} needs t == n")
    if theorem is TheoremId.AZIZ_ZARGER_99 and t != n:
        # This bound admits t < n, but its tight family is the n-fold one.
        raise ParameterOutOfRange("the equality family here has exactly n zeros")
    poles = PoleSet([complex(a, 0.0)] * int(n))
    if theorem in _POWER_FAMILY:
        if not _radius_ok(prof, k):
            raise ParameterOutOfRange(f"{theorem.value} does not admit radius k={k}")
        if t < 1:
            raise ParameterOutOfRange("the power family needs at least one zero")
        r = RationalFunction.from_zeros([complex(-k, 0.0)] * int(t), poles, 1.0)
    else:
        if theorem in (TheoremId.LI_UPPER, TheoremId.LI_LOWER) and k != 1.0:
            raise ParameterOutOfRange(f"{theorem.value} admits only k=1")
        if prof.direction == "upper" and k < 1.0:
            raise ParameterOutOfRange("offset magnitude below 1 breaks the zero hypothesis")
        if prof.direction == "lower" and k > 1.0:
            raise ParameterOutOfRange("offset magnitude above 1 breaks the zero hypothesis")
        if t != n:
            raise ParameterOutOfRange("the offset family always has exactly n zeros")
        r = blaschke_offset_family(poles, float(k), 0.0)
    return r, complex(1.0, 0.0)


def sharpness_gap(theorem: TheoremId, r: RationalFunction, z, k: float = 1.0, grid_count: int = 1024) -> float:
    """|RHS(z) - |r'(z)|| for one instance; small means the bound is tight."""
    ctx = build_context(theorem, r, float(k), grid_count)
    rhs = bound_rhs(theorem, ctx, r, z)
    return float(abs(rhs - abs(rat_derivative_eval(r, complex(z)))))
