"""Polynomial and rational-function arithmetic against hand and finite-difference oracles."""

import numpy as np
import pytest

from ratbound import (
    CounterRng,
    NearPole,
    NonConvergence,
    PoleSet,
    Polynomial,
    RationalFunction,
    Reducible,
    ZeroLocation,
    classify_zeros,
    poly_eval,
    poly_roots,
    rat_derivative_eval,
    rat_eval,
)


def unit_point(theta: float) -> complex:
    return complex(np.cos(theta), np.sin(theta))


# ---------------------------------------------------------------------------
# polynomial construction and evaluation


def test_poly_eval_root_by_construction():
    p = Polynomial([1.0, 0.0, 1.0])  # z^2 + 1
    assert abs(poly_eval(p, 1j)) == 0.0


def test_poly_eval_constant():
    p = Polynomial([1.0])
    for z in (0.0, 1.0, 2.3 - 0.7j, 1e6):
        assert poly_eval(p, z) == 1.0 + 0.0j


def test_poly_eval_squared_binomial():
    # (z+1)^2 expands to 1 + 2z + z^2 by hand.
    by_coeffs = Polynomial([1.0, 2.0, 1.0])
    by_roots = Polynomial.from_roots([-1.0, -1.0])
    assert by_coeffs(1.0) == 4.0 + 0.0j
    assert abs(by_roots(1.0) - 4.0) < 1e-15
    assert np.allclose(by_coeffs.coeffs, by_roots.coeffs, rtol=0, atol=1e-14)


def test_poly_eval_scalar_in_scalar_out():
    p = Polynomial([1.0, 2.0, 1.0])
    val = poly_eval(p, 0.5)
    assert isinstance(val, complex)
    arr = poly_eval(p, np.array([0.5, 1.0]))
    assert arr.shape == (2,)


def test_polynomial_trims_trailing_zeros():
    p = Polynomial([2.0, 1.0, 0.0, 0.0])
    assert p.degree == 1
    assert p.coeffs[-1] != 0


def test_polynomial_rejects_nonfinite_coefficients():
    with pytest.raises(ValueError):
        Polynomial([1.0, np.nan])
    with pytest.raises(ValueError):
        Polynomial([np.inf, 1.0])
    with pytest.raises(ValueError):
        Polynomial.from_roots([1.0 + np.nan * 1j])


def test_from_roots_expansion_matches_coefficients():
    # Cached roots and expanded coefficients describe the same polynomial.
    rng = CounterRng(1101)
    for trial in range(50):
        sub = rng.split(trial)
        deg = 1 + sub.next_u64() % 6
        roots = [
            complex(2 * sub.next_float() - 1, 2 * sub.next_float() - 1)
            for _ in range(deg)
        ]
        p = Polynomial.from_roots(roots, leading=1.7 - 0.3j)
        rebuilt = np.array([1.7 - 0.3j], dtype=np.complex128)
        for b in roots:
            grown = np.zeros(rebuilt.size + 1, dtype=np.complex128)
            grown[1:] += rebuilt
            grown[:-1] -= b * rebuilt
            rebuilt = grown
        scale = np.abs(p.coeffs).max()
        assert np.abs(p.coeffs - rebuilt).max() <= 1e-10 * scale


def test_derivative_coefficients():
    p = Polynomial([1.0, 2.0, 3.0])  # 1 + 2z + 3z^2
    d = p.derivative()
    assert np.allclose(d.coeffs, [2.0, 6.0])
    assert Polynomial([5.0]).derivative().is_zero


# ---------------------------------------------------------------------------
# root finding


def test_poly_roots_quadratic():
    p = Polynomial([-0.25, 0.0, 1.0])  # z^2 - 0.25
    roots = np.sort_complex(poly_roots(p))
    assert np.allclose(roots, [-0.5, 0.5], atol=1e-12)


def test_poly_roots_triple_cluster():
    # (z-2)^3 = -8 + 12z - 6z^2 + z^3; the cluster spreads but stays tight.
    p = Polynomial([-8.0, 12.0, -6.0, 1.0])
    roots = poly_roots(p)
    assert roots.shape == (3,)
    assert np.abs(roots - 2.0).max() <= 1e-4


def test_poly_roots_monomial():
    roots = poly_roots(Polynomial([0.0, 1.0]))
    assert roots.shape == (1,)
    assert abs(roots[0]) == 0.0


def test_poly_roots_zero_polynomial_rejected():
    with pytest.raises(ValueError):
        poly_roots(Polynomial([0.0]))


def test_poly_roots_residual_bound():
    rng = CounterRng(1102)
    for trial in range(30):
        sub = rng.split(trial)
        deg = 1 + sub.next_u64() % 8
        coeffs = [
            complex(2 * sub.next_float() - 1, 2 * sub.next_float() - 1)
            for _ in range(deg + 1)
        ]
        if abs(coeffs[-1]) < 0.1:
            coeffs[-1] = 1.0
        p = Polynomial(coeffs)
        roots = poly_roots(p)
        cmax = np.abs(p.coeffs).max()
        for root in roots:
            cap = 1e-10 * cmax * max(1.0, abs(root)) ** p.degree
            assert abs(p(root)) <= cap


def test_poly_roots_exhausted_budget_raises():
    p = Polynomial([-8.0, 12.0, -6.0, 1.0])
    with pytest.raises(NonConvergence):
        poly_roots(p, sweep_budget=0)


def test_root_coefficient_round_trip():
    # expand(poly_roots(p)) reproduces p to relative 1e-8, degree <= 8.
    rng = CounterRng(1103)
    for trial in range(40):
        sub = rng.split(trial)
        deg = 1 + sub.next_u64() % 8
        coeffs = [
            complex(2 * sub.next_float() - 1, 2 * sub.next_float() - 1)
            for _ in range(deg + 1)
        ]
        if abs(coeffs[-1]) < 0.05:
            coeffs[-1] += 0.5
        p = Polynomial(coeffs)
        rebuilt = Polynomial.from_roots(poly_roots(p), leading=p.coeffs[-1])
        scale = np.abs(p.coeffs).max()
        assert np.abs(rebuilt.coeffs - p.coeffs).max() <= 1e-8 * scale


def test_roots_cache_is_authoritative():
    p = Polynomial.from_roots([0.5, -0.5])
    assert p.has_root_cache()
    assert np.allclose(np.sort_complex(p.roots()), [-0.5, 0.5], atol=0)


# ---------------------------------------------------------------------------
# rational functions


def test_rat_eval_single_pole():
    r = RationalFunction(Polynomial([1.0]), PoleSet([2.0]))
    assert rat_eval(r, 1.0) == -1.0 + 0.0j


def test_rat_eval_squared_ratio():
    # (z+1)^2/(z-3)^2 at z=1 is 2^2/(-2)^2 = 1.
    r = RationalFunction.from_zeros([-1.0, -1.0], PoleSet([3.0, 3.0]))
    assert abs(rat_eval(r, 1.0) - 1.0) <= 1e-14


def test_rat_eval_peak_at_one_for_power_family():
    # (z+1)^2/(z-3)^2 attains its largest circle modulus at z = 1.
    r = RationalFunction.from_zeros([-1.0, -1.0], PoleSet([3.0, 3.0]))
    thetas = np.linspace(0.0, 2 * np.pi, 4096, endpoint=False)
    vals = np.abs(rat_eval(r, np.exp(1j * thetas)))
    peak = abs(rat_eval(r, 1.0))
    assert abs(peak - 1.0) <= 1e-14
    assert vals.max() <= peak + 1e-12


def test_rat_eval_near_pole_rejected():
    r = RationalFunction(Polynomial([1.0]), PoleSet([2.0]))
    with pytest.raises(NearPole):
        rat_eval(r, 2.0 + 1e-13)
    with pytest.raises(NearPole):
        rat_derivative_eval(r, 2.0 + 1e-13)


def test_rational_function_rejects_degree_overflow():
    with pytest.raises(ValueError):
        RationalFunction(Polynomial([0.0, 0.0, 1.0]), PoleSet([2.0]))


def test_rational_function_rejects_zero_numerator():
    with pytest.raises(ValueError):
        RationalFunction(Polynomial([0.0]), PoleSet([2.0]))


def test_rational_function_rejects_shared_root_and_pole():
    with pytest.raises(Reducible):
        RationalFunction.from_zeros([2.0], PoleSet([2.0]))
    with pytest.raises(Reducible):
        RationalFunction.from_zeros([2.0 + 5e-13], PoleSet([2.0]))


def test_pole_set_validation():
    with pytest.raises(ValueError):
        PoleSet([0.5])
    with pytest.raises(ValueError):
        PoleSet([1.0])
    with pytest.raises(ValueError):
        PoleSet([np.nan + 2j])
    assert PoleSet().n == 0
    assert PoleSet([2.0, 2.0]).n == 2


def test_rat_derivative_single_pole():
    # d/dz 1/(z-2) = -1/(z-2)^2, so at z=1 the value is -1.
    r = RationalFunction(Polynomial([1.0]), PoleSet([2.0]))
    assert abs(rat_derivative_eval(r, 1.0) - (-1.0)) <= 1e-15


def test_rat_derivative_power_family_magnitude():
    # |r'(1)| = [t/(1+k) + n/(a-1)] * |r(1)| for r = (z+k)^t/(z-a)^n.
    for a, k, t, n in [(3.0, 1.0, 2, 2), (2.0, 1.5, 1, 3), (5.0, 1.0, 3, 3)]:
        r = RationalFunction.from_zeros([-k] * t, PoleSet([a] * n))
        expected = (t / (1.0 + k) + n / (a - 1.0)) * abs(rat_eval(r, 1.0))
        assert abs(abs(rat_derivative_eval(r, 1.0)) - expected) <= 1e-12 * max(1.0, expected)


def random_instance(sub: CounterRng, n_max: int = 4):
    n = 1 + sub.next_u64() % n_max
    t = sub.next_u64() % (n + 1)
    poles = []
    while len(poles) < n:
        rad = sub.next_radius(1.1, 3.0)
        ang = sub.next_angle()
        poles.append(rad * np.exp(1j * ang))
    zeros = []
    while len(zeros) < t:
        rad = 2.0 * np.sqrt(sub.next_float())
        ang = sub.next_angle()
        cand = rad * np.exp(1j * ang)
        if min(abs(cand - a) for a in poles) > 1e-3:
            zeros.append(cand)
    lead = np.exp(1j * sub.next_angle())
    return RationalFunction.from_zeros(zeros, PoleSet(poles), leading=lead)


def normalized(r: RationalFunction) -> RationalFunction:
    thetas = np.linspace(0.0, 2 * np.pi, 512, endpoint=False)
    peak = float(np.abs(rat_eval(r, np.exp(1j * thetas))).max())
    lead = r.numer.coeffs[-1] / peak
    if r.t:
        return RationalFunction.from_zeros(r.zeros(), r.poles, leading=lead)
    return RationalFunction(Polynomial([lead]), r.poles)


def test_rat_derivative_matches_finite_differences():
    # Central differences with h = 1e-6 on unit-scale instances.
    rng = CounterRng(1104)
    h = 1e-6
    for trial in range(12):
        r = normalized(random_instance(rng.split(trial)))
        angles = np.linspace(0.0, 2 * np.pi, 64, endpoint=False) + 0.123
        for theta in angles:
            z = unit_point(theta)
            exact = rat_derivative_eval(r, z)
            approx = (rat_eval(r, z + h) - rat_eval(r, z - h)) / (2 * h)
            assert abs(exact - approx) <= 1e-6


def test_log_derivative_decomposition():
    # z r'/r equals sum z/(z-b_j) minus z w'/w away from zeros of r.
    rng = CounterRng(1105)
    checked = 0
    for trial in range(20):
        r = random_instance(rng.split(trial))
        zeros = r.zeros()
        poles = r.poles.as_array()
        for j in range(16):
            z = unit_point(2 * np.pi * j / 16 + 0.05)
            rv = rat_eval(r, z)
            if abs(rv) <= 1e-8:
                continue
            lhs = z * rat_derivative_eval(r, z) / rv
            rhs = np.sum(z / (z - zeros)) - np.sum(z / (z - poles))
            assert abs(lhs - rhs) <= 1e-8 * max(1.0, abs(lhs))
            checked += 1
    assert checked > 100


def test_empty_pole_set_gives_constant_rational():
    r = RationalFunction(Polynomial([2.5]), PoleSet())
    assert rat_eval(r, 1j) == 2.5 + 0.0j
    assert rat_derivative_eval(r, 1j) == 0.0 + 0.0j
    assert r.n == 0 and r.t == 0


# ---------------------------------------------------------------------------
# zero-location classification


def test_classify_boundary_zeros_outside_mode():
    k = 1.5
    r = RationalFunction.from_zeros([-k, -k], PoleSet([3.0, 3.0]))
    assert classify_zeros(r, ZeroLocation.all_outside_or_on(k))


def test_classify_inside_examples():
    r = RationalFunction.from_zeros([0.5, 0.3j], PoleSet([2.0, 3.0]))
    assert classify_zeros(r, ZeroLocation.all_inside_or_on(1.0))
    assert not classify_zeros(r, ZeroLocation.all_outside_or_on(1.0))


def test_classify_mixed_zeros_fail_outside_mode():
    r = RationalFunction.from_zeros([0.5, 2.0], PoleSet([3.0, 4.0]))
    assert not classify_zeros(r, ZeroLocation.all_outside_or_on(1.0))
    assert not classify_zeros(r, ZeroLocation.all_inside_or_on(1.0))


def test_classify_tolerance_band():
    # A zero within 1e-9 of the circle counts for either closed region.
    r = RationalFunction.from_zeros([1.0 + 1e-10], PoleSet([2.0]))
    assert classify_zeros(r, ZeroLocation.all_inside_or_on(1.0))
    assert classify_zeros(r, ZeroLocation.all_outside_or_on(1.0))


def test_classify_vacuous_cases():
    r = RationalFunction(Polynomial([1.0]), PoleSet([2.0]))
    assert classify_zeros(r, ZeroLocation.all_outside_or_on(1.0))
    assert classify_zeros(r, ZeroLocation.all_inside_or_on(1.0))
    mixed = RationalFunction.from_zeros([0.5, 2.0], PoleSet([3.0, 4.0]))
    assert classify_zeros(mixed, ZeroLocation.unconstrained())


def test_zero_location_validation():
    with pytest.raises(ValueError):
        ZeroLocation("somewhere", 1.0)
    with pytest.raises(ValueError):
        ZeroLocation.all_outside_or_on(0.0)
