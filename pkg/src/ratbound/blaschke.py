"""Blaschke products built from pole multisets outside the unit disk.

For poles a_1, ..., a_n with |a_j| > 1 the product

    B(z) = prod_j (1 - conj(a_j) z) / (z - a_j)

is unimodular on the unit circle, and there z B'(z)/B(z) is real and
strictly positive, with the closed form

    |B'(z)| = sum_j (|a_j|^2 - 1) / |z - a_j|^2.

The conjugate transform r*(z) = B(z) * conj(r(1 / conj(z))) enters the
bound proofs only through |(r*)'| on the circle, which has the stable
expression |(r*)'(z)| = | |B'(z)| r(z) - z r'(z) | used below.
"""

from __future__ import annotations

import numpy as np

from .errors import NearPole, OffCircle
from .ratfun import PoleSet, RationalFunction, rat_derivative_eval, rat_eval

# How far |z| may sit from 1 before circle-only formulas are refused.
UNIT_CIRCLE_TOL = 1e-12


def _check_on_unit_circle(flat: np.ndarray):
    drift = float(np.max(np.abs(np.abs(flat) - 1.0))) if flat.size else 0.0
    if drift > UNIT_CIRCLE_TOL:
        raise OffCircle(f"point off the unit circle by {drift:.3g}")


class BlaschkeProduct:
    """Finite Blaschke-type product determined by a pole multiset."""

    __slots__ = ("poles",)

    def __init__(self, poles: PoleSet):
        if not isinstance(poles, PoleSet):
            poles = PoleSet(poles)
        self.poles = poles

    @property
    def n(self) -> int:
        return self.poles.n

    def __call__(self, z):
        return blaschke_eval(self, z)

    def deriv_modulus_on_circle(self, z):
        return blaschke_deriv_modulus_on_T1(self, z)

    def z_log_derivative(self, z):
        """z B'(z)/B(z) from the factorwise logarithmic derivative.

        Valid anywhere away from poles and from the reflected zeros
        1/conj(a_j); on the unit circle the value is real and equals
        |B'(z)|.
        """
        zs = np.asarray(z, dtype=np.complex128)
        flat = np.atleast_1d(zs)
        acc = np.zeros(flat.shape, dtype=np.complex128)
        for a in self.poles.poles:
            ac = np.conj(a)
            acc += -ac * flat / (1.0 - ac * flat) - flat / (flat - a)
        if np.isscalar(z) or zs.shape == ():
            return complex(acc[0])
        return acc.reshape(zs.shape)


def blaschke_eval(b: BlaschkeProduct, z):
    """Evaluate the product factor by factor; no expansion is formed."""
    zs = np.asarray(z, dtype=np.complex128)
    flat = np.atleast_1d(zs)
    if b.poles.n:
        dist = np.abs(flat[..., None] - b.poles.as_array())
        if dist.size and float(dist.min()) < 1e-12:
            raise NearPole("Blaschke evaluation point within 1e-12 of a pole")
    acc = np.ones(flat.shape, dtype=np.complex128)
    for a in b.poles.poles:
        acc = acc * (1.0 - np.conj(a) * flat) / (flat - a)
    if np.isscalar(z) or zs.shape == ():
        return complex(acc[0])
    return acc.reshape(zs.shape)


def blaschke_deriv_modulus_on_T1(b: BlaschkeProduct, z):
    """|B'(z)| for |z| = 1 via sum_j (|a_j|^2 - 1)/|z - a_j|^2.

    Returns a strictly positive real for a nonempty pole set and 0.0
    for the empty product.  Raises OffCircle when |z| strays from 1 by
    more than 1e-12.
    """
    zs = np.asarray(z, dtype=np.complex128)
    flat = np.atleast_1d(zs)
    _check_on_unit_circle(flat)
    acc = np.zeros(flat.shape, dtype=np.float64)
    for a in b.poles.poles:
        acc += (abs(a) ** 2 - 1.0) / np.abs(flat - a) ** 2
    if np.isscalar(z) or zs.shape == ():
        return float(acc[0])
    return acc.reshape(zs.shape)


def star_transform_deriv_modulus(r: RationalFunction, z):
    """|(r*)'(z)| on the unit circle for r* = B(z) conj(r(1/conj(z))).

    Uses the circle identity |(r*)'(z)| = | |B'(z)| r(z) - z r'(z) |,
    which avoids differentiating the conjugated argument numerically.
    """
    zs = np.asarray(z, dtype=np.complex128)
    flat = np.atleast_1d(zs)
    _check_on_unit_circle(flat)
    b = BlaschkeProduct(r.poles)
    bprime = np.atleast_1d(blaschke_deriv_modulus_on_T1(b, flat))
    vals = np.abs(bprime * np.atleast_1d(rat_eval(r, flat)) - flat * np.atleast_1d(rat_derivative_eval(r, flat)))
    if np.isscalar(z) or zs.shape == ():
        return float(vals[0])
    return vals.reshape(zs.shape)
