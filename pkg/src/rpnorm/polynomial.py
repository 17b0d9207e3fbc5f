"""Real-coefficient polynomials and their squared modulus on circles |z| = r.

The central identity: for P(z) = sum_k a_k z^k with real a_k and z = e^{it},

    |P(e^{it})|^2 = sum_{j,k} a_j a_k cos((j - k) t),

and more generally |P(r e^{it})|^2 = sum_{j,k} a_j a_k r^{j+k} cos((j - k) t).
Both double sums are implemented literally; Horner evaluation of P(z) serves
as the fast path and as an independent cross-check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True, eq=False)
class RealPolynomial:
    """Polynomial a0 + a1 z + ... + an z^n with real coefficients.

    The degree is structural: trailing zero coefficients are kept, so a
    coefficient vector of length n + 1 always represents degree n.
    """

    coefficients: np.ndarray

    def __post_init__(self) -> None:
        coeffs = np.array(self.coefficients, dtype=np.float64, copy=True, ndmin=1)
        if coeffs.ndim != 1 or coeffs.size == 0:
            raise ValueError("need a one-dimensional, non-empty coefficient vector")
        if not np.all(np.isfinite(coeffs)):
            raise ValueError("coefficients must be finite")
        coeffs.flags.writeable = False
        object.__setattr__(self, "coefficients", coeffs)

    @property
    def degree(self) -> int:
        return self.coefficients.size - 1

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RealPolynomial):
            return NotImplemented
        return np.array_equal(self.coefficients, other.coefficients)

    def __repr__(self) -> str:
        return f"RealPolynomial({self.coefficients.tolist()})"


def eval_at(p: RealPolynomial, z: complex) -> complex:
    """Evaluate P(z) by the Horner recurrence."""
    acc = 0j
    for a in p.coefficients[::-1]:
        acc = acc * z + a
    return acc


def modulus_sq_circle(p: RealPolynomial, theta: float) -> float:
    """|P(e^{i theta})|^2 via the cosine double sum.

    Angles are reduced mod 2 pi; tiny negative round-off is clamped to 0 so
    downstream square roots stay valid.
    """
    a = p.coefficients
    t = math.fmod(theta, TWO_PI)
    idx = np.arange(a.size)
    cosines = np.cos((idx[:, None] - idx[None, :]) * t)
    return max(float(a @ cosines @ a), 0.0)


def modulus_sq_radius(p: RealPolynomial, r: float, theta: float) -> float:
    """|P(r e^{i theta})|^2 = sum_{j,k} a_j a_k r^{j+k} cos((j - k) theta).

    Only radii in the closed unit disc are accepted.
    """
    if not 0.0 <= r <= 1.0:
        raise ValueError(f"radius must lie in [0, 1], got {r}")
    a = p.coefficients
    t = math.fmod(theta, TWO_PI)
    idx = np.arange(a.size)
    scaled = a * r**idx  # a_j a_k r^{j+k} factorizes as (a_j r^j)(a_k r^k)
    cosines = np.cos((idx[:, None] - idx[None, :]) * t)
    return max(float(scaled @ cosines @ scaled), 0.0)


def derivative(p: RealPolynomial) -> RealPolynomial:
    """Coefficient vector of P'; a constant maps to the zero constant."""
    a = p.coefficients
    if a.size == 1:
        return RealPolynomial(np.zeros(1))
    return RealPolynomial(a[1:] * np.arange(1, a.size))


def coeff_norm_sq(p: RealPolynomial) -> float:
    """sum_j a_j^2, which equals the mean of |P|^2 over the unit circle."""
    a = p.coefficients
    return float(a @ a)
