"""Circle and disc means, max modulus, and classical bound checks.

Angular quadrature is the N-point rectangle rule on equispaced nodes, which
is exact for trigonometric polynomials whose frequencies stay below N; the
guard N >= 2 deg + 1 keeps every product frequency of |P|^2 well inside that
range.  Radial integrals use composite Simpson, auto-sized so that r^{2j} is
integrated to about 1e-9 relative error for every j up to the degree.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .polynomial import RealPolynomial, coeff_norm_sq, derivative

TWO_PI = 2.0 * math.pi
_INV_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


class DiscMeasure(Enum):
    """Normalization of the disc average: dr dt / (2 pi) treats the radius as
    uniform; 2 r dr dt / (2 pi) is the uniform (area) measure on the disc."""

    RADIAL = "radial"
    AREA = "area"


@dataclass(frozen=True)
class QuadratureGrid:
    """Angular node count, plus an optional radial node count for disc means.

    radial_node_count = None lets each operation pick its own radial rule;
    an even explicit count is rounded up to the next odd (Simpson needs an
    even number of intervals).
    """

    node_count: int
    radial_node_count: int | None = None

    def __post_init__(self) -> None:
        if self.node_count < 1:
            raise ValueError(f"node_count must be >= 1, got {self.node_count}")
        if self.radial_node_count is not None and self.radial_node_count < 2:
            raise ValueError(
                f"radial_node_count must be >= 2, got {self.radial_node_count}"
            )


@dataclass(frozen=True)
class MaxModulusEstimate:
    """Refined grid maximum of |P| on the unit circle with certified bracket:
    lower_bound <= value <= upper_bound always holds."""

    value: float
    arg_theta: float
    lower_bound: float
    upper_bound: float


def _angles(count: int) -> np.ndarray:
    return TWO_PI * np.arange(count) / count


def _horner_many(coeffs: np.ndarray, z: np.ndarray) -> np.ndarray:
    acc = np.full(np.shape(z), complex(coeffs[-1]))
    for a in coeffs[-2::-1]:
        acc = acc * z + a
    return acc


def _resolve_angular(grid: QuadratureGrid | None, minimum: int, op_name: str) -> int:
    if grid is None:
        return minimum
    if grid.node_count < minimum:
        raise ValueError(
            f"{op_name} needs at least {minimum} angular nodes at this degree, "
            f"got {grid.node_count}"
        )
    return grid.node_count


def _auto_radial_nodes(degree: int) -> int:
    # 110 intervals per degree keeps the Simpson error on r^(2 deg) near 1e-9
    # relative; the count is scale-free in the degree.
    return max(2, 2 * math.ceil(55.0 * degree)) + 1


def _resolve_radial(
    grid: QuadratureGrid | None, degree: int, default_nodes: int | None = None
) -> int:
    if grid is None or grid.radial_node_count is None:
        return default_nodes if default_nodes is not None else _auto_radial_nodes(degree)
    nodes = grid.radial_node_count
    return nodes if nodes % 2 == 1 else nodes + 1


def _simpson_rule(nodes: int) -> tuple[np.ndarray, np.ndarray]:
    """Nodes and weights integrating smooth f over [0, 1] (nodes odd, >= 3)."""
    r = np.linspace(0.0, 1.0, nodes)
    w = np.ones(nodes)
    w[1:-1:2] = 4.0
    w[2:-1:2] = 2.0
    w /= 3.0 * (nodes - 1)
    return r, w


def circle_mean_sq(p: RealPolynomial, grid: QuadratureGrid | None = None) -> float:
    """Mean of |P|^2 over the unit circle by the equispaced rectangle rule.

    Exact up to rounding once N >= 2 deg + 1, and then equal to sum_j a_j^2.
    """
    n = p.degree
    count = _resolve_angular(grid, 2 * n + 1, "circle_mean_sq")
    vals = _horner_many(p.coefficients, np.exp(1j * _angles(count)))
    return float(np.mean(vals.real**2 + vals.imag**2))


def circle_mean_abs(p: RealPolynomial, grid: QuadratureGrid | None = None) -> float:
    """Mean of |P| over the unit circle.

    Not exact for any finite grid (|P| is not a trigonometric polynomial);
    the equispaced rule converges rapidly for these smooth integrands.
    """
    n = p.degree
    count = _resolve_angular(grid, max(2 * n + 1, 64), "circle_mean_abs")
    vals = _horner_many(p.coefficients, np.exp(1j * _angles(count)))
    return float(np.mean(np.abs(vals)))


def disc_mean_sq(
    p: RealPolynomial,
    grid: QuadratureGrid | None = None,
    measure: DiscMeasure = DiscMeasure.RADIAL,
) -> float:
    """Disc mean of |P|^2 by a full tensor rule (Simpson in r, rectangle in t).

    Evaluates |P| pointwise on the polar grid; the closed form
    disc_mean_sq_closed is the independent cross-check, not a shortcut here.
    """
    n = p.degree
    count = _resolve_angular(grid, 2 * n + 1, "disc_mean_sq")
    r, w = _simpson_rule(_resolve_radial(grid, n))
    z = r[:, None] * np.exp(1j * _angles(count))[None, :]
    vals = _horner_many(p.coefficients, z)
    ring_means = np.mean(vals.real**2 + vals.imag**2, axis=1)
    if measure is DiscMeasure.AREA:
        ring_means = 2.0 * r * ring_means
    return float(w @ ring_means)


def disc_mean_sq_closed(
    p: RealPolynomial, measure: DiscMeasure = DiscMeasure.RADIAL
) -> float:
    """Exact disc mean of |P|^2.

    Cross terms vanish by circular symmetry; the surviving radial moments give
    sum_j a_j^2 / (2j + 1) for the radial measure and sum_j a_j^2 / (j + 1)
    for the area measure.
    """
    a_sq = p.coefficients**2
    j = np.arange(a_sq.size)
    denom = 2 * j + 1 if measure is DiscMeasure.RADIAL else j + 1
    return float(np.sum(a_sq / denom))


def _disc_abs_means(
    rows: np.ndarray,
    grid: QuadratureGrid | None,
    measure: DiscMeasure,
) -> np.ndarray:
    """Disc mean of |P| for each coefficient row; shared by the ensemble ops.

    |P| is not polynomial in r, so no monomial-exactness rule applies; a fixed
    65-node Simpson default is plenty next to Monte Carlo noise.
    """
    degree = rows.shape[1] - 1
    count = _resolve_angular(grid, max(2 * degree + 1, 64), "disc_mean_abs")
    r, w = _simpson_rule(_resolve_radial(grid, degree, default_nodes=65))
    circle = np.exp(1j * np.outer(np.arange(degree + 1), _angles(count)))
    out = np.zeros(rows.shape[0])
    powers = np.arange(degree + 1)
    for radius, weight in zip(r, w):
        ring_vals = (rows * radius**powers) @ circle
        ring_mean = np.abs(ring_vals).mean(axis=1)
        if measure is DiscMeasure.AREA:
            weight = weight * 2.0 * radius
        out += weight * ring_mean
    return out


def disc_mean_abs(
    p: RealPolynomial,
    grid: QuadratureGrid | None = None,
    measure: DiscMeasure = DiscMeasure.RADIAL,
) -> float:
    """Disc mean of |P| (Simpson in r, rectangle in t)."""
    return float(_disc_abs_means(p.coefficients[None, :], grid, measure)[0])


def roots_of_unity_average(p: RealPolynomial, z: complex) -> complex:
    """(1/n) sum_{j=0}^{n-1} P(omega^j z) with omega = e^{2 pi i / n}.

    Every power of z except 0 and n averages to zero over the n-th roots of
    unity, so the result equals a_0 + a_n z^n.
    """
    n = p.degree
    if n < 1:
        raise ValueError("roots-of-unity filter needs degree >= 1")
    points = z * np.exp(2j * np.pi * np.arange(n) / n)
    return complex(np.mean(_horner_many(p.coefficients, points)))


def _golden_max(f, lo: float, hi: float, iterations: int = 70) -> tuple[float, float]:
    """Golden-section maximization on [lo, hi], returning the best point seen."""
    best_x, best_f = lo, f(lo)
    f_hi = f(hi)
    if f_hi > best_f:
        best_x, best_f = hi, f_hi
    c = hi - _INV_GOLDEN * (hi - lo)
    d = lo + _INV_GOLDEN * (hi - lo)
    fc, fd = f(c), f(d)
    for _ in range(iterations):
        if fc >= fd:
            hi = d
            d, fd = c, fc
            c = hi - _INV_GOLDEN * (hi - lo)
            fc = f(c)
        else:
            lo = c
            c, fc = d, fd
            d = lo + _INV_GOLDEN * (hi - lo)
            fd = f(d)
        if fc > best_f:
            best_x, best_f = c, fc
        if fd > best_f:
            best_x, best_f = d, fd
    return best_x, best_f


def _refined_circle_max(coeffs: np.ndarray, thetas: np.ndarray) -> tuple[float, float]:
    """Max of |P(e^{it})| over the given angles, polished by golden section
    around the strongest local maxima of the grid values."""
    order = np.argsort(thetas)
    ts = thetas[order]
    vals = np.abs(_horner_many(coeffs, np.exp(1j * ts)))
    peaks = np.nonzero((vals >= np.roll(vals, 1)) & (vals >= np.roll(vals, -1)))[0]
    if peaks.size == 0:
        peaks = np.array([int(np.argmax(vals))])
    top = peaks[np.argsort(vals[peaks])[::-1][:6]]

    reversed_coeffs = coeffs[::-1].tolist()

    def modulus_at(t: float) -> float:
        z = complex(math.cos(t), math.sin(t))
        acc = 0j
        for a in reversed_coeffs:
            acc = acc * z + a
        return abs(acc)

    best_idx = int(np.argmax(vals))
    best_val, best_t = float(vals[best_idx]), float(ts[best_idx])
    m = ts.size
    for i in top:
        left = ts[i - 1] if i > 0 else ts[-1] - TWO_PI
        right = ts[i + 1] if i < m - 1 else ts[0] + TWO_PI
        x, fx = _golden_max(modulus_at, float(left), float(right))
        if fx > best_val:
            best_val, best_t = fx, x
    return best_val, best_t % TWO_PI


def max_modulus(
    p: RealPolynomial, grid: QuadratureGrid | None = None
) -> MaxModulusEstimate:
    """Maximum of |P| over the unit circle, with certified two-sided bracket.

    The angular grid is augmented with the n angles where the roots-of-unity
    filter forces max |P| >= |a_0| + |a_n|, so the estimate can never fall
    below that lower bound; the upper bound is Cauchy-Schwarz,
    sqrt((n + 1) sum_j a_j^2).
    """
    n = p.degree
    a = p.coefficients
    count = _resolve_angular(grid, max(2 * n + 1, 256), "max_modulus")
    thetas = _angles(count)
    if n >= 1:
        phase = 0.0 if a[0] * a[-1] >= 0.0 else math.pi / n
        thetas = np.concatenate([thetas, phase + TWO_PI * np.arange(n) / n])
        lower = abs(float(a[0])) + abs(float(a[-1]))
    else:
        lower = abs(float(a[0]))
    upper = math.sqrt((n + 1) * coeff_norm_sq(p))
    value, theta = _refined_circle_max(a, thetas)
    value = min(max(value, lower), upper)
    return MaxModulusEstimate(value, theta, lower, upper)


def bernstein_ratio(p: RealPolynomial, grid: QuadratureGrid | None = None) -> float:
    """max |P'| / max |P| over the unit circle, both refined from one grid.

    Classically at most deg(P), with equality for c z^n.
    """
    n = p.degree
    if n < 1:
        raise ValueError("bernstein_ratio needs degree >= 1")
    count = _resolve_angular(grid, max(2 * n + 1, 256), "bernstein_ratio")
    thetas = _angles(count)
    denominator, _ = _refined_circle_max(p.coefficients, thetas)
    if denominator == 0.0:
        raise ValueError("bernstein_ratio is undefined for the zero polynomial")
    numerator, _ = _refined_circle_max(derivative(p).coefficients, thetas)
    return numerator / denominator
