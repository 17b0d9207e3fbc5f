import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from rpnorm.polynomial import (
    RealPolynomial,
    coeff_norm_sq,
    derivative,
    eval_at,
    modulus_sq_circle,
    modulus_sq_radius,
)

finite_coeffs = st.lists(
    st.floats(min_value=-10.0, max_value=10.0, allow_nan=False),
    min_size=1,
    max_size=33,
)
angles = st.floats(min_value=-50.0, max_value=50.0)


def test_rejects_empty_and_nonfinite_coefficients():
    with pytest.raises(ValueError):
        RealPolynomial([])
    with pytest.raises(ValueError):
        RealPolynomial([1.0, float("nan")])
    with pytest.raises(ValueError):
        RealPolynomial([float("inf"), 0.0])


def test_degree_is_structural():
    assert RealPolynomial([3.0]).degree == 0
    assert RealPolynomial([1.0, 0.0, 0.0]).degree == 2


def test_coefficients_are_read_only():
    p = RealPolynomial([1.0, 2.0])
    with pytest.raises(ValueError):
        p.coefficients[0] = 5.0


def test_equality_compares_coefficient_vectors():
    assert RealPolynomial([1, 2]) == RealPolynomial([1.0, 2.0])
    assert RealPolynomial([1, 2]) != RealPolynomial([1, 2, 0])
    assert RealPolynomial([1.0]) != "not a polynomial"


def test_eval_at_simple_points():
    assert eval_at(RealPolynomial([1.0]), 2 + 3j) == 1.0
    assert eval_at(RealPolynomial([1.0, 1.0]), 1.0) == 2.0
    # 1 + 2i + 3i^2 = -2 + 2i
    assert eval_at(RealPolynomial([1.0, 2.0, 3.0]), 1j) == pytest.approx(-2 + 2j)


def test_modulus_sq_circle_known_values():
    assert modulus_sq_circle(RealPolynomial([-3.0]), 1.234) == 9.0
    p = RealPolynomial([1.0, 1.0])
    # |1 + e^{it}|^2 = 2 + 2 cos t
    assert modulus_sq_circle(p, 0.0) == pytest.approx(4.0)
    assert modulus_sq_circle(p, math.pi) == pytest.approx(0.0, abs=1e-12)
    assert modulus_sq_circle(p, 1.0) == pytest.approx(2.0 + 2.0 * math.cos(1.0))


@given(finite_coeffs, angles)
def test_double_sum_matches_direct_evaluation(coeffs, t):
    p = RealPolynomial(coeffs)
    direct = abs(eval_at(p, complex(math.cos(t), math.sin(t)))) ** 2
    allowance = 1e-9 * (1.0 + coeff_norm_sq(p) * (p.degree + 1))
    assert modulus_sq_circle(p, t) == pytest.approx(direct, abs=allowance)


@given(finite_coeffs, angles)
def test_modulus_sq_circle_never_negative(coeffs, t):
    assert modulus_sq_circle(RealPolynomial(coeffs), t) >= 0.0


@given(finite_coeffs, angles, st.floats(min_value=0.0, max_value=1.0))
def test_radial_double_sum_matches_direct_evaluation(coeffs, t, r):
    p = RealPolynomial(coeffs)
    direct = abs(eval_at(p, r * complex(math.cos(t), math.sin(t)))) ** 2
    allowance = 1e-9 * (1.0 + coeff_norm_sq(p) * (p.degree + 1))
    assert modulus_sq_radius(p, r, t) == pytest.approx(direct, abs=allowance)


def test_radial_modulus_known_values():
    assert modulus_sq_radius(RealPolynomial([0.0, 1.0]), 0.5, 0.0) == pytest.approx(0.25)
    p = RealPolynomial([1.0, 1.0])
    assert modulus_sq_radius(p, 0.5, 0.0) == pytest.approx(2.25)
    # r = 1 reduces to the circle case
    assert modulus_sq_radius(p, 1.0, 2.0) == pytest.approx(
        modulus_sq_circle(p, 2.0), rel=1e-12
    )


def test_radius_outside_unit_disc_rejected():
    p = RealPolynomial([1.0])
    for r in (-0.1, 1.0000001, 2.0):
        with pytest.raises(ValueError):
            modulus_sq_radius(p, r, 0.0)


def test_derivative_examples():
    assert derivative(RealPolynomial([5.0])) == RealPolynomial([0.0])
    assert derivative(RealPolynomial([1.0, 2.0, 3.0])) == RealPolynomial([2.0, 6.0])
    assert derivative(RealPolynomial([0, 0, 0, 1])) == RealPolynomial([0.0, 0.0, 3.0])


int_coeffs = st.lists(st.integers(min_value=-256, max_value=256), min_size=1, max_size=16)


@given(int_coeffs, int_coeffs, st.integers(-8, 8), st.integers(-8, 8))
def test_derivative_is_linear(a, b, alpha, beta):
    # integer data keeps every float operation exact, so equality is exact
    size = max(len(a), len(b))
    a = a + [0] * (size - len(a))
    b = b + [0] * (size - len(b))
    combined = RealPolynomial([alpha * x + beta * y for x, y in zip(a, b)])
    expect = alpha * derivative(RealPolynomial(a)).coefficients + beta * derivative(
        RealPolynomial(b)
    ).coefficients
    assert np.array_equal(derivative(combined).coefficients, expect)


def test_coeff_norm_sq_values():
    assert coeff_norm_sq(RealPolynomial([3.0, 4.0])) == 25.0
    assert coeff_norm_sq(RealPolynomial([0.0])) == 0.0
    assert coeff_norm_sq(RealPolynomial([1.0] * 5)) == 5.0
