import math

import numpy as np
import pytest

from legendre_approx import functions
from legendre_approx.errors import CapabilityError, DomainError, UnknownFunctionError
from legendre_approx.functions import ENTROPY, EXP, SINE, Parity

SAMPLES = np.linspace(0.1, 0.9, 20)


def five_point_derivative(g, x, h=1e-3):
    return (-g(x + 2 * h) + 8 * g(x + h) - 8 * g(x - h) + g(x - 2 * h)) / (12 * h)


def test_lookup():
    assert functions.builtin("sine") is SINE
    with pytest.raises(UnknownFunctionError):
        functions.builtin("cosine")


def test_entropy_values():
    assert ENTROPY.eval(0.5) == pytest.approx(math.log(2), abs=1e-16)
    assert ENTROPY.eval(0.0) == 0.0
    assert ENTROPY.eval(1.0) == 0.0
    assert ENTROPY.nth_derivative(2, 0.5) == pytest.approx(-4.0, abs=1e-14)
    assert ENTROPY.nth_derivative(1, 0.25) == pytest.approx(math.log(3), abs=1e-15)


def test_entropy_endpoint_derivatives_raise():
    for p in (0.0, 1.0):
        with pytest.raises(DomainError):
            ENTROPY.nth_derivative(1, p)
    with pytest.raises(DomainError):
        ENTROPY.eval(1.5)


def test_sine_and_exp_derivatives():
    assert SINE.nth_derivative(3, 0.5) == pytest.approx((2 * math.pi) ** 3, rel=1e-14)
    assert EXP.nth_derivative(7, 0.25) == pytest.approx(math.exp(0.25), rel=1e-15)


@pytest.mark.parametrize("spec", [SINE, EXP, ENTROPY], ids=lambda s: s.name)
def test_zeroth_derivative_is_function(spec):
    np.testing.assert_array_equal(spec.nth_derivative(0, SAMPLES), spec.eval(SAMPLES))


@pytest.mark.parametrize("spec", [SINE, EXP, ENTROPY], ids=lambda s: s.name)
@pytest.mark.parametrize("n", range(1, 9))
def test_derivatives_match_finite_differences(spec, n):
    exact = spec.nth_derivative(n, SAMPLES)
    fd = five_point_derivative(lambda x: spec.nth_derivative(n - 1, x), SAMPLES)
    scale = np.max(np.abs(exact))
    np.testing.assert_allclose(fd, exact, rtol=1e-6, atol=1e-6 * scale)


@pytest.mark.parametrize("spec", [SINE, EXP, ENTROPY], ids=lambda s: s.name)
def test_declared_parity(spec):
    u = np.linspace(0, 0.5, 101)
    left, right = spec.eval(0.5 - u), spec.eval(0.5 + u)
    if spec.parity is Parity.ODD_ABOUT_MIDPOINT:
        np.testing.assert_allclose(right, -left, atol=1e-12)
    elif spec.parity is Parity.EVEN_ABOUT_MIDPOINT:
        np.testing.assert_allclose(right, left, atol=1e-12)
    else:
        assert not np.allclose(right, left) and not np.allclose(right, -left)


def test_parity_is_relative_to_center():
    assert SINE.parity_about(0.5) is Parity.ODD_ABOUT_MIDPOINT
    assert SINE.parity_about(0.3) is Parity.NONE


@pytest.mark.parametrize("spec", [SINE, EXP], ids=lambda s: s.name)
def test_declared_derivative_bounds(spec):
    K, alpha = spec.derivative_bound
    x = np.linspace(0, 1, 2001)
    for n in range(13):
        assert np.max(np.abs(spec.nth_derivative(n, x))) <= K * alpha**n * (1 + 1e-12)


def test_entropy_has_no_bound():
    assert ENTROPY.derivative_bound is None


def test_polynomial_spec():
    p = functions.polynomial([1.0, -2.0, 3.0])
    assert p.eval(2.0) == 9.0
    assert p.nth_derivative(1, 2.0) == 10.0
    assert p.nth_derivative(4, 2.0) == 0.0


def test_missing_derivatives():
    spec = functions.FunctionSpec("bare", np.cos)
    with pytest.raises(CapabilityError):
        spec.nth_derivative(1, 0.3)
