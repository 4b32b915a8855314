import math

import numpy as np
import pytest
from pydantic import ValidationError
from scipy import special

from errors import DomainError, GridTooCoarse, TailUnbounded
from fracops import (
    caputo_derivative,
    laplace_transform,
    relaxation_function,
    relaxation_residual,
    rl_derivative,
)
from mittag_leffler import laplace_symbol
from models import Curve, FracOrder, Order, ResidualForm, SampledFunction


def linear(t):
    return t


def test_frac_order_range():
    for mu in (0.0, 1.0, -0.2):
        with pytest.raises(ValidationError):
            FracOrder(mu=mu)


def test_caputo_of_linear_function():
    value = caputo_derivative(SampledFunction(evaluator=linear), FracOrder(mu=0.5), 1.0)
    assert value == pytest.approx(1 / special.gamma(1.5), abs=1e-6)
    assert value == pytest.approx(1.128379, abs=1e-6)


def test_caputo_of_constant_vanishes():
    value = caputo_derivative(SampledFunction(evaluator=lambda t: 3.0), FracOrder(mu=0.3), 2.0)
    assert value == pytest.approx(0.0, abs=1e-12)


def test_caputo_of_quadratic():
    mu = 0.4
    t = 1.5
    value = caputo_derivative(SampledFunction(evaluator=lambda s: s * s), FracOrder(mu=mu), t)
    assert value == pytest.approx(2 * t ** (2 - mu) / special.gamma(3 - mu), abs=1e-6)


def test_caputo_rejects_origin():
    with pytest.raises(DomainError):
        caputo_derivative(SampledFunction(evaluator=linear), FracOrder(mu=0.5), 0.0)


def test_riemann_liouville_of_constant():
    value = rl_derivative(SampledFunction(evaluator=lambda t: 1.0), FracOrder(mu=0.5), 1.0)
    assert value == pytest.approx(1 / math.sqrt(math.pi), abs=1e-6)
    assert value == pytest.approx(0.5641896, abs=1e-6)


def test_caputo_on_sampled_curve():
    times = np.linspace(0.0, 2.0, 2001)
    curve = Curve.from_arrays(times, times ** 2)
    value = caputo_derivative(SampledFunction(curve=curve), FracOrder(mu=0.5), 1.0, tol=1e-5)
    assert value == pytest.approx(2 / special.gamma(2.5), abs=1e-5)


def test_caputo_on_coarse_curve_is_refused():
    times = np.linspace(0.0, 1.0, 6)
    curve = Curve.from_arrays(times, np.sqrt(times))
    with pytest.raises(GridTooCoarse):
        caputo_derivative(SampledFunction(curve=curve), FracOrder(mu=0.5), 1.0, tol=1e-9)


def test_curve_must_start_at_origin():
    curve = Curve.from_arrays([0.5, 1.0, 1.5, 2.0, 2.5, 3.0], [1, 2, 3, 4, 5, 6])
    with pytest.raises(DomainError):
        caputo_derivative(SampledFunction(curve=curve), FracOrder(mu=0.5), 2.0)


@pytest.mark.parametrize("t", [0.25, 0.5, 1.0, 2.0, 5.0])
@pytest.mark.parametrize("alpha", [0.25, 0.5, 0.75])
def test_relaxation_function_solves_caputo_equation(alpha, t):
    assert abs(relaxation_residual(Order(alpha=alpha), t, ResidualForm.caputo)) < 1e-4


@pytest.mark.parametrize("t", [0.25, 0.5, 1.0, 2.0, 5.0])
@pytest.mark.parametrize("alpha", [0.25, 0.5, 0.75])
def test_relaxation_function_solves_riemann_liouville_equation(alpha, t):
    assert abs(relaxation_residual(Order(alpha=alpha), t, ResidualForm.riemann_liouville)) < 1e-3


def test_derivatives_of_half_order_relaxation_function(half):
    f = relaxation_function(half)
    mu = FracOrder(mu=0.5)
    assert caputo_derivative(f, mu, 1.0) == pytest.approx(-0.427584, abs=1e-4)
    assert rl_derivative(f, mu, 1.0) == pytest.approx(0.136606, abs=1e-4)


def test_caputo_tends_to_increment_as_order_vanishes():
    t = 2.0
    value = caputo_derivative(SampledFunction(evaluator=math.cos), FracOrder(mu=1e-3), t)
    assert value == pytest.approx(math.cos(t) - 1.0, rel=1e-2)


def test_laplace_transform_of_constant():
    assert laplace_transform(SampledFunction(evaluator=lambda t: 1.0), 2.0, tol=1e-10) == pytest.approx(0.5, abs=1e-9)


def test_laplace_transform_of_exponential():
    f = SampledFunction(evaluator=lambda t: math.exp(-t))
    assert laplace_transform(f, 1.0) == pytest.approx(0.5, abs=1e-8)


@pytest.mark.parametrize("alpha,s", [(0.25, 0.5), (0.5, 1.0), (0.75, 2.0)])
def test_laplace_transform_pair(alpha, s):
    order = Order(alpha=alpha)
    value = laplace_transform(relaxation_function(order), s, tol=1e-8)
    assert value == pytest.approx(laplace_symbol(order, s), abs=1e-5)


def test_tauberian_limits():
    order = Order(alpha=0.5)
    f = relaxation_function(order)
    big = 1e3
    transform = laplace_transform(f, big, tol=1e-10)
    assert abs(transform - (1 / big - big ** (-1.5))) <= 1.5 * big ** (-2.0)
    small = 1e-2
    transform = laplace_transform(f, small, tol=1e-6)
    assert abs(transform - small ** (-0.5)) <= 1.5


def test_laplace_transform_of_curve():
    times = np.linspace(0.0, 40.0, 4001)
    curve = Curve.from_arrays(times, np.exp(-times))
    value = laplace_transform(SampledFunction(curve=curve), 1.0, tol=1e-8)
    assert value == pytest.approx(0.5, abs=1e-5)


def test_laplace_transform_of_growing_function():
    with pytest.raises(TailUnbounded):
        laplace_transform(SampledFunction(evaluator=lambda t: math.exp(t)), 2.0)


def test_laplace_transform_of_short_curve():
    times = np.linspace(0.0, 1.0, 11)
    curve = Curve.from_arrays(times, np.ones_like(times))
    with pytest.raises(TailUnbounded):
        laplace_transform(SampledFunction(curve=curve), 1.0)
