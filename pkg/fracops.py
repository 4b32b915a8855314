"""Caputo and Riemann-Liouville derivatives of order 0 < mu < 1 and the Laplace transform.

Callables are differentiated in the integrated-by-parts form

    D^mu f(t) = [(f(t) - f(0)) t**-mu + mu int_0^t g(tau) (t - tau)**-mu dtau] / Gamma(1 - mu),
    g(tau) = (f(t) - f(tau)) / (t - tau),

where the kernel is carried exactly by the algebraic-weight rule of QUADPACK
and g stays bounded. Curves use
product integration: f' is interpolated piecewise-linearly between nodes and
integrated exactly against (t - tau)**(-mu), then checked against the
every-other-node subsample.
"""

import logging
import math

import numpy as np
from scipy import special

from constants import DIFF_STEP, LAPLACE_MAX_DOUBLINGS, SLOPE_STEP
from errors import DomainError, GridTooCoarse, TailUnbounded
from mittag_leffler import e_alpha
from models import Curve, FracOrder, Order, ResidualForm, SampledFunction
from quadrature import adaptive_quad

logger = logging.getLogger(__name__)

# series switch for the Filon weight 1 - exp(-x)(1 + x), which cancels for small x
_FILON_SERIES_LIMIT = 1e-2
# nodes this close to t take the endpoint slope instead of a cancelling secant
_ENDPOINT_GAP = 1e-9


def _product_integral(taus: np.ndarray, values: np.ndarray, mu: float) -> float:
    t = taus[-1]
    h = np.diff(taus)
    slopes = np.gradient(values, taus, edge_order=2)
    s = t - taus
    e1, e2 = 1.0 - mu, 2.0 - mu
    s1 = s ** e1
    s2 = s ** e2
    m0 = (s1[:-1] - s1[1:]) / e1
    m1 = s[:-1] * m0 - (s2[:-1] - s2[1:]) / e2

    left, right = slopes[:-1], slopes[1:]
    panels = left * m0 + (right - left) / h * m1
    # f' may be unbounded at 0; the first panel uses the secant slope
    panels[0] = (values[1] - values[0]) / h[0] * m0[0]
    return float(np.sum(panels)) / special.gamma(1.0 - mu)


def _caputo_callable(f: SampledFunction, mu: float, t: float, tol: float) -> float:
    head = f(t)
    # QAWS samples tau = t itself, where g is the one-sided slope of f
    h = SLOPE_STEP * t
    slope = (3.0 * head - 4.0 * f(t - h) + f(t - 2.0 * h)) / (2.0 * h)

    def secant(tau: float) -> float:
        gap = t - tau
        if gap <= _ENDPOINT_GAP * t:
            return slope
        return (head - f(tau)) / gap

    integral, abserr = adaptive_quad(secant, 0.0, t, tol, weight="alg", wvar=(0.0, -mu))
    logger.debug(f"caputo derivative at t={t}, mu={mu}: abserr={abserr:.2e}")
    return ((head - f.initial_value) * t ** (-mu) + mu * integral) / special.gamma(1.0 - mu)


def _caputo_curve(curve: Curve, mu: float, t: float, tol: float) -> float:
    if curve.times[0] != 0.0:
        raise DomainError("sampled functions must start at t = 0")
    if t > curve.times[-1]:
        raise DomainError(f"t={t} lies beyond the last sample {curve.times[-1]}")

    grid = curve.t
    # nodes closer to t than rounding would give a degenerate last panel
    inside = grid < t * (1.0 - 1e-10)
    taus = np.append(grid[inside], t)
    values = np.append(curve.y[inside], curve.at(t))
    if len(taus) < 5:
        raise GridTooCoarse(f"only {len(taus)} samples in [0, {t}]")

    fine = _product_integral(taus, values, mu)
    keep = list(range(0, len(taus) - 1, 2)) + [len(taus) - 1]
    coarse = _product_integral(taus[keep], values[keep], mu)
    if abs(fine - coarse) > tol:
        raise GridTooCoarse(f"sampled grid too coarse at t={t}: halving changes the result by {abs(fine - coarse):.2e}")
    return fine


def caputo_derivative(f: SampledFunction, mu: FracOrder, t: float, tol: float = 1e-6) -> float:
    """(1/Gamma(1-mu)) int_0^t f'(tau) (t - tau)**(-mu) dtau."""
    if not (t > 0):
        raise DomainError(f"derivative needs t > 0, got {t}")
    if f.curve is not None:
        return _caputo_curve(f.curve, mu.mu, t, tol)
    return _caputo_callable(f, mu.mu, t, tol)


def rl_derivative(f: SampledFunction, mu: FracOrder, t: float, tol: float = 1e-6) -> float:
    """Riemann-Liouville derivative via the Caputo one plus f(0+) t**(-mu) / Gamma(1-mu)."""
    caputo = caputo_derivative(f, mu, t, tol)
    return caputo + f.initial_value * t ** (-mu.mu) / special.gamma(1.0 - mu.mu)


def relaxation_function(order: Order, tol: float = 1e-10) -> SampledFunction:
    return SampledFunction(evaluator=lambda t: e_alpha(order, t, tol).value)


def relaxation_residual(order: Order, t: float, form: ResidualForm, tol: float = 1e-6) -> float:
    """Residual of the fractional relaxation equation satisfied by e_alpha.

    caputo:             D_C^alpha e + e
    riemann-liouville:  e' + D_RL^(1-alpha) e
    """
    if order.is_exponential:
        raise DomainError("the fractional relaxation equation needs alpha < 1")
    if not (t > 0):
        raise DomainError(f"residual needs t > 0, got {t}")

    value = e_alpha(order, t, 1e-12).value
    f = relaxation_function(order)
    if form == ResidualForm.caputo:
        return caputo_derivative(f, FracOrder(mu=order.alpha), t, tol) + value

    mu = 1.0 - order.alpha
    h = DIFF_STEP * t
    slope = (e_alpha(order, t + h, 1e-12).value - e_alpha(order, t - h, 1e-12).value) / (2.0 * h)
    return slope + rl_derivative(f, FracOrder(mu=mu), t, tol)


def _filon_curve_transform(curve: Curve, s: float) -> float:
    # exact transform of the piecewise-linear interpolant
    a, b = curve.t[:-1], curve.t[1:]
    ya, yb = curve.y[:-1], curve.y[1:]
    x = s * (b - a)
    decay = np.exp(-s * a)
    psi0 = -np.expm1(-x) / x
    small = x < _FILON_SERIES_LIMIT
    safe = np.where(small, 1.0, x)
    psi1 = np.where(
        small,
        0.5 - x / 3.0 + x * x / 8.0 - x ** 3 / 30.0,
        (1.0 - np.exp(-safe) * (1.0 + safe)) / (safe * safe),
    )
    return float(np.sum(decay * (b - a) * (ya * psi0 + (yb - ya) * psi1)))


def laplace_transform(f: SampledFunction, s: float, tol: float = 1e-8) -> float:
    """int_0^inf exp(-s t) f(t) dt, truncated where the tail falls below tol / 2."""
    if not (s > 0):
        raise DomainError(f"transform variable must be > 0, got {s}")

    if f.curve is not None:
        curve = f.curve
        if curve.times[0] != 0.0:
            raise DomainError("sampled functions must start at t = 0")
        end = curve.times[-1]
        tail = abs(curve.values[-1]) * math.exp(-s * end) / s
        if tail > 0.5 * tol:
            raise TailUnbounded(f"samples end at t={end} with tail bound {tail:.2e} > {0.5 * tol:.1e}")
        return _filon_curve_transform(curve, s)

    horizon = 1.0 / s
    for _ in range(LAPLACE_MAX_DOUBLINGS):
        level = abs(f(horizon))
        if not math.isfinite(level):
            raise TailUnbounded(f"f is not finite at t={horizon}")
        if level * math.exp(-s * horizon) / s <= 0.5 * tol:
            if abs(f(2.0 * horizon)) > level * (1.0 + 1e-9):
                raise TailUnbounded(f"f grows beyond t={horizon}; the tail bound does not hold")
            break
        horizon *= 2.0
    else:
        raise TailUnbounded(f"no truncation point found within {LAPLACE_MAX_DOUBLINGS} doublings")

    logger.debug(f"laplace transform truncated at T={horizon} for s={s}")
    points = [1.0 / s] if 1.0 / s < horizon else None
    value, _ = adaptive_quad(lambda u: math.exp(-s * u) * f(u), 0.0, horizon, 0.5 * tol, limit=500, points=points)
    return value
