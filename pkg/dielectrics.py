"""Imperfect-capacitor discharge/recharge and the Cole-element potential.

A capacitor whose dielectric has the Schweidler after-effect function
phi(t) = beta * t**(-n) obeys

    psi(t) + int_0^t psi(tau) K(t - tau) dtau = f(t),    psi = dU/dt,

with K(u) = lam + (beta / C) u**(p-1), p = 1 - n and lam = 1/(R C). The
solvers below give U(t) through the Mittag-Leffler resolvent, the
closed-form J(t) integral, the Gross approximation or a direct
product-integration solve of the Volterra equation.
"""

import logging
import math
from functools import partial
from typing import List

import numpy as np
from scipy import special
from scipy.integrate import cumulative_trapezoid

from errors import DomainError, SingularSystem, UnsupportedOrder
from mittag_leffler import ml_eval, rational_approx
from models import (
    CapacitorModel,
    ColeCircuit,
    Curve,
    DischargeMethod,
    DischargeSolution,
    Mode,
    Order,
    Resolvent,
    SampledFunction,
    VolterraProblem,
    VolterraSolution,
)
from quadrature import adaptive_quad

logger = logging.getLogger(__name__)


def cole_potential(circuit: ColeCircuit, t: float, tol: float = 1e-10) -> float:
    """Voltage over a Cole element driven through a series resistor.

    e_P(t) = (E R / (R + r)) [1 - E_alpha(-lam t**alpha)],  lam = K (R + r) / (R r)
    """
    if math.isnan(t) or t < 0:
        raise DomainError(f"time must be >= 0, got {t}")
    if t == 0:
        return 0.0
    x = circuit.rate * t ** circuit.order.alpha
    return circuit.plateau * (1.0 - ml_eval(circuit.order, x, tol).value)


def cole_threshold_emf(circuit: ColeCircuit, threshold: float, duration: float, tol: float = 1e-10) -> float:
    """Source EMF for which the Cole potential reaches ``threshold`` after ``duration``."""
    if not (threshold > 0):
        raise DomainError(f"threshold must be > 0, got {threshold}")
    if not (duration > 0):
        raise DomainError(f"pulse duration must be > 0, got {duration}")
    unit = circuit.copy(update={"emf": 1.0})
    return threshold / cole_potential(unit, duration, tol)


def cole_rheobase(circuit: ColeCircuit, threshold: float) -> float:
    """Threshold EMF for an infinitely long pulse."""
    if not (threshold > 0):
        raise DomainError(f"threshold must be > 0, got {threshold}")
    return threshold * (circuit.shunt_resistance + circuit.series_resistance) / circuit.shunt_resistance


def discharge_forcing(model: CapacitorModel, t: float) -> float:
    """Right-hand side f(t) of the psi equation.

    Open terminals (R = inf):  f = -i0(t) / C
    Finite R:                  f = -(U(0) / (R C) + i0(t) / C)

    with i0(t) = delta U0 beta (t + t0)**(-n); t0 = inf gives i0 = 0.
    """
    shifted = t + model.t0
    if math.isnan(shifted) or shifted <= 0:
        raise DomainError(f"forcing needs t + t0 > 0, got {shifted}")
    i0 = int(model.mode) * model.U0 * model.after_effect(shifted)
    if model.open_circuit:
        return -i0 / model.capacitance
    return -(model.initial_voltage * model.lam + i0 / model.capacitance)


def _check_schedule(horizon: float, steps: int) -> np.ndarray:
    if not (0 < horizon < math.inf):
        raise DomainError(f"horizon must be positive and finite, got {horizon}")
    if steps < 1:
        raise DomainError(f"steps must be >= 1, got {steps}")
    return np.linspace(0.0, horizon, steps + 1)


def _require_fractional_p(model: CapacitorModel) -> Order:
    if not (model.p > 0):
        raise DomainError("n = 1 leaves no fractional order (p = 0)")
    return Order.from_exponent_p(model.p)


def resolvent_rate(model: CapacitorModel) -> float:
    """c in the resolvent E_p(-c u**p); c = (beta / C) Gamma(p)."""
    if model.beta == 0:
        return 0.0
    return model.beta / model.capacitance * special.gamma(model.p)


def solve_discharge_ml(
    model: CapacitorModel,
    horizon: float,
    steps: int,
    tol: float = 1e-8,
    resolvent: Resolvent = Resolvent.mittag_leffler,
) -> DischargeSolution:
    """U(t) = U(0) + int_0^t E_p(-c (t - s)**p) f(s) ds on a uniform grid.

    With ``resolvent=rational`` the Mittag-Leffler kernel is replaced by
    1 / (1 + beta u**p / (p C)).
    """
    order = _require_fractional_p(model)
    times = _check_schedule(horizon, steps)
    rate = resolvent_rate(model)
    p = model.p

    def kernel(u: float) -> float:
        if rate == 0 or u <= 0:
            return 1.0
        x = rate * u ** p
        if resolvent == Resolvent.rational:
            return rational_approx(order, x)
        return ml_eval(order, x, 0.1 * tol).value

    start = model.initial_voltage
    values = [start]
    for t in times[1:]:
        convolution, _ = adaptive_quad(
            lambda s, t=t: kernel(t - s) * discharge_forcing(model, s), 0.0, t, tol, limit=500
        )
        values.append(start + convolution)

    logger.info(f"resolvent solution ({resolvent.value}) on {steps} steps up to t={horizon}")
    return DischargeSolution(curve=Curve.from_arrays(times, values), method=DischargeMethod.ml_convolution)


def closed_form_J(model: CapacitorModel, t: float) -> float:
    """J(t) = int_0^t du / (1 + A u**p) for p = 1/m with m even, A = beta / (p C)."""
    p = model.p
    if not (p > 0):
        raise UnsupportedOrder("closed-form J needs p > 0")
    m = round(1.0 / p)
    if abs(1.0 / p - m) > 1e-9 or m % 2:
        raise UnsupportedOrder(f"closed-form J needs 1/p to be an even integer, got 1/p = {1.0 / p}")
    if math.isnan(t) or t < 0:
        raise DomainError(f"time must be >= 0, got {t}")
    if t == 0:
        return 0.0

    a = model.rational_rate
    if a == 0:
        return t
    terms: List[float] = [
        (-1) ** (j + 1) * t ** (1.0 - j * p) / ((m - j) * a ** j) for j in range(1, m)
    ]
    return math.fsum(terms) / p - math.log1p(a * t ** p) / (p * a ** m)


def solve_discharge_closed_form(model: CapacitorModel, horizon: float, steps: int) -> DischargeSolution:
    """U = U0 - (U0 / (R C)) J(t), valid for discharge from full charge."""
    if model.mode != Mode.discharge or not math.isinf(model.t0) or model.open_circuit:
        raise DomainError("the closed form covers discharge through finite R from full charge (t0 = inf)")
    times = _check_schedule(horizon, steps)
    values = [model.U0 - model.U0 * model.lam * closed_form_J(model, t) for t in times]
    return DischargeSolution(curve=Curve.from_arrays(times, values), method=DischargeMethod.closed_form_j)


def gross_approximation(model: CapacitorModel, t: float, tol: float = 1e-10) -> float:
    """U0 exp{(1/U0) int_0^t f(s) / (1 + A s**p) ds}."""
    if model.mode != Mode.discharge:
        raise DomainError("the Gross approximation describes discharge only")
    if model.U0 == 0:
        raise DomainError("the Gross approximation needs U0 != 0")
    if math.isnan(t) or t < 0:
        raise DomainError(f"time must be >= 0, got {t}")
    if t == 0:
        return model.U0

    a = model.rational_rate
    if math.isinf(a):
        raise DomainError("the Gross approximation needs p > 0 when beta > 0")
    p = model.p
    integral, _ = adaptive_quad(lambda s: discharge_forcing(model, s) / (1.0 + a * s ** p), 0.0, t, tol, limit=500)
    return model.U0 * math.exp(integral / model.U0)


def solve_discharge_gross(model: CapacitorModel, horizon: float, steps: int, tol: float = 1e-10) -> DischargeSolution:
    times = _check_schedule(horizon, steps)
    values = [gross_approximation(model, t, tol) for t in times]
    return DischargeSolution(curve=Curve.from_arrays(times, values), method=DischargeMethod.gross_approx)


def _power_moments(exponent: float, a: np.ndarray, b: np.ndarray):
    # int_a^b u**exponent du and int_a^b u**(exponent+1) du
    g1 = (b ** (exponent + 1.0) - a ** (exponent + 1.0)) / (exponent + 1.0)
    g2 = (b ** (exponent + 2.0) - a ** (exponent + 2.0)) / (exponent + 2.0)
    return g1, g2


def _product_trapezoid_weights(problem: VolterraProblem, h: float, steps: int):
    """Weights (A_m, B_m) with int_{mh}^{(m+1)h} K(u) psi(t_i - u) du ~ A_m psi_{i-m} + B_m psi_{i-m-1}."""
    m = np.arange(steps, dtype=float)
    a, b = m * h, (m + 1.0) * h

    weights_a = np.full(steps, 0.5 * h * problem.kernel_lambda)
    weights_b = weights_a.copy()

    rate = problem.singular_coefficient
    if rate > 0:
        g1, g2 = _power_moments(problem.kernel_p - 1.0, a, b)
        weights_a += rate * (b * g1 - g2) / h
        weights_b += rate * (g2 - a * g1) / h
    return weights_a, weights_b


def solve_volterra(problem: VolterraProblem) -> VolterraSolution:
    """Product-trapezoid solve of psi + int_0^t psi K = f, then U by cumulative trapezoid."""
    steps = problem.steps
    h = problem.horizon / steps
    times = np.linspace(0.0, problem.horizon, steps + 1)
    forcing = np.array([problem.forcing(t) for t in times])
    if not np.all(np.isfinite(forcing)):
        raise DomainError("forcing must be finite on the grid, including t = 0")

    weights_a, weights_b = _product_trapezoid_weights(problem, h, steps)
    diagonal = 1.0 + weights_a[0]
    if diagonal <= 0:
        raise SingularSystem(f"implicit step degenerates: 1 + w0 = {diagonal}")

    psi = np.empty(steps + 1)
    psi[0] = forcing[0]
    for i in range(1, steps + 1):
        history = np.dot(weights_a[1:i], psi[i - 1 : 0 : -1]) + np.dot(weights_b[:i], psi[i - 1 :: -1])
        psi[i] = (forcing[i] - history) / diagonal

    voltage = problem.initial_value + cumulative_trapezoid(psi, times, initial=0.0)
    logger.debug(f"volterra solve: {steps} steps, h={h:.3e}, w0={weights_a[0]:.3e}")
    return VolterraSolution(psi=Curve.from_arrays(times, psi), voltage=Curve.from_arrays(times, voltage))


def capacitor_problem(model: CapacitorModel, horizon: float, steps: int) -> VolterraProblem:
    """The Volterra problem for a capacitor model; open terminals keep only the singular kernel."""
    p = model.p
    if not (p > 0):
        raise DomainError("n = 1 leaves no fractional order (p = 0)")
    forcing = SampledFunction(evaluator=partial(discharge_forcing, model))
    if model.open_circuit:
        return VolterraProblem(
            kernel_lambda=0.0,
            kernel_k=0.0,
            kernel_p=p,
            forcing=forcing,
            horizon=horizon,
            steps=steps,
            initial_value=model.initial_voltage,
            singular_rate=model.beta / model.capacitance,
        )
    return VolterraProblem(
        kernel_lambda=model.lam,
        kernel_k=model.k,
        kernel_p=p,
        forcing=forcing,
        horizon=horizon,
        steps=steps,
        initial_value=model.initial_voltage,
    )


def solve_discharge_volterra(model: CapacitorModel, horizon: float, steps: int) -> DischargeSolution:
    solution = solve_volterra(capacitor_problem(model, horizon, steps))
    return DischargeSolution(curve=solution.voltage, method=DischargeMethod.volterra_numeric)
