import math

import numpy as np
import pytest
from pydantic import ValidationError

from dielectrics import (
    capacitor_problem,
    closed_form_J,
    cole_potential,
    cole_rheobase,
    cole_threshold_emf,
    discharge_forcing,
    gross_approximation,
    resolvent_rate,
    solve_discharge_closed_form,
    solve_discharge_gross,
    solve_discharge_ml,
    solve_discharge_volterra,
    solve_volterra,
)
from errors import DomainError, SingularSystem, UnsupportedOrder
from models import (
    CapacitorModel,
    ColeCircuit,
    DischargeMethod,
    Mode,
    Order,
    Resolvent,
    SampledFunction,
    VolterraProblem,
)
from quadrature import adaptive_quad


def circuit(alpha: float, **overrides) -> ColeCircuit:
    params = dict(emf=1.0, series_resistance=1.0, shunt_resistance=1.0, polarization_constant=1.0)
    params.update(overrides)
    return ColeCircuit(order=Order(alpha=alpha), **params)


def constant(value: float) -> SampledFunction:
    return SampledFunction(evaluator=lambda t: value)


# --- Cole element ---

def test_cole_potential_exponential_order():
    assert cole_potential(circuit(1.0), 1.0) == pytest.approx(0.432332, abs=1e-6)


def test_cole_potential_starts_at_zero():
    assert cole_potential(circuit(0.5), 0.0) == 0.0


def test_cole_potential_plateau():
    c = circuit(0.5, emf=2.0, series_resistance=1.0, shunt_resistance=3.0)
    assert cole_potential(c, 1e8) == pytest.approx(1.5, rel=1e-3)


def test_cole_potential_is_increasing():
    c = circuit(0.25)
    values = [cole_potential(c, t) for t in np.linspace(0.0, 10.0, 21)]
    assert all(b > a for a, b in zip(values, values[1:]))


def test_cole_potential_rejects_negative_time():
    with pytest.raises(DomainError):
        cole_potential(circuit(0.5), -1.0)


def test_cole_threshold_emf_reaches_threshold():
    c = circuit(0.5)
    emf = cole_threshold_emf(c, 0.1, 0.3)
    assert cole_potential(c.copy(update={"emf": emf}), 0.3) == pytest.approx(0.1, rel=1e-9)


def test_strength_duration_curve_falls_to_rheobase():
    c = circuit(0.75)
    durations = [0.01, 0.1, 1.0, 10.0, 1e4]
    emfs = [cole_threshold_emf(c, 0.1, d) for d in durations]
    assert all(b < a for a, b in zip(emfs, emfs[1:]))
    assert emfs[-1] == pytest.approx(cole_rheobase(c, 0.1), rel=1e-2)
    assert cole_rheobase(c, 0.1) == pytest.approx(0.2)


def test_cole_circuit_requires_positive_resistances():
    with pytest.raises(ValidationError):
        circuit(0.5, shunt_resistance=0.0)


# --- Capacitor model ---

def test_capacitor_derived_constants(full_charge_model):
    assert full_charge_model.p == pytest.approx(0.1)
    assert full_charge_model.k == 1.0
    assert full_charge_model.lam == 1.0
    assert full_charge_model.rational_rate == pytest.approx(10.0)
    assert full_charge_model.initial_voltage == 1.0


def test_open_circuit_constants():
    model = CapacitorModel(capacitance=2.0, resistance=math.inf, beta=1.0, n=0.5, U0=1.0, t0=1.0)
    assert model.open_circuit
    assert model.lam == 0.0
    assert math.isinf(model.k)


def test_recharge_needs_short_circuit_time():
    with pytest.raises(ValidationError):
        CapacitorModel(capacitance=1.0, resistance=1.0, beta=1.0, n=0.5, U0=1.0, t0=0.0, mode=Mode.recharge)


def test_resolvent_rate(full_charge_model):
    assert resolvent_rate(full_charge_model) == pytest.approx(math.gamma(0.1))


def test_forcing_open_circuit():
    model = CapacitorModel(capacitance=1.0, resistance=math.inf, beta=1.0, n=0.5, U0=1.0, t0=1.0)
    assert discharge_forcing(model, 3.0) == pytest.approx(-0.5)


def test_forcing_finite_resistance():
    model = CapacitorModel(capacitance=1.0, resistance=1.0, beta=1.0, n=0.9, U0=1.0, t0=1.0)
    assert discharge_forcing(model, 1.0) == pytest.approx(-(1.0 + 2.0 ** -0.9))


def test_forcing_full_charge_has_no_recharging_current(full_charge_model):
    assert discharge_forcing(full_charge_model, 0.0) == pytest.approx(-1.0)


def test_forcing_recharge_reverses_sign():
    model = CapacitorModel(capacitance=1.0, resistance=1.0, beta=1.0, n=0.5, U0=1.0, t0=1.0, mode=Mode.recharge)
    assert discharge_forcing(model, 3.0) == pytest.approx(0.5)


def test_forcing_undefined_at_charging_instant():
    model = CapacitorModel(capacitance=1.0, resistance=1.0, beta=1.0, n=0.5, U0=1.0, t0=0.0)
    with pytest.raises(DomainError):
        discharge_forcing(model, 0.0)


# --- Resolvent solution ---

def test_ml_solution_without_after_effect_integrates_forcing():
    # the resolvent is 1, so U = U(0) + int f with f = -U(0)/(R C)
    model = CapacitorModel(capacitance=1.0, resistance=1.0, beta=0.0, n=0.9, U0=1.0)
    solution = solve_discharge_ml(model, 0.5, 10)
    assert solution.method == DischargeMethod.ml_convolution
    assert solution.curve.values[0] == 1.0
    assert solution.curve.values[-1] == pytest.approx(0.5, abs=1e-9)


def test_ml_solution_full_charge_example(full_charge_model):
    solution = solve_discharge_ml(full_charge_model, 1.0, 2, resolvent=Resolvent.rational)
    j, _ = adaptive_quad(lambda s: 1.0 / (1.0 + 10.0 * s ** 0.1), 0.0, 1.0, 1e-12)
    assert solution.curve.values[-1] == pytest.approx(1.0 - j, abs=1e-7)


def test_ml_solution_open_circuit_full_charge_holds_voltage():
    model = CapacitorModel(capacitance=1.0, resistance=math.inf, beta=1.0, n=0.5, U0=2.0)
    solution = solve_discharge_ml(model, 1.0, 4)
    assert solution.curve.values == pytest.approx([2.0] * 5)


def test_ml_solution_requires_fractional_order():
    model = CapacitorModel(capacitance=1.0, resistance=1.0, beta=1.0, n=1.0, U0=1.0)
    with pytest.raises(DomainError):
        solve_discharge_ml(model, 1.0, 4)


def test_rational_resolvent_close_to_mittag_leffler(full_charge_model):
    exact = solve_discharge_ml(full_charge_model, 1.0, 4)
    rational = solve_discharge_ml(full_charge_model, 1.0, 4, resolvent=Resolvent.rational)
    for u, v in zip(exact.curve.values[1:], rational.curve.values[1:]):
        assert abs(u - v) <= 0.02 * abs(u)


# --- Closed form ---

def test_closed_form_J_example():
    model = CapacitorModel(capacitance=1.0, resistance=1.0, beta=1.0, n=0.5, U0=1.0)
    assert closed_form_J(model, 1.0) == pytest.approx(1.0 - math.log(3.0) / 2.0, abs=1e-12)
    assert closed_form_J(model, 1.0) == pytest.approx(0.450694, abs=1e-6)


def test_closed_form_J_without_after_effect():
    model = CapacitorModel(capacitance=1.0, resistance=1.0, beta=0.0, n=0.5, U0=1.0)
    assert closed_form_J(model, 2.5) == 2.5


def test_closed_form_J_odd_reciprocal_order():
    model = CapacitorModel(capacitance=1.0, resistance=1.0, beta=1.0, n=2.0 / 3.0, U0=1.0)
    with pytest.raises(UnsupportedOrder):
        closed_form_J(model, 1.0)


def test_closed_form_J_matches_quadrature(full_charge_model):
    a, p = full_charge_model.rational_rate, full_charge_model.p
    for t in (0.01, 0.3, 1.0):
        expected, _ = adaptive_quad(lambda u: 1.0 / (1.0 + a * u ** p), 0.0, t, 1e-12)
        assert closed_form_J(full_charge_model, t) == pytest.approx(expected, abs=1e-9)


def test_closed_form_solution_limited_to_full_charge_discharge():
    model = CapacitorModel(capacitance=1.0, resistance=1.0, beta=1.0, n=0.9, U0=1.0, t0=1.0)
    with pytest.raises(DomainError):
        solve_discharge_closed_form(model, 1.0, 4)


# --- Gross approximation ---

def test_gross_without_after_effect_is_exponential():
    model = CapacitorModel(capacitance=1.0, resistance=1.0, beta=0.0, n=0.9, U0=1.0)
    for t in (0.1, 0.5, 1.0):
        assert gross_approximation(model, t) == pytest.approx(math.exp(-t), rel=1e-9)


def test_gross_close_to_rigorous_at_short_times(full_charge_model):
    gross = solve_discharge_gross(full_charge_model, 0.05, 5)
    rigorous = solve_discharge_ml(full_charge_model, 0.05, 5)
    for u, v in zip(gross.curve.values, rigorous.curve.values):
        assert abs(u - v) <= 0.01 * abs(v)


def test_gross_is_discharge_only():
    model = CapacitorModel(capacitance=1.0, resistance=1.0, beta=1.0, n=0.9, U0=1.0, t0=1.0, mode=Mode.recharge)
    with pytest.raises(DomainError):
        gross_approximation(model, 0.5)


# --- Volterra solver ---

def test_volterra_exponential_kernel_second_order():
    errors = []
    for steps in (50, 100, 200):
        problem = VolterraProblem(
            kernel_lambda=1.0, kernel_k=1.0, kernel_p=1.0, forcing=constant(1.0), horizon=1.0, steps=steps
        )
        solution = solve_volterra(problem)
        errors.append(abs(solution.psi.values[-1] - math.exp(-2.0)))
    assert errors[-1] < 1e-4
    assert errors[0] / errors[1] == pytest.approx(4.0, rel=0.2)
    assert errors[1] / errors[2] == pytest.approx(4.0, rel=0.2)


def test_volterra_without_kernel_returns_forcing():
    problem = VolterraProblem(
        kernel_lambda=0.0, kernel_k=0.0, kernel_p=0.5, forcing=SampledFunction(evaluator=math.cos), horizon=2.0, steps=40
    )
    solution = solve_volterra(problem)
    assert solution.psi.values == pytest.approx([math.cos(t) for t in solution.psi.times])


def test_volterra_singular_kernel_agrees_with_resolvent():
    model = CapacitorModel(capacitance=1.0, resistance=math.inf, beta=1.0, n=0.5, U0=1.0, t0=1.0)
    numeric = solve_discharge_volterra(model, 1.0, 4096)
    resolvent = solve_discharge_ml(model, 1.0, 4)
    for t, u in zip(resolvent.curve.times, resolvent.curve.values):
        assert numeric.curve.at(t) == pytest.approx(u, abs=1e-3)


def test_volterra_problem_for_open_circuit_uses_singular_rate():
    model = CapacitorModel(capacitance=2.0, resistance=math.inf, beta=1.0, n=0.5, U0=1.0, t0=1.0)
    problem = capacitor_problem(model, 1.0, 10)
    assert problem.kernel_lambda == 0.0
    assert problem.singular_coefficient == 0.5


def test_volterra_rejects_unbounded_forcing():
    problem = VolterraProblem(
        kernel_lambda=1.0,
        kernel_k=1.0,
        kernel_p=0.5,
        forcing=SampledFunction(evaluator=lambda t: math.inf if t == 0 else 1.0),
        horizon=1.0,
        steps=10,
    )
    with pytest.raises(DomainError):
        solve_volterra(problem)


def test_volterra_singular_system():
    # a negative constant kernel can cancel the implicit diagonal
    problem = VolterraProblem.construct(
        kernel_lambda=-4.0, kernel_k=0.0, kernel_p=1.0, forcing=constant(1.0), horizon=1.0, steps=2, singular_rate=None
    )
    with pytest.raises(SingularSystem):
        solve_volterra(problem)


def test_volterra_problem_validation():
    with pytest.raises(ValidationError):
        VolterraProblem(kernel_lambda=1.0, kernel_k=1.0, kernel_p=0.0, forcing=constant(1.0), horizon=1.0, steps=10)
    with pytest.raises(ValidationError):
        VolterraProblem(kernel_lambda=1.0, kernel_k=1.0, kernel_p=0.5, forcing=constant(1.0), horizon=1.0, steps=1)


# --- Consistency chain at p = 0.1 ---

def test_closed_form_equals_rational_resolvent(full_charge_model):
    closed = solve_discharge_closed_form(full_charge_model, 1.0, 10)
    rational = solve_discharge_ml(full_charge_model, 1.0, 10, resolvent=Resolvent.rational)
    assert closed.curve.values == pytest.approx(rational.curve.values, abs=1e-6)


def test_closed_form_tracks_mittag_leffler_resolvent(full_charge_model):
    closed = solve_discharge_closed_form(full_charge_model, 1.0, 4)
    exact = solve_discharge_ml(full_charge_model, 1.0, 4)
    assert closed.curve.values == pytest.approx(exact.curve.values, abs=2e-3)


def test_resolvent_matches_volterra_singular_limit(full_charge_model):
    exact = solve_discharge_ml(full_charge_model, 1.0, 4)
    # R -> infinity in the kernel with lam * k = beta / C kept, forcing from finite R
    problem = VolterraProblem(
        kernel_lambda=0.0,
        kernel_k=0.0,
        kernel_p=full_charge_model.p,
        forcing=constant(-1.0),
        horizon=1.0,
        steps=4096,
        initial_value=1.0,
        singular_rate=1.0,
    )
    numeric = solve_volterra(problem)
    for t, u in zip(exact.curve.times, exact.curve.values):
        assert numeric.voltage.at(t) == pytest.approx(u, abs=1e-3)


def test_smaller_order_rises_faster():
    values = [cole_potential(circuit(alpha), 0.01) for alpha in (0.25, 0.5, 0.75, 1.0)]
    assert all(b < a for a, b in zip(values, values[1:]))


def test_discharge_is_monotone_and_non_negative(full_charge_model):
    solution = solve_discharge_volterra(full_charge_model, 2.0, 400)
    values = solution.curve.values
    assert values[0] == 1.0
    assert all(b <= a + 1e-9 for a, b in zip(values, values[1:]))
    assert min(values) >= 0.0


def test_recharge_starts_from_zero():
    model = CapacitorModel(capacitance=1.0, resistance=1.0, beta=1.0, n=0.5, U0=1.0, t0=1.0, mode=Mode.recharge)
    solution = solve_discharge_volterra(model, 1.0, 200)
    assert solution.curve.values[0] == 0.0
    assert max(solution.curve.values) > 0.0
