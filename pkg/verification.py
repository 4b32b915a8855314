"""Property suites run by ``cli verify`` and the /api/verify endpoint."""

import logging
from typing import Callable, Dict, List

import numpy as np

from fracops import laplace_transform, relaxation_function, relaxation_residual
from mittag_leffler import e_alpha, laplace_symbol, ml_bounds
from models import Order, PropertyCheck, ResidualForm
from spectra import h_alpha, k_alpha, normalization, reconstruct_e_alpha

logger = logging.getLogger(__name__)

BOUNDS_ORDERS = [0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9]
BOUNDS_TIMES = np.logspace(-3, 3, 41)
SPECTRUM_ORDERS = [0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9]
SPECTRUM_POINTS = np.logspace(-4, 4, 33)
RECONSTRUCTION_TIMES = [0.1, 1.0, 10.0]
LAPLACE_ORDERS = [0.25, 0.5, 0.75]
LAPLACE_POINTS = [0.5, 1.0, 2.0]
RESIDUAL_ORDERS = [0.25, 0.5, 0.75]
RESIDUAL_TIMES = [0.25, 0.5, 1.0, 2.0, 5.0]


def _check(suite: str, name: str, worst: float, threshold: float) -> PropertyCheck:
    passed = bool(worst <= threshold)
    if not passed:
        logger.warning(f"{suite}.{name} failed: worst={worst:.3e} threshold={threshold:.1e}")
    return PropertyCheck(suite=suite, name=name, passed=passed, worst=worst, threshold=threshold)


def check_bounds() -> List[PropertyCheck]:
    # worst is the largest violation of lower <= e_alpha <= upper (<= 0 means strict)
    worst = -np.inf
    for alpha in BOUNDS_ORDERS:
        order = Order(alpha=alpha)
        for t in BOUNDS_TIMES:
            value = e_alpha(order, t, 1e-12).value
            pair = ml_bounds(order, t)
            worst = max(worst, pair.lower - value, value - pair.upper)
    return [_check("bounds", "sandwich", float(worst), 0.0)]


def check_spectra() -> List[PropertyCheck]:
    negative = 0.0
    scaling = 0.0
    mass = 0.0
    reconstruction = 0.0
    for alpha in SPECTRUM_ORDERS:
        order = Order(alpha=alpha)
        for x in SPECTRUM_POINTS:
            density = k_alpha(order, x)
            negative = max(negative, -density)
            # H_alpha evaluated through the scaling identity against the same closed form
            scaling = max(scaling, abs(h_alpha(order, x) - density) / max(1.0, abs(density)))
        mass = max(mass, abs(normalization(order) - 1.0))
        for t in RECONSTRUCTION_TIMES:
            reconstruction = max(reconstruction, abs(reconstruct_e_alpha(order, t) - e_alpha(order, t, 1e-12).value))
    return [
        _check("spectra", "non-negative", negative, 0.0),
        _check("spectra", "scaling", scaling, 1e-12),
        _check("spectra", "normalization", mass, 1e-6),
        _check("spectra", "reconstruction", reconstruction, 1e-6),
    ]


def check_laplace() -> List[PropertyCheck]:
    worst = 0.0
    for alpha in LAPLACE_ORDERS:
        order = Order(alpha=alpha)
        f = relaxation_function(order)
        for s in LAPLACE_POINTS:
            worst = max(worst, abs(laplace_transform(f, s, 1e-8) - laplace_symbol(order, s)))
    return [_check("laplace", "transform-pair", worst, 1e-5)]


def check_fractional_residuals() -> List[PropertyCheck]:
    caputo = 0.0
    riemann = 0.0
    for alpha in RESIDUAL_ORDERS:
        order = Order(alpha=alpha)
        for t in RESIDUAL_TIMES:
            caputo = max(caputo, abs(relaxation_residual(order, t, ResidualForm.caputo)))
            riemann = max(riemann, abs(relaxation_residual(order, t, ResidualForm.riemann_liouville)))
    return [
        _check("fracres", "caputo", caputo, 1e-4),
        _check("fracres", "riemann-liouville", riemann, 1e-3),
    ]


SUITES: Dict[str, Callable[[], List[PropertyCheck]]] = {
    "bounds": check_bounds,
    "spectra": check_spectra,
    "laplace": check_laplace,
    "fracres": check_fractional_residuals,
}


def run_suite(name: str) -> List[PropertyCheck]:
    if name == "all":
        return [check for suite in SUITES.values() for check in suite()]
    return SUITES[name]()


def report_line(check: PropertyCheck) -> str:
    status = "PASS" if check.passed else "FAIL"
    return f"{status} {check.suite}.{check.name} worst={check.worst:.3e} threshold={check.threshold:.1e}"
