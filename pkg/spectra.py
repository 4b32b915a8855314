"""Relaxation spectra of the fractional relaxation function.

The frequency spectrum K_alpha(r) and the relaxation-time spectrum H_alpha(tau)
describe e_alpha(t) = E_alpha(-t**alpha) as a superposition of Debye
exponentials. The Laplace integral of K_alpha is also the evaluation path
used by the Mittag-Leffler dispatcher when neither the series nor the
asymptotic expansion is accurate enough.
"""

import logging
import math
from typing import Tuple

from constants import INTEGRAL_REL_TOL
from errors import DomainError
from models import Order, SpectralDensity, SpectralDomain
from quadrature import adaptive_quad

logger = logging.getLogger(__name__)


def _require_fractional(order: Order) -> None:
    if order.is_exponential:
        raise DomainError("the spectrum degenerates to a Dirac delta at r = 1 when alpha = 1")


def _trig(order: Order) -> Tuple[float, float]:
    theta = order.alpha * math.pi
    return math.cos(theta), math.sin(theta)


def k_alpha(order: Order, r: float) -> float:
    """Frequency spectrum K_alpha(r) for r > 0."""
    _require_fractional(order)
    if not (r > 0):
        raise DomainError(f"spectrum needs r > 0, got {r}")
    if math.isinf(r):
        return 0.0
    cos_t, sin_t = _trig(order)
    ra = r ** order.alpha
    # r**(2a) + 2 r**a cos + 1 written as a sum of squares
    return r ** (order.alpha - 1.0) * sin_t / (math.pi * ((ra + cos_t) ** 2 + sin_t * sin_t))


def h_alpha(order: Order, tau: float) -> float:
    """Relaxation-time spectrum H_alpha(tau) = tau**-2 K_alpha(1/tau)."""
    _require_fractional(order)
    if not (tau > 0) or math.isinf(tau):
        raise DomainError(f"spectrum needs 0 < tau < inf, got {tau}")
    return k_alpha(order, 1.0 / tau) / (tau * tau)


def density(spectrum: SpectralDensity, x: float) -> float:
    if spectrum.domain == SpectralDomain.frequency:
        return k_alpha(spectrum.order, x)
    return h_alpha(spectrum.order, x)


def branch_cut_integral(order: Order, x: float, tol: float) -> Tuple[float, float]:
    """E_alpha(-x) as a single smooth integral over [0, 1].

    With t = x**(1/alpha) the Laplace integral of K_alpha is split at r = 1.
    Substituting r = u**(1/alpha) on (0, 1) and r = u**(-1/alpha) on the tail
    turns both pieces into the same rational weight on [0, 1]:

        e_alpha(t) = sin(a pi)/(a pi) int_0^1
            (exp(-t u**(1/a)) + exp(-t u**(-1/a))) / (u**2 + 2 u cos(a pi) + 1) du

    Returns ``(value, abserr)``.
    """
    _require_fractional(order)
    if x < 0:
        raise DomainError(f"argument must be >= 0, got {x}")

    a = order.alpha
    cos_t, sin_t = _trig(order)
    scale = sin_t / (a * math.pi)
    inv = 1.0 / a
    t = x ** inv

    def integrand(u: float) -> float:
        w = u ** inv
        near = math.exp(-t * w)
        if w > 0.0:
            far = math.exp(-t / w)
        else:
            far = 1.0 if t == 0.0 else 0.0
        return (near + far) / ((u + cos_t) ** 2 + sin_t * sin_t)

    value, abserr = adaptive_quad(integrand, 0.0, 1.0, 0.5 * tol / scale, rel_tol=INTEGRAL_REL_TOL)
    return scale * value, scale * abserr


def reconstruct_e_alpha(order: Order, t: float, tol: float = 1e-10) -> float:
    """int_0^inf exp(-r t) K_alpha(r) dr, computed independently of the dispatcher.

    The integrable r**(alpha-1) singularities at r = 0 and (after r = 1/v) at
    v = 0 are handed to the algebraic-weight QUADPACK rule.
    """
    _require_fractional(order)
    if t < 0:
        raise DomainError(f"time must be >= 0, got {t}")

    a = order.alpha
    cos_t, sin_t = _trig(order)

    def head(r: float) -> float:
        ra = r ** a
        return math.exp(-r * t) * sin_t / (math.pi * ((ra + cos_t) ** 2 + sin_t * sin_t))

    def tail(v: float) -> float:
        if v == 0.0:
            decay = 1.0 if t == 0.0 else 0.0
        else:
            decay = math.exp(-t / v)
        va = v ** a
        return decay * sin_t / (math.pi * ((va + cos_t) ** 2 + sin_t * sin_t))

    near, _ = adaptive_quad(head, 0.0, 1.0, 0.5 * tol, weight="alg", wvar=(a - 1.0, 0.0))
    far, _ = adaptive_quad(tail, 0.0, 1.0, 0.5 * tol, weight="alg", wvar=(a - 1.0, 0.0))
    return near + far


def normalization(order: Order, tol: float = 1e-10) -> float:
    """Total mass of K_alpha; equals 1 for every 0 < alpha < 1."""
    return reconstruct_e_alpha(order, 0.0, tol)
