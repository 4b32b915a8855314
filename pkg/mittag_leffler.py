"""Evaluation of E_alpha(-x) and the fractional relaxation function e_alpha(t).

Four evaluation paths are exposed: the power series (small x), the
algebraic asymptotic expansion (large x), the branch-cut integral of the
frequency spectrum (any x) and the closed forms at alpha in {1, 1/2, 0+}.
``ml_eval`` dispatches between them and never returns a value whose error
estimate exceeds the requested tolerance.
"""

import logging
import math
from typing import List, Optional

from scipy import special

from constants import (
    DEFAULT_TOL,
    MACHINE_EPS,
    MAX_ASYMPTOTIC_TERMS,
    MAX_SERIES_TERMS,
    SERIES_MAX_X,
    ZERO_ORDER_LIMIT,
)
from errors import (
    AccuracyUnreachable,
    CatastrophicCancellation,
    DivergentRegime,
    DomainError,
    QuadratureFailure,
)
from models import BoundsPair, EvalResult, Method, Order
from spectra import branch_cut_integral

logger = logging.getLogger(__name__)


def _check_argument(x: float) -> None:
    if math.isnan(x) or x < 0:
        raise DomainError(f"argument must be >= 0, got {x}")


def _check_tol(tol: float) -> None:
    if not (tol > 0):
        raise DomainError(f"tolerance must be > 0, got {tol}")


def ml_series(order: Order, x: float, tol: float = DEFAULT_TOL) -> EvalResult:
    """sum_n (-x)**n / Gamma(alpha n + 1), truncated once terms fall below tol."""
    _check_argument(x)
    _check_tol(tol)
    if x == 0:
        return EvalResult(value=1.0, method=Method.series, err_estimate=0.0)
    if math.isinf(x):
        raise CatastrophicCancellation("the power series cannot be summed at x = inf")

    a = order.alpha
    log_x = math.log(x)
    terms: List[float] = [1.0]
    rounding = 0.0
    previous = 1.0

    for n in range(1, MAX_SERIES_TERMS + 1):
        log_gamma = special.gammaln(a * n + 1.0)
        log_mag = n * log_x - log_gamma
        magnitude = math.exp(min(log_mag, 700.0))
        if magnitude < 0.5 * tol and magnitude < previous:
            value = math.fsum(terms)
            err = magnitude + rounding + MACHINE_EPS * abs(value)
            logger.debug(f"series converged after {n} terms, alpha={a}, x={x}")
            return EvalResult(value=value, method=Method.series, err_estimate=err)
        # each term carries the absolute error of its exponent as relative error
        rounding += magnitude * MACHINE_EPS * (2.0 * abs(n * log_x) + abs(log_gamma) + 2.0)
        if rounding > 0.5 * tol:
            raise CatastrophicCancellation(
                f"series terms reach {magnitude:.3e} at x={x}, alpha={a}; "
                f"rounding alone exceeds tol={tol:.1e}"
            )
        terms.append(-magnitude if n % 2 else magnitude)
        previous = magnitude

    raise CatastrophicCancellation(f"series did not settle within {MAX_SERIES_TERMS} terms at x={x}")


def _asymptotic_envelope(a: float, n: int, log_x: float) -> float:
    # |1/Gamma(1 - a n)| = Gamma(a n) |sin(pi a n)| / pi <= Gamma(a n) / pi
    return math.exp(special.gammaln(a * n) - n * log_x) / math.pi


def _asymptotic_tail(a: float, n: int, log_x: float) -> float:
    """Envelope sum from term n down to the smallest term of the expansion."""
    total = 0.0
    previous = math.inf
    for k in range(n, n + MAX_ASYMPTOTIC_TERMS):
        envelope = _asymptotic_envelope(a, k, log_x)
        if envelope >= previous:
            break
        total += envelope
        if envelope <= MACHINE_EPS * total:
            break
        previous = envelope
    return total


def _exponential_remainder(a: float, log_x: float) -> float:
    """Bound on the pair exp(x**(1/a) e^(+-i pi/a)) / a left out of the algebraic sum.

    The pair belongs to the expansion only for a > 2/3, where it decays
    like exp(x**(1/a) cos(pi/a)).
    """
    if a <= 2.0 / 3.0 or log_x / a > 700.0:
        return 0.0
    return 2.0 / a * math.exp(math.exp(log_x / a) * math.cos(math.pi / a))


def ml_asymptotic(order: Order, x: float, n_terms: int = MAX_ASYMPTOTIC_TERMS) -> EvalResult:
    """sum_{n>=1} (-1)**(n-1) x**-n / Gamma(1 - alpha n) with optimal truncation.

    Terms where alpha n is a positive integer vanish exactly. Summation stops
    at ``n_terms``, when the term envelope starts to grow, or when it drops
    below the rounding level of the partial sum. For alpha > 2/3 the error
    estimate also covers the exponentially small pair the algebraic sum
    leaves out.
    """
    _check_argument(x)
    if x == 0:
        raise DomainError("the asymptotic expansion needs x > 0")
    if order.is_exponential:
        raise DomainError("E_1(-x) = exp(-x) has no algebraic expansion")
    if n_terms < 1:
        raise DomainError(f"n_terms must be >= 1, got {n_terms}")

    a = order.alpha
    log_x = math.log(x)
    first = 1.0 / (x * special.gamma(1.0 - a))
    if abs(first) > 1.0:
        raise DivergentRegime(f"leading asymptotic term {first:.3e} exceeds 1 at x={x}, alpha={a}")

    terms: List[float] = []
    rounding = 0.0
    previous_env = math.inf
    n = 1
    while n <= n_terms:
        envelope = _asymptotic_envelope(a, n, log_x)
        if envelope >= previous_env or (terms and envelope < MACHINE_EPS * abs(math.fsum(terms))):
            break
        z = a * n
        if math.isclose(z, round(z), rel_tol=0.0, abs_tol=1e-12):
            term = 0.0
        else:
            log_gamma = special.gammaln(1.0 - z)
            term = special.gammasgn(1.0 - z) * math.exp(-n * log_x - log_gamma)
            if n % 2 == 0:
                term = -term
            rounding += abs(term) * MACHINE_EPS * (2.0 * abs(n * log_x) + abs(log_gamma) + 2.0)
        terms.append(term)
        previous_env = envelope
        n += 1

    value = math.fsum(terms)
    err = _asymptotic_tail(a, n, log_x) + _exponential_remainder(a, log_x) + rounding
    logger.debug(f"asymptotic sum used {len(terms)} terms, alpha={a}, x={x}")
    return EvalResult(value=value, method=Method.asymptotic, err_estimate=err)



def ml_integral(order: Order, x: float, tol: float = DEFAULT_TOL) -> EvalResult:
    _check_argument(x)
    _check_tol(tol)
    if order.is_exponential:
        raise DomainError("the spectral integral needs alpha < 1")
    value, abserr = branch_cut_integral(order, x, tol)
    return EvalResult(value=value, method=Method.integral, err_estimate=abserr)


def ml_closed_form(order: Order, x: float) -> Optional[EvalResult]:
    """Exact special cases, or None when alpha has no closed form."""
    _check_argument(x)
    a = order.alpha
    if a == 1.0:
        return EvalResult(value=math.exp(-x), method=Method.closed_form, err_estimate=0.0)
    if a == 0.5:
        value = float(special.erfcx(x))
        return EvalResult(value=value, method=Method.closed_form, err_estimate=4.0 * MACHINE_EPS * value)
    if a < ZERO_ORDER_LIMIT and x < 1.0:
        return EvalResult(value=1.0 / (1.0 + x), method=Method.closed_form, err_estimate=a)
    return None


def ml_eval(order: Order, x: float, tol: float = DEFAULT_TOL) -> EvalResult:
    """E_alpha(-x) to within ``tol`` using the cheapest path that meets it."""
    _check_argument(x)
    _check_tol(tol)

    closed = ml_closed_form(order, x)
    if closed is not None and closed.err_estimate <= tol:
        return closed

    tried = []
    if x <= SERIES_MAX_X:
        try:
            result = ml_series(order, x, tol)
            if result.err_estimate <= tol:
                return result
            tried.append(f"series err={result.err_estimate:.2e}")
        except CatastrophicCancellation as e:
            tried.append(f"series: {e}")

    if not order.is_exponential and x > 0:
        try:
            result = ml_asymptotic(order, x)
            if result.err_estimate <= tol:
                return result
            tried.append(f"asymptotic err={result.err_estimate:.2e}")
        except DivergentRegime as e:
            tried.append(f"asymptotic: {e}")

        try:
            result = ml_integral(order, x, tol)
            if result.err_estimate <= tol:
                return result
            tried.append(f"integral err={result.err_estimate:.2e}")
        except QuadratureFailure as e:
            logger.info(f"spectral integral failed at alpha={order.alpha}, x={x}: {e}")
            tried.append(f"integral: {e}")

    if x > SERIES_MAX_X:
        try:
            result = ml_series(order, x, tol)
            if result.err_estimate <= tol:
                return result
        except CatastrophicCancellation as e:
            tried.append(f"series: {e}")

    raise AccuracyUnreachable(f"no path reached tol={tol:.1e} at alpha={order.alpha}, x={x}; " + "; ".join(tried))


def e_alpha(order: Order, t: float, tol: float = DEFAULT_TOL) -> EvalResult:
    """Fractional relaxation function e_alpha(t) = E_alpha(-t**alpha)."""
    if math.isnan(t) or t < 0:
        raise DomainError(f"time must be >= 0, got {t}")
    if order.is_exponential:
        return EvalResult(value=math.exp(-t), method=Method.closed_form, err_estimate=0.0)
    return ml_eval(order, t ** order.alpha, tol)


def stretched_exponential(order: Order, t: float) -> float:
    """Short-time approximation exp(-t**alpha / Gamma(1 + alpha))."""
    if t < 0:
        raise DomainError(f"time must be >= 0, got {t}")
    return math.exp(-(t ** order.alpha) / special.gamma(1.0 + order.alpha))


def power_law_tail(order: Order, t: float) -> float:
    """Long-time approximation t**-alpha / Gamma(1 - alpha)."""
    if order.is_exponential:
        raise DomainError("the power-law tail vanishes identically at alpha = 1")
    if not (t > 0):
        raise DomainError(f"time must be > 0, got {t}")
    return t ** (-order.alpha) / special.gamma(1.0 - order.alpha)


def rational_approx(order: Order, x: float) -> float:
    """1 / (1 + x / Gamma(1 + p)), the rational stand-in for E_p(-x)."""
    _check_argument(x)
    return 1.0 / (1.0 + x / special.gamma(1.0 + order.alpha))


def ml_bounds(order: Order, t: float) -> BoundsPair:
    """Rational lower and upper bounds enclosing e_alpha(t) for 0 < alpha < 1."""
    if order.is_exponential:
        raise DomainError("the rational bounds need alpha < 1")
    if t < 0:
        raise DomainError(f"time must be >= 0, got {t}")
    ta = t ** order.alpha
    lower = 1.0 / (1.0 + ta * special.gamma(1.0 - order.alpha))
    upper = 1.0 / (1.0 + ta / special.gamma(1.0 + order.alpha))
    return BoundsPair(lower=lower, upper=upper)


def laplace_symbol(order: Order, s: float) -> float:
    """Laplace transform of e_alpha: s**(alpha-1) / (s**alpha + 1)."""
    if not (s > 0):
        raise DomainError(f"transform variable must be > 0, got {s}")
    return s ** (order.alpha - 1.0) / (s ** order.alpha + 1.0)


def small_time_expansion(order: Order, t: float) -> float:
    if t < 0:
        raise DomainError(f"time must be >= 0, got {t}")
    return 1.0 - t ** order.alpha / special.gamma(1.0 + order.alpha)
