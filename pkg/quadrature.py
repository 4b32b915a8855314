import logging
import math
from typing import Callable, Optional, Sequence, Tuple

from scipy import integrate

from constants import QUAD_LIMIT
from errors import QuadratureFailure

logger = logging.getLogger(__name__)


def adaptive_quad(
    func: Callable[[float], float],
    a: float,
    b: float,
    tol: float,
    rel_tol: float = 0.0,
    limit: int = QUAD_LIMIT,
    points: Optional[Sequence[float]] = None,
    weight: Optional[str] = None,
    wvar=None,
) -> Tuple[float, float]:
    """Globally adaptive Gauss-Kronrod quadrature of ``func`` over [a, b].

    Returns ``(value, abserr)``. QUADPACK warnings are tolerated when the
    reported error still meets the requested tolerance; anything else is
    raised as QuadratureFailure.
    """
    kwargs = {}
    if points:
        kwargs["points"] = list(points)
    if weight is not None:
        kwargs["weight"] = weight
        kwargs["wvar"] = wvar

    try:
        result = integrate.quad(func, a, b, epsabs=tol, epsrel=rel_tol, limit=limit, full_output=1, **kwargs)
    except (ValueError, ZeroDivisionError, OverflowError) as e:
        raise QuadratureFailure(f"quadrature on [{a}, {b}] failed: {e}") from e

    value, abserr = result[0], result[1]
    if not (math.isfinite(value) and math.isfinite(abserr)):
        raise QuadratureFailure(f"quadrature on [{a}, {b}] produced a non-finite result")

    target = max(tol, rel_tol * abs(value))
    if len(result) > 3:
        message = result[3]
        if abserr > target:
            logger.debug(f"quadrature on [{a}, {b}] gave up: {message}")
            raise QuadratureFailure(
                f"quadrature on [{a}, {b}] reached abserr={abserr:.3e} > {target:.3e}: {message}"
            )
        logger.debug(f"quadrature warning ignored, abserr={abserr:.3e} within target: {message}")
    return value, abserr
