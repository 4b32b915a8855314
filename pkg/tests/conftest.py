import math

import mpmath
import pytest

from models import CapacitorModel, Order


@pytest.fixture(scope="session")
def ml_oracle():
    """E_alpha(-x) by brute-force series summation at 60 significant digits."""

    def evaluate(alpha: float, x: float) -> float:
        with mpmath.workdps(60):
            a = mpmath.mpf(alpha)
            z = -mpmath.mpf(x)
            total = mpmath.mpf(0)
            n = 0
            while True:
                term = z ** n / mpmath.gamma(a * n + 1)
                total += term
                if n > 10 and abs(term) < mpmath.mpf(10) ** -40:
                    return float(total)
                n += 1

    return evaluate


@pytest.fixture
def half():
    return Order(alpha=0.5)


@pytest.fixture
def full_charge_model():
    """R = C = beta = U0 = 1, n = 0.9, discharge from full charge."""
    return CapacitorModel(capacitance=1.0, resistance=1.0, beta=1.0, n=0.9, U0=1.0, t0=math.inf)
