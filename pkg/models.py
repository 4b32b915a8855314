import math
from enum import Enum
from typing import Callable, List, Optional

import numpy as np
from pydantic import BaseModel, root_validator, validator


class Method(str, Enum):
    series = "series"
    asymptotic = "asymptotic"
    integral = "integral"
    closed_form = "closed-form"


class SpectralDomain(str, Enum):
    frequency = "frequency"
    relaxation_time = "relaxation-time"


class DischargeMethod(str, Enum):
    ml_convolution = "ml-convolution"
    closed_form_j = "closed-form-J"
    gross_approx = "gross-approx"
    volterra_numeric = "volterra-numeric"


class Resolvent(str, Enum):
    mittag_leffler = "mittag-leffler"
    rational = "rational"


class ResidualForm(str, Enum):
    caputo = "caputo"
    riemann_liouville = "riemann-liouville"


class Mode(int, Enum):
    discharge = 1
    recharge = -1


class Order(BaseModel):
    """Fractional order alpha in (0, 1]; also carries the capacitor's p = 1 - n."""

    alpha: float

    class Config:
        frozen = True

    @validator("alpha")
    def alpha_in_range(cls, v):
        if math.isnan(v) or not (0.0 < v <= 1.0):
            raise ValueError(f"order must satisfy 0 < alpha <= 1, got {v}")
        return v

    @classmethod
    def from_exponent_p(cls, p: float) -> "Order":
        return cls(alpha=p)

    @property
    def is_exponential(self) -> bool:
        return self.alpha == 1.0


class EvalResult(BaseModel):
    value: float
    method: Method
    err_estimate: float

    class Config:
        frozen = True

    @validator("err_estimate")
    def err_non_negative(cls, v):
        if v < 0 or math.isnan(v):
            raise ValueError("error estimate must be >= 0")
        return v


class BoundsPair(BaseModel):
    lower: float
    upper: float

    class Config:
        frozen = True

    @root_validator(skip_on_failure=True)
    def ordered(cls, values):
        if values["lower"] > values["upper"]:
            raise ValueError(f"lower bound {values['lower']} exceeds upper bound {values['upper']}")
        return values


class Curve(BaseModel):
    """A sampled function of time on strictly increasing non-negative abscissae."""

    times: List[float]
    values: List[float]

    class Config:
        frozen = True

    @root_validator(skip_on_failure=True)
    def check_grid(cls, values):
        times, samples = values["times"], values["values"]
        if not times:
            raise ValueError("curve needs at least one sample")
        if len(times) != len(samples):
            raise ValueError(f"{len(times)} abscissae but {len(samples)} values")
        if times[0] < 0:
            raise ValueError("abscissae must be non-negative")
        if any(b <= a for a, b in zip(times, times[1:])):
            raise ValueError("abscissae must be strictly increasing")
        return values

    @classmethod
    def from_arrays(cls, times, values) -> "Curve":
        return cls(times=np.asarray(times, dtype=float).tolist(), values=np.asarray(values, dtype=float).tolist())

    @property
    def t(self) -> np.ndarray:
        return np.asarray(self.times)

    @property
    def y(self) -> np.ndarray:
        return np.asarray(self.values)

    def at(self, t: float) -> float:
        return float(np.interp(t, self.times, self.values))


class SampledFunction(BaseModel):
    """Either a callable of time or a Curve."""

    evaluator: Optional[Callable[[float], float]] = None
    curve: Optional[Curve] = None

    class Config:
        frozen = True
        arbitrary_types_allowed = True

    @root_validator(skip_on_failure=True)
    def exactly_one_source(cls, values):
        if (values.get("evaluator") is None) == (values.get("curve") is None):
            raise ValueError("give exactly one of evaluator or curve")
        return values

    def __call__(self, t: float) -> float:
        if self.evaluator is not None:
            return float(self.evaluator(t))
        return self.curve.at(t)

    @property
    def initial_value(self) -> float:
        if self.curve is not None:
            return self.curve.values[0]
        return float(self.evaluator(0.0))


class FracOrder(BaseModel):
    mu: float

    class Config:
        frozen = True

    @validator("mu")
    def mu_in_range(cls, v):
        if math.isnan(v) or not (0.0 < v < 1.0):
            raise ValueError(f"derivative order must satisfy 0 < mu < 1, got {v}")
        return v


class SpectralDensity(BaseModel):
    order: Order
    domain: SpectralDomain = SpectralDomain.frequency

    class Config:
        frozen = True


class ColeCircuit(BaseModel):
    emf: float
    series_resistance: float
    shunt_resistance: float
    polarization_constant: float
    order: Order

    class Config:
        frozen = True

    @validator("emf", "series_resistance", "shunt_resistance", "polarization_constant")
    def positive(cls, v, field):
        if not (v > 0) or math.isinf(v):
            raise ValueError(f"{field.name} must be a positive finite number")
        return v

    @property
    def rate(self) -> float:
        r, big_r = self.series_resistance, self.shunt_resistance
        return self.polarization_constant * (big_r + r) / (big_r * r)

    @property
    def plateau(self) -> float:
        return self.emf * self.shunt_resistance / (self.shunt_resistance + self.series_resistance)


class CapacitorModel(BaseModel):
    """Imperfect capacitor with a Schweidler after-effect function beta * t**(-n).

    ``resistance`` may be ``inf`` (open terminals) and ``t0`` may be ``inf``
    (full charge, so the recharging current vanishes).
    """

    capacitance: float
    resistance: float
    beta: float
    n: float
    U0: float
    t0: float = math.inf
    mode: Mode = Mode.discharge

    class Config:
        frozen = True

    @validator("capacitance", "resistance")
    def positive(cls, v, field):
        if not (v > 0):
            raise ValueError(f"{field.name} must be > 0")
        return v

    @validator("beta", "t0")
    def non_negative(cls, v, field):
        if not (v >= 0):
            raise ValueError(f"{field.name} must be >= 0")
        return v

    @validator("n")
    def schweidler_exponent(cls, v):
        if not (0.0 <= v <= 1.0):
            raise ValueError(f"schweidler exponent must lie in [0, 1], got {v}")
        return v

    @root_validator(skip_on_failure=True)
    def recharge_needs_short_circuit(cls, values):
        if values["mode"] == Mode.recharge and values["t0"] == 0:
            raise ValueError("recharge needs a short-circuit duration t0 > 0")
        return values

    @property
    def p(self) -> float:
        return 1.0 - self.n

    @property
    def open_circuit(self) -> bool:
        return math.isinf(self.resistance)

    @property
    def k(self) -> float:
        if self.beta == 0:
            return 0.0
        return self.beta * self.resistance

    @property
    def lam(self) -> float:
        return 0.0 if self.open_circuit else 1.0 / (self.resistance * self.capacitance)

    @property
    def rational_rate(self) -> float:
        """A = beta / (p C), the constant of the rational resolvent."""
        if self.beta == 0:
            return 0.0
        if self.p == 0:
            return math.inf
        return self.beta / (self.p * self.capacitance)

    @property
    def initial_voltage(self) -> float:
        return self.U0 if self.mode == Mode.discharge else 0.0

    def after_effect(self, t: float) -> float:
        return self.beta * t ** (-self.n)


class VolterraProblem(BaseModel):
    """psi(t) + int_0^t psi(tau) K(t - tau) dtau = f(t) with K(u) = lam (1 + k u**(p-1)).

    ``singular_rate`` replaces the product lam * k when given; it keeps the
    R -> infinity limit (lam -> 0, lam * k = beta / C) representable.
    """

    kernel_lambda: float
    kernel_k: float
    kernel_p: float
    forcing: SampledFunction
    horizon: float
    steps: int
    initial_value: float = 0.0
    singular_rate: Optional[float] = None

    class Config:
        frozen = True
        arbitrary_types_allowed = True

    @validator("kernel_lambda", "kernel_k")
    def non_negative_finite(cls, v, field):
        if not (0 <= v < math.inf):
            raise ValueError(f"{field.name} must be finite and >= 0")
        return v

    @validator("kernel_p")
    def weakly_singular(cls, v):
        if not (0.0 < v <= 1.0):
            raise ValueError(f"kernel exponent p must lie in (0, 1], got {v}")
        return v

    @validator("horizon")
    def positive_horizon(cls, v):
        if not (0 < v < math.inf):
            raise ValueError("horizon must be positive and finite")
        return v

    @validator("steps")
    def enough_steps(cls, v):
        if v < 2:
            raise ValueError("need at least 2 steps")
        return v

    @validator("singular_rate")
    def singular_rate_non_negative(cls, v):
        if v is not None and not (0 <= v < math.inf):
            raise ValueError("singular_rate must be finite and >= 0")
        return v

    @property
    def singular_coefficient(self) -> float:
        if self.singular_rate is not None:
            return self.singular_rate
        return self.kernel_lambda * self.kernel_k


class VolterraSolution(BaseModel):
    psi: Curve
    voltage: Curve

    class Config:
        frozen = True


class DischargeSolution(BaseModel):
    curve: Curve
    method: DischargeMethod

    class Config:
        frozen = True


class CsvTable(BaseModel):
    header: List[str]
    rows: List[List[float]]
    comments: List[str] = []

    @root_validator(skip_on_failure=True)
    def rectangular(cls, values):
        width = len(values["header"])
        if width == 0:
            raise ValueError("table needs at least one column")
        for i, row in enumerate(values["rows"]):
            if len(row) != width:
                raise ValueError(f"row {i} has {len(row)} fields, header has {width}")
        abscissa = [row[0] for row in values["rows"]]
        if any(b <= a for a, b in zip(abscissa, abscissa[1:])):
            raise ValueError("abscissa column must be strictly increasing")
        return values


class PropertyCheck(BaseModel):
    suite: str
    name: str
    passed: bool
    worst: float
    threshold: float
