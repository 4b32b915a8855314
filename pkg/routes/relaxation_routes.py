import logging
import math
from typing import List, Optional

import numpy as np
from fastapi import APIRouter, HTTPException, Query, status
from pydantic import BaseModel, ValidationError

from constants import DEFAULT_TOL
from dielectrics import (
    cole_potential,
    solve_discharge_closed_form,
    solve_discharge_gross,
    solve_discharge_ml,
    solve_discharge_volterra,
)
from errors import DomainError, RelaxationError, UnsupportedOrder
from mittag_leffler import e_alpha, ml_bounds, ml_eval
from models import (
    BoundsPair,
    CapacitorModel,
    ColeCircuit,
    CsvTable,
    DischargeMethod,
    EvalResult,
    Mode,
    Order,
    PropertyCheck,
    Resolvent,
    SpectralDensity,
    SpectralDomain,
)
from spectra import density
from tables import figure, table1
from verification import SUITES, run_suite

logger = logging.getLogger(__name__)

router = APIRouter()


# --- Request / Response Models ---
class SpectrumResponse(BaseModel):
    alpha: float
    domain: SpectralDomain
    point: float
    density: float


class CapacitorRequest(BaseModel):
    capacitance: float = 1.0
    resistance: Optional[float] = 1.0  # None: open terminals
    beta: float = 1.0
    n: float = 0.9
    U0: float = 1.0
    t0: Optional[float] = None  # None: full charge
    mode: str = "discharge"
    method: DischargeMethod = DischargeMethod.ml_convolution
    resolvent: Resolvent = Resolvent.mittag_leffler
    horizon: float = 1.0
    steps: int = 50
    tol: float = 1e-8


class CapacitorConstants(BaseModel):
    k: Optional[float]
    p: float
    lam: float
    A: Optional[float]


class CurveResponse(BaseModel):
    times: List[float]
    values: List[float]


class CapacitorResponse(BaseModel):
    method: DischargeMethod
    constants: CapacitorConstants
    curve: CurveResponse


class ColeRequest(BaseModel):
    emf: float = 1.0
    series_resistance: float = 1.0
    shunt_resistance: float = 1.0
    polarization_constant: float = 1.0
    alpha: float = 0.5
    horizon: float = 10.0
    points: int = 101
    tol: float = 1e-10


# --- Helpers ---
def _finite_or_none(value: float) -> Optional[float]:
    return value if math.isfinite(value) else None


def _raise_http(e: Exception, what: str):
    if isinstance(e, (ValidationError, DomainError, UnsupportedOrder)):
        logger.warning(f"{what}: rejected parameters: {e}")
        raise HTTPException(status_code=status.HTTP_422_UNPROCESSABLE_ENTITY, detail=str(e))
    if isinstance(e, RelaxationError):
        logger.error(f"{what}: {type(e).__name__}: {e}")
        raise HTTPException(status_code=status.HTTP_500_INTERNAL_SERVER_ERROR, detail=f"{type(e).__name__}: {e}")
    logger.error(f"{what}: unexpected failure: {str(e)}", exc_info=True)
    raise HTTPException(status_code=status.HTTP_500_INTERNAL_SERVER_ERROR, detail=f"{what} failed: {str(e)}")


# --- Endpoints ---
@router.get("/ml/eval", response_model=EvalResult)
async def evaluate(
    alpha: float = Query(...),
    x: Optional[float] = Query(None),
    t: Optional[float] = Query(None),
    tol: float = Query(DEFAULT_TOL),
):
    if (x is None) == (t is None):
        raise HTTPException(status_code=400, detail="Give exactly one of x or t")
    try:
        order = Order(alpha=alpha)
        if x is not None:
            return ml_eval(order, x, tol)
        return e_alpha(order, t, tol)
    except Exception as e:
        _raise_http(e, "ml eval")


@router.get("/ml/bounds", response_model=BoundsPair)
async def bounds(alpha: float = Query(...), t: float = Query(...)):
    try:
        return ml_bounds(Order(alpha=alpha), t)
    except Exception as e:
        _raise_http(e, "ml bounds")


@router.get("/spectra/{domain}", response_model=SpectrumResponse)
async def spectrum(domain: SpectralDomain, alpha: float = Query(...), point: float = Query(...)):
    try:
        spectral = SpectralDensity(order=Order(alpha=alpha), domain=domain)
        return SpectrumResponse(alpha=alpha, domain=domain, point=point, density=density(spectral, point))
    except Exception as e:
        _raise_http(e, "spectrum")


@router.get("/tables/table1", response_model=CsvTable)
async def get_table1():
    try:
        return table1()
    except Exception as e:
        _raise_http(e, "table1")


@router.get("/figures/{figure_id}", response_model=CsvTable)
async def get_figure(figure_id: int):
    try:
        return figure(figure_id)
    except DomainError as e:
        logger.warning(f"Unknown figure requested: {figure_id}")
        raise HTTPException(status_code=status.HTTP_404_NOT_FOUND, detail=str(e))
    except Exception as e:
        _raise_http(e, f"figure {figure_id}")


@router.post("/capacitor", response_model=CapacitorResponse)
async def capacitor(request: CapacitorRequest):
    logger.info(f"Capacitor request: method={request.method.value}, steps={request.steps}")
    try:
        if request.mode not in ("discharge", "recharge"):
            raise DomainError(f"mode must be 'discharge' or 'recharge', got {request.mode!r}")
        if request.steps < 2:
            raise DomainError(f"steps must be >= 2, got {request.steps}")
        model = CapacitorModel(
            capacitance=request.capacitance,
            resistance=math.inf if request.resistance is None else request.resistance,
            beta=request.beta,
            n=request.n,
            U0=request.U0,
            t0=math.inf if request.t0 is None else request.t0,
            mode=Mode.discharge if request.mode == "discharge" else Mode.recharge,
        )
        if request.method == DischargeMethod.ml_convolution:
            solution = solve_discharge_ml(model, request.horizon, request.steps, request.tol, request.resolvent)
        elif request.method == DischargeMethod.closed_form_j:
            solution = solve_discharge_closed_form(model, request.horizon, request.steps)
        elif request.method == DischargeMethod.gross_approx:
            solution = solve_discharge_gross(model, request.horizon, request.steps)
        else:
            solution = solve_discharge_volterra(model, request.horizon, request.steps)

        constants = CapacitorConstants(
            k=_finite_or_none(model.k),
            p=model.p,
            lam=model.lam,
            A=_finite_or_none(model.rational_rate),
        )
        return CapacitorResponse(
            method=solution.method,
            constants=constants,
            curve=CurveResponse(times=solution.curve.times, values=solution.curve.values),
        )
    except Exception as e:
        _raise_http(e, "capacitor")


@router.post("/cole/potential", response_model=CurveResponse)
async def cole(request: ColeRequest):
    try:
        if request.points < 2 or not (request.horizon > 0):
            raise DomainError("need points >= 2 and horizon > 0")
        circuit = ColeCircuit(
            emf=request.emf,
            series_resistance=request.series_resistance,
            shunt_resistance=request.shunt_resistance,
            polarization_constant=request.polarization_constant,
            order=Order(alpha=request.alpha),
        )
        times = np.linspace(0.0, request.horizon, request.points).tolist()
        values = [cole_potential(circuit, t, request.tol) for t in times]
        return CurveResponse(times=times, values=values)
    except Exception as e:
        _raise_http(e, "cole potential")


@router.get("/verify/{suite}", response_model=List[PropertyCheck])
async def verify(suite: str):
    if suite != "all" and suite not in SUITES:
        raise HTTPException(status_code=status.HTTP_404_NOT_FOUND, detail=f"Unknown suite {suite!r}")
    try:
        return run_suite(suite)
    except Exception as e:
        _raise_http(e, f"verify {suite}")
