import logging
import os
import tempfile
from pathlib import Path
from typing import Callable, Dict, List, Optional

import numpy as np

from constants import (
    ASYMPTOTIC_FIGURE_ORDERS,
    ASYMPTOTIC_POINTS,
    ASYMPTOTIC_T_MAX_EXP,
    ASYMPTOTIC_T_MIN_EXP,
    CSV_SIG_DIGITS,
    FIG1_ORDERS,
    FIG1_POINTS,
    FIG1_R_MAX,
    FIG1_R_MIN,
    FIG2_ORDERS,
    FIG2_POINTS,
    FIG2_T_MAX,
    FIG9_ORDERS,
    FIG9_POINTS,
    FIG9_T_MAX,
    TABLE1_ABSCISSAE,
    TABLE1_HALF_ORDER,
    TABLE1_SMALL_ORDER,
)
from dielectrics import cole_potential
from errors import DomainError
from mittag_leffler import e_alpha, ml_eval, power_law_tail, rational_approx, stretched_exponential
from models import ColeCircuit, CsvTable, DischargeSolution, Order
from spectra import k_alpha

logger = logging.getLogger(__name__)


def format_value(value: float) -> str:
    return f"{value:.{CSV_SIG_DIGITS - 1}e}"


def render_csv(table: CsvTable) -> str:
    lines = [f"# {comment}" for comment in table.comments]
    lines.append(",".join(table.header))
    lines.extend(",".join(format_value(v) for v in row) for row in table.rows)
    return "\n".join(lines) + "\n"


def parse_csv(text: str) -> CsvTable:
    comments: List[str] = []
    header: Optional[List[str]] = None
    rows: List[List[float]] = []
    for line in text.splitlines():
        if not line.strip():
            continue
        if line.startswith("#"):
            comments.append(line[1:].strip())
        elif header is None:
            header = line.split(",")
        else:
            rows.append([float(field) for field in line.split(",")])
    if header is None:
        raise DomainError("csv text has no header line")
    return CsvTable(header=header, rows=rows, comments=comments)


def write_table(table: CsvTable, out: Optional[str] = None) -> None:
    """Write to ``out`` atomically, or to stdout when ``out`` is None or '-'."""
    text = render_csv(table)
    if out is None or out == "-":
        print(text, end="")
        return

    target = Path(out)
    target.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp_name = tempfile.mkstemp(dir=target.parent, prefix=f".{target.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as handle:
            handle.write(text)
        os.replace(tmp_name, target)
    except BaseException:
        Path(tmp_name).unlink(missing_ok=True)
        raise
    logger.info(f"wrote {len(table.rows)} rows to {target}")


def table1(tol: float = 1e-10) -> CsvTable:
    """E_0.1(-x), its rational approximation and E_0.5(-x) at the tabulated x."""
    small = Order(alpha=TABLE1_SMALL_ORDER)
    half = Order(alpha=TABLE1_HALF_ORDER)
    rows = [
        [x, ml_eval(small, x, tol).value, rational_approx(small, x), ml_eval(half, x, tol).value]
        for x in TABLE1_ABSCISSAE
    ]
    return CsvTable(
        header=["x", f"E_{TABLE1_SMALL_ORDER}(-x)", f"1/(1+x/Gamma({1 + TABLE1_SMALL_ORDER}))", f"E_{TABLE1_HALF_ORDER}(-x)"],
        rows=rows,
        comments=["Mittag-Leffler function against its rational approximation"],
    )


def _spectrum_figure(tol: float) -> CsvTable:
    rs = np.linspace(FIG1_R_MIN, FIG1_R_MAX, FIG1_POINTS)
    orders = [Order(alpha=a) for a in FIG1_ORDERS]
    rows = [[r] + [k_alpha(order, r) for order in orders] for r in rs]
    return CsvTable(
        header=["r"] + [f"K_{a}" for a in FIG1_ORDERS],
        rows=rows,
        comments=["frequency spectrum K_alpha(r)"],
    )


def _relaxation_figure(tol: float) -> CsvTable:
    ts = np.linspace(0.0, FIG2_T_MAX, FIG2_POINTS)
    orders = [Order(alpha=a) for a in FIG2_ORDERS]
    rows = [[t] + [e_alpha(order, t, tol).value for order in orders] for t in ts]
    return CsvTable(
        header=["t"] + [f"e_{a}" for a in FIG2_ORDERS],
        rows=rows,
        comments=["fractional relaxation function e_alpha(t)"],
    )


def _asymptotic_figure(alpha: float) -> Callable[[float], CsvTable]:
    def build(tol: float) -> CsvTable:
        order = Order(alpha=alpha)
        ts = np.logspace(ASYMPTOTIC_T_MIN_EXP, ASYMPTOTIC_T_MAX_EXP, ASYMPTOTIC_POINTS)
        rows = [
            [t, e_alpha(order, t, tol).value, stretched_exponential(order, t), power_law_tail(order, t)]
            for t in ts
        ]
        return CsvTable(
            header=["t", "e_alpha", "e0", "e_inf"],
            rows=rows,
            comments=[f"alpha={alpha}: e_alpha(t) with its short-time and long-time forms"],
        )

    return build


def _cole_figure(tol: float) -> CsvTable:
    ts = np.linspace(0.0, FIG9_T_MAX, FIG9_POINTS)
    circuits = [
        ColeCircuit(
            emf=1.0,
            series_resistance=1.0,
            shunt_resistance=1.0,
            polarization_constant=1.0,
            order=Order(alpha=a),
        )
        for a in FIG9_ORDERS
    ]
    rows = [[t] + [cole_potential(circuit, t, tol) for circuit in circuits] for t in ts]
    return CsvTable(
        header=["t"] + [f"e_P_{a}" for a in FIG9_ORDERS],
        rows=rows,
        comments=["Cole-element potential, E=1, R=r=1, K=1"],
    )


FIGURES: Dict[int, Callable[[float], CsvTable]] = {
    1: _spectrum_figure,
    2: _relaxation_figure,
    **{fig_id: _asymptotic_figure(alpha) for fig_id, alpha in ASYMPTOTIC_FIGURE_ORDERS.items()},
    9: _cole_figure,
}


def figure(fig_id: int, tol: float = 1e-10) -> CsvTable:
    builder = FIGURES.get(fig_id)
    if builder is None:
        raise DomainError(f"unknown figure id {fig_id}; known ids are {sorted(FIGURES)}")
    logger.info(f"generating figure {fig_id}")
    return builder(tol)


def discharge_table(solution: DischargeSolution, comments: List[str]) -> CsvTable:
    return CsvTable(
        header=["t", "U"],
        rows=[[t, u] for t, u in zip(solution.curve.times, solution.curve.values)],
        comments=comments + [f"method={solution.method.value}"],
    )
