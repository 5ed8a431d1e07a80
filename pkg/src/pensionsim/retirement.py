"""Payout-phase arithmetic: annuity pension, adequacy benchmark, guarantee cost."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

__all__ = [
    "RetirementParams",
    "RetirementYear",
    "annual_pension",
    "evaluate_retirement",
    "pv_support",
    "requirement_series",
    "shortfall_years",
]


@dataclass(frozen=True)
class RetirementParams:
    """Payout-phase inputs; rates are fractions, fraction is the salary share guaranteed."""

    retirement_years: int
    annuity_rate: float
    guarantee_fraction: float
    risk_free_rate: float

    def __post_init__(self) -> None:
        if self.retirement_years < 1:
            raise ValueError(f"retirement_years must be >= 1, got {self.retirement_years}")
        if not (math.isfinite(self.annuity_rate) and self.annuity_rate >= 0):
            raise ValueError(f"annuity_rate must be finite and >= 0, got {self.annuity_rate}")
        if not 0 <= self.guarantee_fraction <= 1:
            raise ValueError(
                f"guarantee_fraction must be within [0, 1], got {self.guarantee_fraction}"
            )
        if not (math.isfinite(self.risk_free_rate) and self.risk_free_rate >= 0):
            raise ValueError(
                f"risk_free_rate must be finite and >= 0, got {self.risk_free_rate}"
            )


@dataclass(frozen=True)
class RetirementYear:
    """One payout year: the benchmark, the fixed pension, and any guarantee top-up."""

    year: int
    inflation_pct: float
    requirement: float
    pension: float
    sufficient: bool
    top_up: float


def annual_pension(final_corpus: float, annuity_rate: float) -> float:
    """Constant yearly pension bought with the final corpus."""
    return final_corpus * annuity_rate


def requirement_series(
    final_salary: float,
    final_year_inflation_pct: float,
    retirement_inflation_pct,
    fraction: float,
) -> np.ndarray:
    """Benchmark income per retirement year.

    Starts at fraction * final_salary stepped up by the last working year's
    inflation; each later year steps the previous requirement up by the
    prior year's inflation.
    """
    infl = np.asarray(retirement_inflation_pct, dtype=float)
    req = np.empty(infl.shape[0])
    if req.shape[0] == 0:
        return req
    req[0] = fraction * final_salary * (1.0 + final_year_inflation_pct / 100.0)
    for k in range(1, req.shape[0]):
        req[k] = req[k - 1] * (1.0 + infl[k - 1] / 100.0)
    return req


def evaluate_retirement(
    pension: float,
    requirements,
    inflation_pct,
    start_year: int = 1,
) -> list[RetirementYear]:
    """Yearly sufficiency check; a tie counts as sufficient and needs no top-up."""
    req = np.asarray(requirements, dtype=float)
    infl = np.asarray(inflation_pct, dtype=float)
    if req.shape != infl.shape:
        raise ValueError(
            f"requirements and inflation lengths differ: {req.shape} vs {infl.shape}"
        )
    rows = []
    for k in range(req.shape[0]):
        need = float(req[k])
        ok = pension >= need
        rows.append(
            RetirementYear(
                year=start_year + k,
                inflation_pct=float(infl[k]),
                requirement=need,
                pension=float(pension),
                sufficient=bool(ok),
                top_up=0.0 if ok else need - pension,
            )
        )
    return rows


def shortfall_years(rows: Sequence[RetirementYear]) -> int:
    """Number of retirement years the pension misses the benchmark."""
    return sum(1 for row in rows if not row.sufficient)


def pv_support(
    rows: Sequence[RetirementYear],
    risk_free_rate: float,
    service_years: int,
) -> float:
    """Year-1 present value of the guarantee top-ups.

    Row k covers calendar year service_years + k; its top-up is paid at year
    end and discounted by (1 + risk_free_rate)^(service_years + k - 1), so a
    payment at the end of year 1 would be undiscounted.
    """
    base = 1.0 + risk_free_rate
    total = 0.0
    for k, row in enumerate(rows, start=1):
        total += row.top_up / base ** (service_years + k - 1)
    return total
