"""Career-phase arithmetic: basic pay, dearness allowance, contributions, corpus."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "CareerParams",
    "CareerYear",
    "accumulate_corpus",
    "dearness_allowance",
    "project_basic",
    "yearly_contribution",
]


@dataclass(frozen=True)
class CareerParams:
    """Service-career inputs; rates are fractions (0.10 means 10%)."""

    service_years: int
    basic_start: float
    increment_rate: float
    employee_rate: float
    employer_rate: float

    def __post_init__(self) -> None:
        if self.service_years < 1:
            raise ValueError(f"service_years must be >= 1, got {self.service_years}")
        if not (math.isfinite(self.basic_start) and self.basic_start > 0):
            raise ValueError(f"basic_start must be > 0, got {self.basic_start}")
        for name in ("increment_rate", "employee_rate", "employer_rate"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value >= 0):
                raise ValueError(f"{name} must be finite and >= 0, got {value}")
        if self.employee_rate + self.employer_rate > 1:
            raise ValueError(
                "employee_rate + employer_rate cannot exceed 1, got "
                f"{self.employee_rate} + {self.employer_rate}"
            )

    @property
    def contribution_rate(self) -> float:
        return self.employee_rate + self.employer_rate


@dataclass(frozen=True)
class CareerYear:
    """One accumulation-phase year; log_return is 0.0 in year 1 (no prior year)."""

    year: int
    inflation_pct: float
    basic: float
    da: float
    salary: float
    contribution: float
    log_return: float
    corpus: float


def project_basic(params: CareerParams) -> np.ndarray:
    """Basic pay for years 1..n: basic_start compounded at the fixed increment."""
    # scalar pow keeps values bit-identical to a plain reimplementation
    factor = 1.0 + params.increment_rate
    return np.array(
        [params.basic_start * factor**t for t in range(params.service_years)]
    )


def dearness_allowance(basic, inflation_pct) -> np.ndarray:
    """Inflation supplement: zero in year 1, then prior basic times prior inflation.

    da_t = basic_{t-1} * inflation_pct_{t-1} / 100 for t >= 2.
    """
    basic = np.asarray(basic, dtype=float)
    infl = np.asarray(inflation_pct, dtype=float)
    if basic.shape != infl.shape:
        raise ValueError(
            f"basic and inflation lengths differ: {basic.shape} vs {infl.shape}"
        )
    da = np.empty_like(basic)
    da[0] = 0.0
    da[1:] = basic[:-1] * infl[:-1] / 100.0
    return da


def yearly_contribution(salary: float, params: CareerParams) -> float:
    """Combined employee + employer contribution on one year's salary."""
    return params.contribution_rate * salary


def accumulate_corpus(contributions, log_returns) -> np.ndarray:
    """Corpus recursion with end-of-year contribution timing.

    corpus_1 = c_1; corpus_t = corpus_{t-1} * exp(r_{t-1}) + c_t. The year-t
    contribution arrives at year end and earns nothing in year t.
    """
    c = np.asarray(contributions, dtype=float)
    r = np.asarray(log_returns, dtype=float)
    if c.size == 0:
        raise ValueError("contributions must be non-empty")
    if r.shape != (c.size - 1,):
        raise ValueError(
            f"need {c.size - 1} log-returns for {c.size} contribution years, "
            f"got shape {r.shape}"
        )
    corpus = np.empty_like(c)
    corpus[0] = c[0]
    for t in range(1, c.size):
        # scalar math.exp keeps the recursion bit-identical to a plain
        # spreadsheet-style reimplementation
        corpus[t] = corpus[t - 1] * math.exp(r[t - 1]) + c[t]
    return corpus
