"""Scenario orchestration: per-path streams, career-to-retirement pipeline, sweeps.

Each path owns the stream whose id equals its index, so any path can be
recomputed in isolation and results never depend on scheduling. The draw
order within a path is part of the output contract: first the n+m annual
inflation values, then the n-1 log-returns, all from that one stream.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .accumulation import CareerParams, CareerYear, accumulate_corpus, dearness_allowance, project_basic
from .retirement import (
    RetirementParams,
    RetirementYear,
    annual_pension,
    evaluate_retirement,
    pv_support,
    requirement_series,
    shortfall_years,
)
from .stochastic import GbmParams, InflationParams, RandomStream, gbm_log_returns, inflation_series

__all__ = [
    "DEFAULTS",
    "METRICS",
    "ConfigError",
    "PathDetail",
    "PathOutcome",
    "Scenario",
    "ScenarioResult",
    "SummaryStats",
    "SweepVariant",
    "baseline_scenario",
    "run_path",
    "run_path_detail",
    "run_scenario",
    "scenario_from_values",
    "scenario_values",
    "summarize",
    "sweep",
    "with_field",
]


class ConfigError(ValueError):
    """Bad scenario configuration: unknown key, unparseable value, or invariant violation."""


# Baseline parameter values; also the complete set of accepted flat keys.
DEFAULTS: dict[str, int | float] = {
    "service_years": 30,
    "retirement_years": 20,
    "basic_start": 100.0,
    "increment_rate": 0.03,
    "employee_rate": 0.10,
    "employer_rate": 0.14,
    "inflation_mean_pct": 4.0,
    "inflation_sd_pct": 1.0,
    "gbm_mu": 0.09,
    "gbm_sigma": 0.05,
    "annuity_rate": 0.07,
    "risk_free_rate": 0.07,
    "guarantee_fraction": 0.5,
    "num_paths": 1000,
    "seed": 42,
}

INT_KEYS = frozenset({"service_years", "retirement_years", "num_paths", "seed"})

METRICS = ("final_corpus", "shortfall_years", "pv_support")


@dataclass(frozen=True)
class Scenario:
    """Complete validated simulation configuration."""

    career: CareerParams
    retirement: RetirementParams
    gbm: GbmParams
    inflation: InflationParams
    num_paths: int = 1000
    master_seed: int = 42

    def __post_init__(self) -> None:
        if self.num_paths < 1:
            raise ValueError(f"num_paths must be >= 1, got {self.num_paths}")
        if not 0 <= self.master_seed < 2**64:
            raise ValueError(
                f"seed must be an unsigned 64-bit integer, got {self.master_seed}"
            )


def _as_int(key: str, value) -> int:
    if isinstance(value, bool) or not isinstance(value, (int, np.integer)):
        raise ConfigError(f"{key} must be an integer, got {value!r}")
    return int(value)


def _as_float(key: str, value) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float, np.floating, np.integer)):
        raise ConfigError(f"{key} must be a number, got {value!r}")
    return float(value)


def scenario_from_values(values: dict[str, object]) -> Scenario:
    """Build a validated Scenario from flat key/value overrides of the defaults."""
    unknown = sorted(set(values) - set(DEFAULTS))
    if unknown:
        raise ConfigError(f"unknown scenario field(s): {', '.join(unknown)}")
    v = dict(DEFAULTS)
    v.update(values)
    coerced: dict[str, int | float] = {
        key: _as_int(key, v[key]) if key in INT_KEYS else _as_float(key, v[key])
        for key in DEFAULTS
    }
    try:
        return Scenario(
            career=CareerParams(
                service_years=coerced["service_years"],
                basic_start=coerced["basic_start"],
                increment_rate=coerced["increment_rate"],
                employee_rate=coerced["employee_rate"],
                employer_rate=coerced["employer_rate"],
            ),
            retirement=RetirementParams(
                retirement_years=coerced["retirement_years"],
                annuity_rate=coerced["annuity_rate"],
                guarantee_fraction=coerced["guarantee_fraction"],
                risk_free_rate=coerced["risk_free_rate"],
            ),
            gbm=GbmParams(mu=coerced["gbm_mu"], sigma=coerced["gbm_sigma"]),
            inflation=InflationParams(
                mean_pct=coerced["inflation_mean_pct"],
                sd_pct=coerced["inflation_sd_pct"],
            ),
            num_paths=coerced["num_paths"],
            master_seed=coerced["seed"],
        )
    except ValueError as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(str(exc)) from exc


def baseline_scenario(**overrides) -> Scenario:
    """The default configuration, optionally overridden by flat keys."""
    return scenario_from_values(overrides)


def scenario_values(scenario: Scenario) -> dict[str, int | float]:
    """Flat key/value view of a Scenario, in canonical key order."""
    career, retire = scenario.career, scenario.retirement
    return {
        "service_years": career.service_years,
        "retirement_years": retire.retirement_years,
        "basic_start": career.basic_start,
        "increment_rate": career.increment_rate,
        "employee_rate": career.employee_rate,
        "employer_rate": career.employer_rate,
        "inflation_mean_pct": scenario.inflation.mean_pct,
        "inflation_sd_pct": scenario.inflation.sd_pct,
        "gbm_mu": scenario.gbm.mu,
        "gbm_sigma": scenario.gbm.sigma,
        "annuity_rate": retire.annuity_rate,
        "risk_free_rate": retire.risk_free_rate,
        "guarantee_fraction": retire.guarantee_fraction,
        "num_paths": scenario.num_paths,
        "seed": scenario.master_seed,
    }


def with_field(scenario: Scenario, key: str, value) -> Scenario:
    """Copy of `scenario` with one flat field replaced."""
    if key not in DEFAULTS:
        raise ConfigError(f"unknown scenario field: {key!r}")
    values = scenario_values(scenario)
    values[key] = value
    return scenario_from_values(values)


@dataclass(frozen=True)
class PathOutcome:
    """Per-path results; pension is final_corpus * annuity_rate by construction."""

    path_index: int
    final_corpus: float
    pension: float
    shortfall_years: int
    pv_support: float


@dataclass(frozen=True)
class PathDetail:
    """Year-by-year tables for one path, plus its outcome."""

    outcome: PathOutcome
    career: tuple[CareerYear, ...]
    retirement: tuple[RetirementYear, ...]


def _simulate(scenario: Scenario, path_index: int):
    """Draw one path's randomness and run the pipeline; returns the arrays."""
    if not 0 <= path_index < scenario.num_paths:
        raise ConfigError(
            f"path_index must be in [0, {scenario.num_paths - 1}], got {path_index}"
        )
    n = scenario.career.service_years
    m = scenario.retirement.retirement_years
    stream = RandomStream(scenario.master_seed, path_index)
    # normative draw order: n+m inflations, then n-1 log-returns
    infl = inflation_series(stream, scenario.inflation, n + m)
    rets = gbm_log_returns(stream, scenario.gbm, n - 1)

    basic = project_basic(scenario.career)
    da = dearness_allowance(basic, infl[:n])
    salary = basic + da
    contributions = scenario.career.contribution_rate * salary
    corpus = accumulate_corpus(contributions, rets)
    pension = annual_pension(float(corpus[-1]), scenario.retirement.annuity_rate)
    reqs = requirement_series(
        float(salary[-1]),
        float(infl[n - 1]),
        infl[n:],
        scenario.retirement.guarantee_fraction,
    )
    rows = evaluate_retirement(pension, reqs, infl[n:], start_year=n + 1)
    return infl, rets, corpus, pension, rows


def _outcome(scenario: Scenario, path_index: int, corpus, pension, rows) -> PathOutcome:
    return PathOutcome(
        path_index=path_index,
        final_corpus=float(corpus[-1]),
        pension=pension,
        shortfall_years=shortfall_years(rows),
        pv_support=pv_support(
            rows, scenario.retirement.risk_free_rate, scenario.career.service_years
        ),
    )


def run_path(scenario: Scenario, path_index: int) -> PathOutcome:
    """Simulate one path; depends only on (master_seed, path_index) and parameters."""
    _, _, corpus, pension, rows = _simulate(scenario, path_index)
    return _outcome(scenario, path_index, corpus, pension, rows)


def run_path_detail(scenario: Scenario, path_index: int) -> PathDetail:
    """Like run_path but keeps the year-by-year career and retirement tables."""
    infl, rets, corpus, pension, rows = _simulate(scenario, path_index)
    n = scenario.career.service_years
    basic = project_basic(scenario.career)
    da = dearness_allowance(basic, infl[:n])
    salary = basic + da
    contributions = scenario.career.contribution_rate * salary
    career = tuple(
        CareerYear(
            year=t + 1,
            inflation_pct=float(infl[t]),
            basic=float(basic[t]),
            da=float(da[t]),
            salary=float(salary[t]),
            contribution=float(contributions[t]),
            log_return=float(rets[t - 1]) if t else 0.0,
            corpus=float(corpus[t]),
        )
        for t in range(n)
    )
    return PathDetail(
        outcome=_outcome(scenario, path_index, corpus, pension, rows),
        career=career,
        retirement=tuple(rows),
    )


QUANTILE_LABELS = ("p5", "p25", "p50", "p75", "p95")
_QUANTILE_LEVELS = (0.05, 0.25, 0.50, 0.75, 0.95)


@dataclass(frozen=True)
class SummaryStats:
    """Cross-path summary of one metric."""

    count: int
    mean: float
    sd: float
    min: float
    max: float
    quantiles: dict[str, float]
    bin_edges: tuple[float, ...]
    bin_counts: tuple[int, ...]


def summarize(values, bin_count: int = 30) -> SummaryStats:
    """Moments, linear-interpolation quantiles, and an equal-width histogram.

    The sd uses the n-1 divisor and is 0.0 for a single value. Histogram
    bins span [min, max] and are right-open except the last, which is
    closed so the maximum lands in the final bin.
    """
    arr = np.asarray(values, dtype=float).ravel()
    if arr.size == 0:
        raise ValueError("summarize needs at least one value")
    if bin_count < 1:
        raise ValueError(f"bin_count must be >= 1, got {bin_count}")
    counts, edges = np.histogram(arr, bins=bin_count)
    qs = np.quantile(arr, _QUANTILE_LEVELS)
    return SummaryStats(
        count=int(arr.size),
        mean=float(arr.mean()),
        sd=float(arr.std(ddof=1)) if arr.size > 1 else 0.0,
        min=float(arr.min()),
        max=float(arr.max()),
        quantiles={label: float(q) for label, q in zip(QUANTILE_LABELS, qs)},
        bin_edges=tuple(float(e) for e in edges),
        bin_counts=tuple(int(c) for c in counts),
    )


@dataclass(frozen=True)
class ScenarioResult:
    """All path outcomes plus per-metric summaries, in path-index order."""

    scenario: Scenario
    outcomes: tuple[PathOutcome, ...]
    final_corpus: SummaryStats
    shortfall_years: SummaryStats
    pv_support: SummaryStats

    def metric(self, name: str) -> SummaryStats:
        if name not in METRICS:
            raise KeyError(f"unknown metric {name!r}; expected one of {METRICS}")
        return getattr(self, name)


def run_scenario(scenario: Scenario, max_workers: int | None = None) -> ScenarioResult:
    """Run every path and aggregate in index order.

    The result is independent of max_workers: paths own disjoint streams
    and outcomes are collected by index, not completion order.
    """
    indices = range(scenario.num_paths)
    if max_workers is not None and max_workers > 1:
        with ThreadPoolExecutor(max_workers=max_workers) as pool:
            outcomes = tuple(pool.map(lambda i: run_path(scenario, i), indices))
    else:
        outcomes = tuple(run_path(scenario, i) for i in indices)
    return ScenarioResult(
        scenario=scenario,
        outcomes=outcomes,
        final_corpus=summarize([o.final_corpus for o in outcomes]),
        shortfall_years=summarize([o.shortfall_years for o in outcomes]),
        pv_support=summarize([o.pv_support for o in outcomes]),
    )


@dataclass(frozen=True)
class SweepVariant:
    """One sweep cell: the override label, its scenario, and its result."""

    label: str
    scenario: Scenario
    result: ScenarioResult


def sweep(
    base: Scenario,
    overrides,
    max_workers: int | None = None,
) -> list[SweepVariant]:
    """Run one variant per (field, value) pair, in the given order.

    Every variant keeps the base master_seed, so variants share random
    streams path-by-path (common random numbers) and differences reflect
    the parameter change alone.
    """
    variants = []
    for key, value in overrides:
        scenario = with_field(base, key, value)
        variants.append(
            SweepVariant(
                label=f"{key}={value}",
                scenario=scenario,
                result=run_scenario(scenario, max_workers=max_workers),
            )
        )
    return variants
