"""Seeded random streams for market returns and salary inflation.

Reproducibility contract: a stream is fully determined by the pair
(master_seed, stream_id), independent of execution order, thread count,
or platform. Streams are built on the Philox 4x64-10 counter-based
generator; stream k is the master-keyed generator jumped ahead k * 2**128
states, so distinct ids can never overlap. Normal variates come from the
inverse CDF applied to 53-bit uniforms, exactly one uniform per variate,
which keeps the stream position a pure function of how many variates
have been requested.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import ndtri

__all__ = [
    "GbmParams",
    "InflationParams",
    "RandomStream",
    "draw_standard_normal",
    "gbm_log_returns",
    "inflation_series",
]

_SEED_LIMIT = 2**64
# smallest nonzero value Generator.random() can produce; exact zeros are
# clamped to it so the inverse CDF stays finite
_UNIFORM_FLOOR = 2.0**-53


class RandomStream:
    """A single-owner draw sequence identified by (master_seed, stream_id)."""

    def __init__(self, master_seed: int, stream_id: int) -> None:
        if not 0 <= master_seed < _SEED_LIMIT:
            raise ValueError(
                f"master_seed must be an unsigned 64-bit integer, got {master_seed}"
            )
        if stream_id < 0:
            raise ValueError(f"stream_id must be >= 0, got {stream_id}")
        self.master_seed = int(master_seed)
        self.stream_id = int(stream_id)
        bitgen = np.random.Philox(key=self.master_seed)
        if self.stream_id:
            bitgen = bitgen.jumped(self.stream_id)
        self._gen = np.random.Generator(bitgen)

    def __repr__(self) -> str:
        return f"RandomStream(master_seed={self.master_seed}, stream_id={self.stream_id})"

    def standard_normal(self, count: int) -> np.ndarray:
        """Draw `count` N(0, 1) variates, consuming exactly one uniform each."""
        if count < 0:
            raise ValueError(f"count must be >= 0, got {count}")
        u = self._gen.random(count)
        return ndtri(np.maximum(u, _UNIFORM_FLOOR))


def draw_standard_normal(stream: RandomStream) -> float:
    """One standard-normal variate; advances the stream by a single draw."""
    return float(stream.standard_normal(1)[0])


@dataclass(frozen=True)
class GbmParams:
    """Geometric Brownian motion with annual steps: drift mu, volatility sigma."""

    mu: float
    sigma: float

    def __post_init__(self) -> None:
        if not math.isfinite(self.mu):
            raise ValueError(f"mu must be finite, got {self.mu}")
        if not (math.isfinite(self.sigma) and self.sigma >= 0):
            raise ValueError(f"sigma must be finite and >= 0, got {self.sigma}")


@dataclass(frozen=True)
class InflationParams:
    """Gaussian annual inflation in percent (mean_pct, sd_pct)."""

    mean_pct: float
    sd_pct: float

    def __post_init__(self) -> None:
        if not math.isfinite(self.mean_pct):
            raise ValueError(f"mean_pct must be finite, got {self.mean_pct}")
        if not (math.isfinite(self.sd_pct) and self.sd_pct >= 0):
            raise ValueError(f"sd_pct must be finite and >= 0, got {self.sd_pct}")


def gbm_log_returns(stream: RandomStream, params: GbmParams, count: int) -> np.ndarray:
    """Annual log-returns r = (mu - sigma^2/2) + sigma * z with z ~ N(0, 1).

    The one-year growth factor is exp(r). The stream advances by `count`
    draws even when sigma == 0, so downstream draws stay aligned across
    parameter variants.
    """
    z = stream.standard_normal(count)
    return (params.mu - 0.5 * params.sigma**2) + params.sigma * z


def inflation_series(stream: RandomStream, params: InflationParams, count: int) -> np.ndarray:
    """Annual inflation percentages, mean_pct + sd_pct * z; not truncated.

    Negative values are possible and deliberate: the model treats deflation
    years as valid draws.
    """
    z = stream.standard_normal(count)
    return params.mean_pct + params.sd_pct * z
