#!/usr/bin/env python3
"""
Descriptive statistics of SD-level intensity distributions within an area.
"""

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from core.errors import IndicatorError
from analytics.indicators.intensity import POOLED_UNIT, IntensityTable, Scope


@dataclass(frozen=True)
class DistributionStats:
    """
    Spread of pooled SD intensities across the n_sds disciplines of an area.

    std_dev is the sample standard deviation (n - 1 divisor); it is 0.0 for
    a single-SD area. fertility_ratio is max / min, None when min is 0.
    """

    da_id: str
    n_sds: int
    min: float
    max: float
    mean: float
    median: float
    std_dev: float
    variation_coeff: float
    fertility_ratio: Optional[float] = None


def variation_coefficient(std_dev: float, mean: float) -> float:
    """std_dev / mean; 0.0 when the mean is 0"""
    return std_dev / mean if mean > 0 else 0.0


def fertility_ratio(max_value: float, min_value: float) -> Optional[float]:
    """How many times more fertile the most fertile SD is than the least"""
    return max_value / min_value if min_value > 0 else None


def describe(values: Sequence[float], da_id: str = "") -> DistributionStats:
    """
    Summary statistics of a set of intensities.

    Raises:
        IndicatorError: EMPTY_AREA when values is empty
    """
    if len(values) == 0:
        raise IndicatorError(f"area {da_id!r} has no SDs", "EMPTY_AREA", da_id)
    arr = np.asarray(values, dtype=float)
    mean = float(np.mean(arr))
    std_dev = float(np.std(arr, ddof=1)) if arr.size > 1 else 0.0
    lo, hi = float(np.min(arr)), float(np.max(arr))
    # keep min <= mean <= max under rounding
    mean = min(max(mean, lo), hi)
    return DistributionStats(
        da_id=da_id,
        n_sds=int(arr.size),
        min=lo,
        max=hi,
        mean=mean,
        median=float(np.median(arr)),
        std_dev=std_dev,
        variation_coeff=variation_coefficient(std_dev, mean),
        fertility_ratio=fertility_ratio(hi, lo),
    )


def sd_distribution_stats(sd_table: IntensityTable, da_id: str) -> DistributionStats:
    """
    Statistics over the pooled SD intensities of one area.

    Args:
        sd_table: SD-scope table pooled over all units (see pooled_sd_table)
        da_id: Area

    Raises:
        IndicatorError: NOT_POOLED for a per-unit or DA-scope table,
            EMPTY_AREA when the area has no SD cells
    """
    if sd_table.scope is not Scope.SD or any(c.unit_id != POOLED_UNIT for c in sd_table.cells):
        raise IndicatorError("expected an SD-scope table pooled over all units", "NOT_POOLED")
    cells = sorted(sd_table.cells_in_area(da_id), key=lambda c: c.scope_id)
    return describe([c.intensity for c in cells], da_id)
