"""
Indicators module: publication intensity, field normalization and
distribution statistics.

Usage:
    from analytics.indicators import CountingMode, Scope, intensity_table, theta_table

    table = intensity_table(corpus, Scope.DA, CountingMode.FRACTIONAL)
    table.get("U1", "D1").intensity

    for row in theta_table(corpus, da_id="D1"):
        print(row.unit_id, row.theta)
"""
from .intensity import (
    POOLED_UNIT,
    QUALITY_LABEL,
    CountingMode,
    IntensityCell,
    IntensityTable,
    Scope,
    credit_frame,
    intensity_table,
    distinct_pool_table,
    pool_table,
    pooled_sd_table,
)
from .normalization import (
    NormalizedAreaIntensity,
    Normalizer,
    area_normalized_intensity,
    normalized_sd_intensity,
    theta_table,
)
from .quality import quality_ownership_intensity
from .statistics import DistributionStats, describe, fertility_ratio, sd_distribution_stats, variation_coefficient
from .summary import AreaSummary, area_summary

__all__ = [
    "POOLED_UNIT",
    "QUALITY_LABEL",
    "CountingMode",
    "IntensityCell",
    "IntensityTable",
    "Scope",
    "credit_frame",
    "intensity_table",
    "distinct_pool_table",
    "pool_table",
    "pooled_sd_table",
    "NormalizedAreaIntensity",
    "Normalizer",
    "area_normalized_intensity",
    "normalized_sd_intensity",
    "theta_table",
    "quality_ownership_intensity",
    "DistributionStats",
    "describe",
    "fertility_ratio",
    "sd_distribution_stats",
    "variation_coefficient",
    "AreaSummary",
    "area_summary",
]
