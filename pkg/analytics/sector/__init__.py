"""
Sector module: public/private decomposition of national publication intensity.

Usage:
    from analytics.sector import load_countries, sector_comparison_table

    records = load_countries("countries.csv")
    rows = sector_comparison_table(records, "I", reference_public_pi=0.82)
    [(r.country_id, r.public_intensity, r.rank_public) for r in rows]
"""
from .countries import CountryRecord, load_countries
from .decomposition import (
    SectorResult,
    calibrate_private_intensity,
    implied_private_intensity,
    public_sector_intensity,
    sector_comparison_table,
)

__all__ = [
    "CountryRecord",
    "load_countries",
    "SectorResult",
    "calibrate_private_intensity",
    "implied_private_intensity",
    "public_sector_intensity",
    "sector_comparison_table",
]
