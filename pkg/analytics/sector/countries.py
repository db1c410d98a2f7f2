#!/usr/bin/env python3
"""
National input records for the public/private decomposition.

countries.csv:
    country_id,publications_per_researcher,public_share_percent[,total_researchers,total_publications]
"""

import math
from dataclasses import dataclass
from typing import List, Optional

from core.errors import Issue, SectorError
from analytics.corpus.loader import Source, read_table

COUNTRY_COLUMNS = ["country_id", "publications_per_researcher", "public_share_percent"]
TOTALS_TOLERANCE = 0.005


@dataclass(frozen=True)
class CountryRecord:
    """
    One country's research efficiency inputs.

    Attributes:
        country_id: Country label (e.g. "I", "UK", "EU-25")
        publications_per_researcher: Total PI over all researchers
        public_share: Public researchers as a fraction of all researchers, in (0, 1]
        total_researchers: All researchers, when known
        total_publications: All publications, when known
    """

    country_id: str
    publications_per_researcher: float
    public_share: float
    total_researchers: Optional[int] = None
    total_publications: Optional[int] = None

    def __post_init__(self):
        if not math.isfinite(self.publications_per_researcher) or self.publications_per_researcher < 0:
            raise SectorError(
                f"{self.country_id}: publications_per_researcher must be >= 0, got {self.publications_per_researcher}",
                "INVALID_VALUE",
                self.country_id,
            )
        if not (0 < self.public_share <= 1):
            raise SectorError(
                f"{self.country_id}: public_share must be in (0, 1], got {self.public_share}",
                "INVALID_SHARE",
                self.country_id,
            )
        if self.total_researchers is not None and self.total_researchers <= 0:
            raise SectorError(f"{self.country_id}: total_researchers must be > 0", "INVALID_VALUE", self.country_id)
        if self.total_publications is not None and self.total_publications < 0:
            raise SectorError(f"{self.country_id}: total_publications must be >= 0", "INVALID_VALUE", self.country_id)
        if self.total_researchers is not None and self.total_publications is not None:
            implied = self.total_publications / self.total_researchers
            if abs(implied - self.publications_per_researcher) > TOTALS_TOLERANCE:
                raise SectorError(
                    f"{self.country_id}: {self.total_publications}/{self.total_researchers} = {implied:.4f} "
                    f"does not match publications_per_researcher {self.publications_per_researcher}",
                    "INCONSISTENT_TOTALS",
                    self.country_id,
                )

    @property
    def private_researchers(self) -> Optional[float]:
        if self.total_researchers is None:
            return None
        return self.total_researchers * (1 - self.public_share)


def _optional_int(value: str) -> Optional[int]:
    return int(value) if value != "" else None


def load_countries(source: Source) -> List[CountryRecord]:
    """
    Read countries.csv in file order.

    public_share_percent is a percentage (59 means 0.59).

    Raises:
        SectorError: BAD_COUNTRY_ROW listing every malformed row, or the
            record-level code of the first invalid record
    """
    issues: List[Issue] = []
    records: List[CountryRecord] = []
    seen = set()
    for row, rec in read_table(source, "countries", COUNTRY_COLUMNS, issues):
        country_id = rec["country_id"]
        try:
            pi = float(rec["publications_per_researcher"])
            share = float(rec["public_share_percent"]) / 100.0
            total_researchers = _optional_int(rec.get("total_researchers", ""))
            total_publications = _optional_int(rec.get("total_publications", ""))
        except ValueError as e:
            issues.append(Issue("BAD_NUMBER", str(e), ref_id=country_id, row=row, source="countries"))
            continue
        if country_id in seen:
            issues.append(Issue("DUP_COUNTRY", f"country {country_id!r} listed twice", ref_id=country_id, row=row, source="countries"))
            continue
        seen.add(country_id)
        records.append(CountryRecord(country_id, pi, share, total_researchers, total_publications))

    if issues:
        more = f" (+{len(issues) - 1} more)" if len(issues) > 1 else ""
        raise SectorError(issues[0].describe() + more, "BAD_COUNTRY_ROW", issues)
    return records
