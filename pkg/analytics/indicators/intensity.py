#!/usr/bin/env python3
"""
Publication intensity (publications per researcher) at SD and DA level.

Counting modes decide how much of a publication each unit is credited with:

    whole             1 for every unit with at least one author on it
    fractional        authors from the unit / all authors
    quality_weighted  fractional share x (1 + citations) / (1 + mean citations of the SD)

quality_weighted is a substitute quality/ownership indicator, not a
reproduction of any published composite indicator.
"""

import logging
import math
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import Dict, List, Optional, Tuple

import pandas as pd

from analytics.corpus.model import Corpus

logger = logging.getLogger(__name__)

POOLED_UNIT = "*"
QUALITY_LABEL = "substitute quality/ownership indicator"


class Scope(Enum):
    """Aggregation level of an intensity table."""

    SD = "sd"
    DA = "da"

    @property
    def column(self) -> str:
        return f"{self.value}_id"


class CountingMode(Enum):
    """How publications are credited to units."""

    WHOLE = "whole"
    FRACTIONAL = "fractional"
    QUALITY_WEIGHTED = "quality_weighted"

    @property
    def label(self) -> str:
        if self is CountingMode.QUALITY_WEIGHTED:
            return QUALITY_LABEL
        return f"publication intensity ({self.value} counting)"


@dataclass(frozen=True)
class IntensityCell:
    """
    Intensity of one unit in one SD or DA.

    intensity == publication_count / researcher_count, researcher_count > 0.
    """

    unit_id: str
    scope_id: str
    da_id: str
    researcher_count: int
    publication_count: float
    intensity: float


@dataclass(frozen=True)
class IntensityTable:
    """Per-(unit, scope) intensity cells for one counting mode and period."""

    scope: Scope
    counting_mode: CountingMode
    cells: Tuple[IntensityCell, ...]
    period: Optional[Tuple[int, int]] = None

    @cached_property
    def _index(self) -> Dict[Tuple[str, str], IntensityCell]:
        return {(c.unit_id, c.scope_id): c for c in self.cells}

    def get(self, unit_id: str, scope_id: str) -> Optional[IntensityCell]:
        return self._index.get((unit_id, scope_id))

    def scope_ids(self) -> List[str]:
        return sorted({c.scope_id for c in self.cells})

    def cells_for(self, scope_id: str) -> List[IntensityCell]:
        return [c for c in self.cells if c.scope_id == scope_id]

    def cells_in_area(self, da_id: str) -> List[IntensityCell]:
        return [c for c in self.cells if c.da_id == da_id]

    def values(self, scope_id: str) -> Dict[str, float]:
        """unit_id -> intensity for one scope"""
        return {c.unit_id: c.intensity for c in self.cells_for(scope_id)}


# =============================================================================
# Credits
# =============================================================================


def credit_frame(corpus: Corpus, counting_mode: CountingMode = CountingMode.WHOLE) -> pd.DataFrame:
    """
    Credit each unit receives for each publication it co-authored.

    Args:
        corpus: Validated corpus
        counting_mode: Crediting rule

    Returns:
        DataFrame with columns pub_id, unit_id, sd_id, da_id, credit
    """
    columns = ["pub_id", "unit_id", "sd_id", "da_id", "credit"]
    authors = corpus.authorship_frame
    if authors.empty:
        return pd.DataFrame(columns=columns)

    pubs = corpus.publication_frame
    per_unit = (
        authors.groupby(["pub_id", "unit_id"], sort=True)
        .size()
        .rename("unit_authors")
        .reset_index()
    )
    merged = per_unit.merge(pubs, on="pub_id", how="inner")

    if counting_mode is CountingMode.WHOLE:
        merged["credit"] = 1.0
    else:
        share = merged["unit_authors"] / merged["n_authors"]
        if counting_mode is CountingMode.FRACTIONAL:
            merged["credit"] = share
        else:
            mean_citations = pubs.groupby("sd_id")["citations"].mean()
            weight = (1.0 + merged["citations"]) / (1.0 + merged["sd_id"].map(mean_citations))
            merged["credit"] = weight * share

    return merged[columns]


# =============================================================================
# Tables
# =============================================================================


def intensity_table(
    corpus: Corpus,
    scope: Scope = Scope.DA,
    counting_mode: CountingMode = CountingMode.WHOLE,
) -> IntensityTable:
    """
    Publication intensity of every unit in every SD or DA where it has staff.

    Args:
        corpus: Validated corpus
        scope: Scope.SD or Scope.DA
        counting_mode: Crediting rule (default whole counting)

    Returns:
        IntensityTable sorted by (unit_id, scope_id); cells without staff
        are omitted
    """
    key = scope.column
    if corpus.staff_frame.empty:
        return IntensityTable(scope, counting_mode, (), corpus.period)

    staff = corpus.staff_frame.groupby(["unit_id", key]).size().rename("researcher_count")
    table = staff.to_frame()
    credits = credit_frame(corpus, counting_mode)
    if credits.empty:
        table["publication_count"] = 0.0
    else:
        published = credits.groupby(["unit_id", key])["credit"].sum().rename("publication_count")
        dropped = published[~published.index.isin(staff.index)]
        if len(dropped):
            logger.warning(
                "Dropped %.3f publication credits from %d unstaffed (unit, %s) cells",
                float(dropped.sum()), len(dropped), scope.value,
            )
        table = table.join(published, how="left")
        table["publication_count"] = table["publication_count"].fillna(0.0)
    table = table.reset_index().sort_values(["unit_id", key])

    sd_to_da = corpus.taxonomy.sd_to_da
    cells = []
    for unit_id, scope_id, n_staff, n_pubs in table[["unit_id", key, "researcher_count", "publication_count"]].itertuples(index=False):
        n_staff = int(n_staff)
        n_pubs = float(n_pubs)
        cells.append(
            IntensityCell(
                unit_id=unit_id,
                scope_id=scope_id,
                da_id=scope_id if scope is Scope.DA else sd_to_da[scope_id],
                researcher_count=n_staff,
                publication_count=n_pubs,
                intensity=n_pubs / n_staff,
            )
        )
    return IntensityTable(scope, counting_mode, tuple(cells), corpus.period)


def pool_table(table: IntensityTable) -> IntensityTable:
    """
    Pool a per-unit table over all units: one cell per scope id.

    pooled intensity = sum of unit credits / sum of unit staff
    """
    groups: Dict[str, List[IntensityCell]] = {}
    for cell in table.cells:
        groups.setdefault(cell.scope_id, []).append(cell)

    cells = []
    for scope_id in sorted(groups):
        members = groups[scope_id]
        n_staff = sum(c.researcher_count for c in members)
        n_pubs = math.fsum(c.publication_count for c in members)
        cells.append(
            IntensityCell(POOLED_UNIT, scope_id, members[0].da_id, n_staff, n_pubs, n_pubs / n_staff)
        )
    return IntensityTable(table.scope, table.counting_mode, tuple(cells), table.period)


def pooled_sd_table(corpus: Corpus, counting_mode: CountingMode = CountingMode.WHOLE) -> IntensityTable:
    """SD-level intensity pooled over all units (the normalization baseline)"""
    return pool_table(intensity_table(corpus, Scope.SD, counting_mode))


def distinct_pool_table(
    corpus: Corpus,
    scope: Scope = Scope.DA,
    counting_mode: CountingMode = CountingMode.WHOLE,
) -> IntensityTable:
    """
    Pooled intensity per scope id counting each publication once.

    Under whole counting a publication co-authored by several units adds 1,
    not 1 per unit; fractional and quality credits already add up per
    publication and are summed. Only credits of staffed (unit, scope) cells
    count, as in intensity_table.

    Returns:
        IntensityTable with one POOLED_UNIT cell per scope id with staff
    """
    key = scope.column
    if corpus.staff_frame.empty:
        return IntensityTable(scope, counting_mode, (), corpus.period)

    staffed = corpus.staff_frame.groupby(["unit_id", key]).size()
    staff = corpus.staff_frame.groupby(key).size()
    published = pd.Series(dtype=float)
    credits = credit_frame(corpus, counting_mode)
    if not credits.empty:
        credits = credits[credits.set_index(["unit_id", key]).index.isin(staffed.index)]
        if counting_mode is CountingMode.WHOLE:
            published = credits.groupby(key)["pub_id"].nunique().astype(float)
        else:
            published = credits.groupby(key)["credit"].sum()

    sd_to_da = corpus.taxonomy.sd_to_da
    cells = []
    for scope_id in sorted(staff.index):
        n_staff = int(staff[scope_id])
        n_pubs = float(published.get(scope_id, 0.0))
        da_id = scope_id if scope is Scope.DA else sd_to_da[scope_id]
        cells.append(IntensityCell(POOLED_UNIT, scope_id, da_id, n_staff, n_pubs, n_pubs / n_staff))
    return IntensityTable(scope, counting_mode, tuple(cells), corpus.period)
