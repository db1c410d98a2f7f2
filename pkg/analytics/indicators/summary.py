#!/usr/bin/env python3
"""
Per-area overview: units, staff, output and intensity with their ranks,
plus the spread of SD intensities inside each area.
"""

from dataclasses import dataclass
from typing import List, Optional

from analytics.corpus.model import Corpus
from analytics.indicators.intensity import CountingMode, Scope, distinct_pool_table, intensity_table
from analytics.indicators.statistics import DistributionStats, sd_distribution_stats
from analytics.ranking.ranks import rank_units


@dataclass(frozen=True)
class AreaSummary:
    """
    One area line.

    publications counts each publication of the area once, however many
    units co-authored it (under fractional and quality counting it is the
    summed credit).
    """

    da_id: str
    da_name: str
    units: int
    researchers: int
    publications: float
    intensity: float
    researchers_rank: int
    publications_rank: int
    intensity_rank: int
    stats: Optional[DistributionStats] = None


def area_summary(corpus: Corpus, counting_mode: CountingMode = CountingMode.WHOLE) -> List[AreaSummary]:
    """
    Summarize every area with staff, ordered by da_id.

    Totals and the SD spread use distinct publications (distinct_pool_table);
    the normalization baseline keeps summing unit credits. Ranks are
    competition ranks across areas, highest value first.
    """
    pooled = distinct_pool_table(corpus, Scope.DA, counting_mode)
    if not pooled.cells:
        return []
    da_table = intensity_table(corpus, Scope.DA, counting_mode)
    pooled_sd = distinct_pool_table(corpus, Scope.SD, counting_mode)

    by_area = {c.scope_id: c for c in pooled.cells}
    researchers_rank = rank_units({da: c.researcher_count for da, c in by_area.items()}).ranks()
    publications_rank = rank_units({da: c.publication_count for da, c in by_area.items()}).ranks()
    intensity_rank = rank_units({da: c.intensity for da, c in by_area.items()}).ranks()

    rows = []
    for da_id in sorted(by_area):
        cell = by_area[da_id]
        rows.append(
            AreaSummary(
                da_id=da_id,
                da_name=corpus.taxonomy.da_names.get(da_id, da_id),
                units=len(da_table.cells_for(da_id)),
                researchers=cell.researcher_count,
                publications=cell.publication_count,
                intensity=cell.intensity,
                researchers_rank=researchers_rank[da_id],
                publications_rank=publications_rank[da_id],
                intensity_rank=intensity_rank[da_id],
                stats=sd_distribution_stats(pooled_sd, da_id),
            )
        )
    return rows
