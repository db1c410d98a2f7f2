#!/usr/bin/env python3
"""
Ranking distortion: how much an area ranking of units moves when the
aggregate intensity is replaced by the field-normalized one.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import List, NamedTuple, Optional

from core.config import Config
from core.errors import RankingError
from analytics.corpus.model import Corpus
from analytics.indicators.intensity import CountingMode, IntensityTable, Scope, intensity_table
from analytics.indicators.normalization import Normalizer
from analytics.ranking.comparison import RankComparison, compare_rankings
from analytics.ranking.ranks import Ranking, rank_units

logger = logging.getLogger(__name__)


class DistortionReport(NamedTuple):
    """Aggregate ranking, normalized ranking and their comparison for one area."""

    aggregate: Ranking
    normalized: Ranking
    comparison: RankComparison


@dataclass(frozen=True)
class DistortionRow:
    """One line of the per-area distortion summary."""

    da_id: str
    da_name: str
    n_sds: int
    comparison: RankComparison


def _area_report(
    da_id: str,
    da_table: IntensityTable,
    normalizer: Normalizer,
    include_unchanged: bool,
    tolerance: float,
) -> DistortionReport:
    aggregate_values = da_table.values(da_id)
    thetas = normalizer.area_thetas(da_id)

    dropped = sorted(set(aggregate_values) - set(thetas))
    if dropped:
        logger.warning("Area %s: units without a normalized value left out of both rankings: %s", da_id, ", ".join(dropped))
    units = sorted(set(aggregate_values) & set(thetas))
    if len(units) < 2:
        raise RankingError(
            f"area {da_id!r} has {len(units)} rankable unit(s); at least 2 are needed",
            "INSUFFICIENT_UNITS",
            da_id,
        )

    aggregate = rank_units({u: aggregate_values[u] for u in units}, da_id, tolerance)
    normalized = rank_units({u: thetas[u].theta for u in units}, da_id, tolerance)
    return DistortionReport(aggregate, normalized, compare_rankings(aggregate, normalized, include_unchanged))


def distortion_report(
    corpus: Corpus,
    da_id: str,
    counting_mode: CountingMode = CountingMode.WHOLE,
    include_unchanged: bool = False,
    tolerance: Optional[float] = None,
) -> DistortionReport:
    """
    Rank the units of an area by aggregate intensity and by theta, then compare.

    Args:
        corpus: Validated corpus
        da_id: Area
        counting_mode: Crediting rule
        include_unchanged: Average/median over all units, not only changed ones
        tolerance: Tie tolerance (default FIELDNORM_TIE_TOLERANCE)

    Returns:
        DistortionReport(aggregate, normalized, comparison)

    Raises:
        RankingError: INSUFFICIENT_UNITS when fewer than 2 units have staff
            in the area
    """
    if tolerance is None:
        tolerance = Config.get_tie_tolerance()
    return _area_report(
        da_id,
        intensity_table(corpus, Scope.DA, counting_mode),
        Normalizer(corpus, counting_mode),
        include_unchanged,
        tolerance,
    )


def distortion_summary(
    corpus: Corpus,
    counting_mode: CountingMode = CountingMode.WHOLE,
    include_unchanged: bool = False,
    threads: Optional[int] = None,
    tolerance: Optional[float] = None,
) -> List[DistortionRow]:
    """
    Distortion of every area with at least two units, ordered by da_id.

    Areas are evaluated concurrently (at most FIELDNORM_THREADS workers);
    the result does not depend on the worker count.
    """
    if tolerance is None:
        tolerance = Config.get_tie_tolerance()
    if threads is None:
        threads = Config.get_threads()

    da_table = intensity_table(corpus, Scope.DA, counting_mode)
    normalizer = Normalizer(corpus, counting_mode)
    taxonomy = corpus.taxonomy

    def evaluate(da_id: str) -> Optional[DistortionRow]:
        try:
            report = _area_report(da_id, da_table, normalizer, include_unchanged, tolerance)
        except RankingError as e:
            if e.code != "INSUFFICIENT_UNITS":
                raise
            logger.info("Skipping area %s: %s", da_id, e.message)
            return None
        return DistortionRow(
            da_id=da_id,
            da_name=taxonomy.da_names[da_id],
            n_sds=len(taxonomy.sds_in_area(da_id)),
            comparison=report.comparison,
        )

    areas = taxonomy.da_ids()
    with ThreadPoolExecutor(max_workers=max(1, threads)) as pool:
        rows = list(pool.map(evaluate, areas))
    return [row for row in rows if row is not None]
