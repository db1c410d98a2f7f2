#!/usr/bin/env python3
"""
Field-normalized intensity.

Each unit's SD intensity is divided by the SD's pooled intensity over all
units (pqcn), and an area indicator theta is the staff-weighted mean of the
unit's pqcn values over the SDs it occupies in the area:

    theta_k(j) = sum_i pqcn_ik * staff_ik / sum_i staff_ik

Because the baseline is pooled, the staff-weighted mean of pqcn over all
units of an SD is exactly 1, and rescaling every publication count of an SD
leaves every pqcn unchanged.
"""

import logging
import math
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from core.errors import IndicatorError
from analytics.corpus.model import Corpus
from analytics.indicators.intensity import (
    POOLED_UNIT,
    CountingMode,
    IntensityTable,
    Scope,
    intensity_table,
    pool_table,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class NormalizedAreaIntensity:
    """
    Theta of one unit in one area.

    Attributes:
        unit_id: Unit
        da_id: Area
        theta: Staff-weighted mean of pqcn
        contributions: (sd_id, pqcn, staff) for every occupied, non-degenerate SD
    """

    unit_id: str
    da_id: str
    theta: float
    contributions: Tuple[Tuple[str, float, int], ...]


class Normalizer:
    """
    Computes pqcn and theta for one corpus and counting mode.

    The SD table and its pooled baseline are computed once and shared by
    every query; instances hold no mutable state after construction.
    """

    def __init__(self, corpus: Corpus, counting_mode: CountingMode = CountingMode.WHOLE):
        """
        Initialize Normalizer.

        Args:
            corpus: Validated corpus
            counting_mode: Crediting rule used for both unit and pooled intensity
        """
        self.corpus = corpus
        self.counting_mode = counting_mode
        self.sd_table: IntensityTable = intensity_table(corpus, Scope.SD, counting_mode)
        self.pooled: IntensityTable = pool_table(self.sd_table)
        self.degenerate_sds: List[str] = [c.scope_id for c in self.pooled.cells if c.intensity == 0]
        if self.degenerate_sds:
            logger.warning(
                "SDs with zero pooled output excluded from normalization: %s",
                ", ".join(self.degenerate_sds),
            )

    def baseline(self, sd_id: str) -> float:
        """Pooled intensity of an SD"""
        cell = self.pooled.get(POOLED_UNIT, sd_id)
        if cell is None:
            raise IndicatorError(f"no staff in SD {sd_id!r}", "MISSING_CELL", sd_id)
        return cell.intensity

    def pqcn(self, unit_id: str, sd_id: str) -> float:
        """
        Normalized intensity of a unit in an SD.

        Raises:
            IndicatorError: MISSING_CELL if the unit has no staff in the SD,
                DEGENERATE_SD if the SD's pooled intensity is 0
        """
        cell = self.sd_table.get(unit_id, sd_id)
        if cell is None:
            raise IndicatorError(f"unit {unit_id!r} has no staff in SD {sd_id!r}", "MISSING_CELL", (unit_id, sd_id))
        base = self.baseline(sd_id)
        if base == 0:
            raise IndicatorError(f"SD {sd_id!r} has zero pooled intensity", "DEGENERATE_SD", sd_id)
        return cell.intensity / base

    def units_in_area(self, da_id: str) -> List[str]:
        return sorted({c.unit_id for c in self.sd_table.cells_in_area(da_id)})

    def theta(self, unit_id: str, da_id: str) -> NormalizedAreaIntensity:
        """
        Area indicator of a unit.

        Raises:
            IndicatorError: MISSING_UNIT if the unit has no staff in the area,
                DEGENERATE_AREA if all its SDs there have zero pooled output
        """
        cells = [c for c in self.sd_table.cells_in_area(da_id) if c.unit_id == unit_id]
        if not cells:
            raise IndicatorError(f"unit {unit_id!r} has no staff in area {da_id!r}", "MISSING_UNIT", (unit_id, da_id))

        contributions = []
        for cell in sorted(cells, key=lambda c: c.scope_id):
            base = self.baseline(cell.scope_id)
            if base == 0:
                continue
            contributions.append((cell.scope_id, cell.intensity / base, cell.researcher_count))
        if not contributions:
            raise IndicatorError(
                f"unit {unit_id!r} only occupies zero-output SDs in area {da_id!r}",
                "DEGENERATE_AREA",
                (unit_id, da_id),
            )

        weighted = math.fsum(pqcn * staff for _, pqcn, staff in contributions)
        total_staff = sum(staff for _, _, staff in contributions)
        return NormalizedAreaIntensity(unit_id, da_id, weighted / total_staff, tuple(contributions))

    def area_thetas(self, da_id: str) -> Dict[str, NormalizedAreaIntensity]:
        """Theta of every unit with staff in the area; degenerate units are skipped"""
        results = {}
        for unit_id in self.units_in_area(da_id):
            try:
                results[unit_id] = self.theta(unit_id, da_id)
            except IndicatorError as e:
                if e.code != "DEGENERATE_AREA":
                    raise
                logger.warning("%s", e)
        return results


# =============================================================================
# Functional API
# =============================================================================


def normalized_sd_intensity(
    corpus: Corpus,
    unit_id: str,
    sd_id: str,
    counting_mode: CountingMode = CountingMode.WHOLE,
) -> float:
    """
    PI(unit, sd) / pooledPI(sd).

    Raises:
        IndicatorError: MISSING_CELL or DEGENERATE_SD
    """
    return Normalizer(corpus, counting_mode).pqcn(unit_id, sd_id)


def area_normalized_intensity(
    corpus: Corpus,
    unit_id: str,
    da_id: str,
    counting_mode: CountingMode = CountingMode.WHOLE,
) -> NormalizedAreaIntensity:
    """
    Staff-weighted mean of the unit's normalized SD intensities in an area.

    Raises:
        IndicatorError: MISSING_UNIT or DEGENERATE_AREA
    """
    return Normalizer(corpus, counting_mode).theta(unit_id, da_id)


def theta_table(
    corpus: Corpus,
    counting_mode: CountingMode = CountingMode.WHOLE,
    da_id: Optional[str] = None,
) -> List[NormalizedAreaIntensity]:
    """
    Theta for every (unit, area) pair, sorted by (da_id, unit_id).

    Args:
        corpus: Validated corpus
        counting_mode: Crediting rule
        da_id: Restrict to one area
    """
    normalizer = Normalizer(corpus, counting_mode)
    areas = [da_id] if da_id is not None else corpus.taxonomy.da_ids()
    rows = []
    for area in areas:
        thetas = normalizer.area_thetas(area)
        rows.extend(thetas[unit] for unit in sorted(thetas))
    return rows
