#!/usr/bin/env python3
"""
Substitute quality/ownership intensity.

Weights each publication by (1 + citations) / (1 + mean citations of its SD)
and by the unit's share of its authors, then divides by the unit's staff.
This is a declared substitute; it does not reproduce any published
composite indicator.
"""

from core.errors import IndicatorError
from analytics.corpus.model import Corpus
from analytics.indicators.intensity import CountingMode, Scope, intensity_table


def quality_ownership_intensity(corpus: Corpus, unit_id: str, scope_id: str) -> float:
    """
    Quality- and ownership-weighted publications per researcher.

    Args:
        corpus: Validated corpus
        unit_id: Unit
        scope_id: An sd_id or a da_id

    Returns:
        Weighted intensity

    Raises:
        IndicatorError: UNKNOWN_SCOPE if scope_id is neither an SD nor a DA,
            MISSING_CELL if the unit has no staff there
    """
    taxonomy = corpus.taxonomy
    if taxonomy.has_sd(scope_id):
        scope = Scope.SD
    elif taxonomy.has_da(scope_id):
        scope = Scope.DA
    else:
        raise IndicatorError(f"{scope_id!r} is neither an SD nor a DA", "UNKNOWN_SCOPE", scope_id)

    table = intensity_table(corpus, scope, CountingMode.QUALITY_WEIGHTED)
    cell = table.get(unit_id, scope_id)
    if cell is None:
        raise IndicatorError(f"unit {unit_id!r} has no staff in {scope_id!r}", "MISSING_CELL", (unit_id, scope_id))
    return cell.intensity
