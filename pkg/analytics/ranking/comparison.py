#!/usr/bin/env python3
"""
Rank-variation statistics between two rankings of the same units.
"""

from dataclasses import dataclass
from typing import Dict, Tuple

import numpy as np

from core.errors import RankingError
from analytics.ranking.ranks import Ranking


@dataclass(frozen=True)
class RankComparison:
    """
    Distortion statistics between two rankings.

    average_variation and median_variation run over the changed units only
    unless the comparison was built with include_unchanged=True.
    """

    n_units: int
    n_changed: int
    max_variation: int
    average_variation: float
    median_variation: float
    variations: Tuple[Tuple[str, int], ...] = ()
    include_unchanged: bool = False

    def changed_label(self) -> str:
        """Number of variations as x (out of n)"""
        return f"{self.n_changed} (out of {self.n_units})"


def rank_variations(r1: Ranking, r2: Ranking) -> Dict[str, int]:
    """
    |rank in r1 - rank in r2| for every unit.

    Raises:
        RankingError: SET_MISMATCH listing the symmetric difference
    """
    ranks1, ranks2 = r1.ranks(), r2.ranks()
    if set(ranks1) != set(ranks2):
        diff = sorted(set(ranks1) ^ set(ranks2))
        raise RankingError(
            f"rankings cover different units: {', '.join(diff)}", "SET_MISMATCH", diff
        )
    return {unit: abs(ranks1[unit] - ranks2[unit]) for unit in sorted(ranks1)}


def compare_rankings(r_aggregate: Ranking, r_normalized: Ranking, include_unchanged: bool = False) -> RankComparison:
    """
    Compare two rankings of the same unit set.

    Args:
        r_aggregate: First ranking
        r_normalized: Second ranking
        include_unchanged: Average and median over all units instead of the
            changed ones

    Returns:
        RankComparison (symmetric in its arguments)
    """
    variations = rank_variations(r_aggregate, r_normalized)
    changed = [v for v in variations.values() if v > 0]
    pool = list(variations.values()) if include_unchanged else changed

    return RankComparison(
        n_units=len(variations),
        n_changed=len(changed),
        max_variation=max(changed, default=0),
        average_variation=float(np.mean(pool)) if pool else 0.0,
        median_variation=float(np.median(pool)) if pool else 0.0,
        variations=tuple(variations.items()),
        include_unchanged=include_unchanged,
    )
