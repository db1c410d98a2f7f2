#!/usr/bin/env python3
"""
Rank-order construction with competition ("1224") tie handling.
"""

import math
from dataclasses import dataclass
from enum import Enum
from typing import Dict, List, Mapping, Tuple

import numpy as np
from scipy.stats import rankdata

from core.errors import RankingError


class TiePolicy(Enum):
    """How tied values share ranks."""

    COMPETITION = "competition"


@dataclass(frozen=True)
class RankEntry:
    unit_id: str
    value: float
    rank: int


@dataclass(frozen=True)
class Ranking:
    """
    Units ordered by value descending, ties by unit_id ascending.

    Attributes:
        entries: Ordered entries
        scope_id: What was ranked (an SD, a DA, or a free label)
        tie_policy: Always competition ranking
    """

    entries: Tuple[RankEntry, ...]
    scope_id: str = ""
    tie_policy: TiePolicy = TiePolicy.COMPETITION

    def rank_of(self, unit_id: str) -> int:
        for entry in self.entries:
            if entry.unit_id == unit_id:
                return entry.rank
        raise RankingError(f"unit {unit_id!r} is not ranked", "MISSING_UNIT", unit_id)

    def ranks(self) -> Dict[str, int]:
        return {e.unit_id: e.rank for e in self.entries}

    def units(self) -> List[str]:
        return [e.unit_id for e in self.entries]


def rank_units(
    values: Mapping[str, float],
    scope_id: str = "",
    tolerance: float = 0.0,
) -> Ranking:
    """
    Competition-rank units by value, highest first.

    Tied values share the smallest rank; the next distinct value gets
    1 + the number of strictly greater values. Sorted neighbours that differ
    by no more than tolerance are treated as tied (chained).

    Args:
        values: unit_id -> value
        scope_id: Label stored on the ranking
        tolerance: Absolute tie tolerance (0 = exact)

    Returns:
        Ranking

    Raises:
        RankingError: EMPTY_VALUES for an empty map, INVALID_VALUE for a
            non-finite value (naming the unit)
    """
    if not values:
        raise RankingError("nothing to rank", "EMPTY_VALUES", scope_id)
    for unit_id, value in values.items():
        if not math.isfinite(value):
            raise RankingError(f"value of unit {unit_id!r} is not finite: {value}", "INVALID_VALUE", unit_id)

    ordered = sorted(values.items(), key=lambda kv: (-kv[1], kv[0]))
    scores = np.array([float(v) for _, v in ordered])

    grouped = scores.copy()
    for i in range(1, len(grouped)):
        if abs(scores[i] - scores[i - 1]) <= tolerance:
            grouped[i] = grouped[i - 1]

    ranks = rankdata(-grouped, method="min")
    entries = [
        RankEntry(unit_id, float(value), int(rank))
        for (unit_id, value), rank in zip(ordered, ranks)
    ]
    entries.sort(key=lambda e: (e.rank, e.unit_id))
    return Ranking(tuple(entries), scope_id)
