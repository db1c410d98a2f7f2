"""
Ranking module: competition ranks, rank comparison and distortion reports.

Usage:
    from analytics.ranking import rank_units, distortion_report

    ranking = rank_units({"U1": 0.96, "U2": 0.50, "U3": 0.80})
    ranking.rank_of("U3")   # 2

    report = distortion_report(corpus, "D1")
    report.comparison.n_changed
"""
from .ranks import RankEntry, Ranking, TiePolicy, rank_units
from .comparison import RankComparison, compare_rankings, rank_variations
from .distortion import DistortionReport, DistortionRow, distortion_report, distortion_summary

__all__ = [
    "RankEntry",
    "Ranking",
    "TiePolicy",
    "rank_units",
    "RankComparison",
    "compare_rankings",
    "rank_variations",
    "DistortionReport",
    "DistortionRow",
    "distortion_report",
    "distortion_summary",
]
