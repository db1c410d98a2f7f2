#!/usr/bin/env python3
"""
Public/private decomposition of national publication intensity.

A country's total intensity mixes public researchers (who publish) and
private researchers (who mostly do not). Assuming one private intensity pi
for every country, calibrated from a reference country whose public
intensity is known:

    total = share * public + (1 - share) * pi
    pi     = (total - share * public) / (1 - share)
    public = (total - (1 - share) * pi) / share
"""

import logging
import math
from dataclasses import dataclass
from typing import Iterable, List, Optional, Tuple

from core.config import Config
from core.errors import SectorError
from analytics.ranking.ranks import rank_units
from analytics.sector.countries import CountryRecord

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SectorResult:
    """
    Decomposition of one country.

    estimated_private_publications is pi x private researchers when the
    country's total_researchers is known, otherwise the private output per
    researcher of the whole workforce, (1 - share) x pi.
    zero_private_intensity is the public intensity if private researchers
    published nothing (total / share).
    """

    country_id: str
    total_intensity: float
    public_share: float
    private_intensity_used: float
    estimated_private_publications: float
    public_intensity: float
    zero_private_intensity: float
    rank_total: int
    rank_public: int
    clamped: bool = False


def _check_share(public_share: float, allow_one: bool) -> None:
    if not math.isfinite(public_share) or public_share <= 0 or public_share > 1:
        raise SectorError(f"public_share must be in (0, 1], got {public_share}", "INVALID_SHARE", public_share)
    if public_share == 1 and not allow_one:
        raise SectorError(
            "public_share = 1 leaves no private researchers to calibrate from", "NO_PRIVATE_SECTOR", public_share
        )


def implied_private_intensity(total_pi: float, public_share: float, public_pi: float) -> float:
    """
    Private intensity implied by a country's total and public intensity.

    Args:
        total_pi: Publications per researcher, all sectors
        public_share: Public researchers / all researchers, in (0, 1)
        public_pi: Publications per public researcher

    Returns:
        (total_pi - public_share * public_pi) / (1 - public_share); a
        negative value is returned as computed and logged

    Raises:
        SectorError: NO_PRIVATE_SECTOR when public_share is 1,
            INVALID_SHARE outside (0, 1]
    """
    _check_share(public_share, allow_one=False)
    pi = (total_pi - public_share * public_pi) / (1 - public_share)
    if pi < 0:
        logger.warning(
            "Negative implied private intensity %.6f (total %.4f, share %.4f, public %.4f); likely input rounding",
            pi, total_pi, public_share, public_pi,
        )
    return pi


def _decompose(total_pi: float, public_share: float, private_intensity: float) -> Tuple[float, bool]:
    _check_share(public_share, allow_one=True)
    if not math.isfinite(private_intensity) or private_intensity < 0:
        raise SectorError(
            f"private_intensity must be >= 0, got {private_intensity}", "INVALID_VALUE", private_intensity
        )
    public_pi = (total_pi - (1 - public_share) * private_intensity) / public_share
    if public_pi < 0:
        logger.warning(
            "Public intensity %.6f clamped to 0 (total %.4f, share %.4f, private %.4f)",
            public_pi, total_pi, public_share, private_intensity,
        )
        return 0.0, True
    return public_pi, False


def public_sector_intensity(total_pi: float, public_share: float, private_intensity: float) -> float:
    """
    Publications per public researcher given a private intensity.

    Args:
        total_pi: Publications per researcher, all sectors
        public_share: Public researchers / all researchers, in (0, 1]
        private_intensity: Publications per private researcher (>= 0)

    Returns:
        (total_pi - (1 - public_share) * private_intensity) / public_share,
        clamped to 0 with a logged warning when negative

    Raises:
        SectorError: INVALID_SHARE when public_share is 0 or above 1,
            INVALID_VALUE for a negative private intensity
    """
    return _decompose(total_pi, public_share, private_intensity)[0]


def calibrate_private_intensity(private_publications: float, private_researchers: float) -> float:
    """
    Private intensity from classified counts (publications whose authors are
    all private-sector, over private-sector researchers).

    Raises:
        SectorError: INVALID_VALUE for non-positive researchers or negative publications
    """
    if private_researchers <= 0:
        raise SectorError(
            f"private_researchers must be > 0, got {private_researchers}", "INVALID_VALUE", private_researchers
        )
    if private_publications < 0:
        raise SectorError(
            f"private_publications must be >= 0, got {private_publications}", "INVALID_VALUE", private_publications
        )
    return private_publications / private_researchers


def sector_comparison_table(
    records: Iterable[CountryRecord],
    reference_country: str,
    reference_public_pi: Optional[float] = None,
    private_intensity: Optional[float] = None,
    tolerance: Optional[float] = None,
) -> List[SectorResult]:
    """
    Decompose every country with one private intensity and rank by total
    and by public intensity.

    Exactly one calibration source must be given: the reference country's
    known public intensity, or an already calibrated private intensity
    (e.g. from calibrate_private_intensity).

    Args:
        records: Countries, in report order
        reference_country: country_id the calibration refers to
        reference_public_pi: Known public intensity of the reference country
        private_intensity: Calibrated private intensity
        tolerance: Tie tolerance for ranking (default FIELDNORM_TIE_TOLERANCE)

    Returns:
        One SectorResult per record, in input order

    Raises:
        SectorError: UNKNOWN_COUNTRY, DUP_COUNTRY, CALIBRATION_SOURCE, or
            an error from the decomposition itself
    """
    records = list(records)
    by_id = {}
    for record in records:
        if record.country_id in by_id:
            raise SectorError(f"country {record.country_id!r} listed twice", "DUP_COUNTRY", record.country_id)
        by_id[record.country_id] = record
    if reference_country not in by_id:
        raise SectorError(f"reference country {reference_country!r} not found", "UNKNOWN_COUNTRY", reference_country)
    if (reference_public_pi is None) == (private_intensity is None):
        raise SectorError(
            "give exactly one of reference_public_pi or private_intensity", "CALIBRATION_SOURCE"
        )
    if tolerance is None:
        tolerance = Config.get_tie_tolerance()

    if reference_public_pi is not None:
        ref = by_id[reference_country]
        pi = implied_private_intensity(ref.publications_per_researcher, ref.public_share, reference_public_pi)
        logger.info("Private intensity %.6f calibrated from %s", pi, reference_country)
        if pi < 0:
            raise SectorError(
                f"calibrated private intensity is negative ({pi:.6f}); cannot decompose",
                "NEGATIVE_INTENSITY",
                pi,
            )
    else:
        pi = private_intensity

    decomposed = {
        r.country_id: _decompose(r.publications_per_researcher, r.public_share, pi) for r in records
    }
    total_ranks = rank_units(
        {r.country_id: r.publications_per_researcher for r in records}, "total", tolerance
    ).ranks()
    public_ranks = rank_units({cid: value for cid, (value, _) in decomposed.items()}, "public", tolerance).ranks()

    results = []
    for r in records:
        public_pi, clamped = decomposed[r.country_id]
        private_researchers = r.private_researchers
        if private_researchers is not None:
            private_pubs = pi * private_researchers
        else:
            private_pubs = pi * (1 - r.public_share)
        results.append(
            SectorResult(
                country_id=r.country_id,
                total_intensity=r.publications_per_researcher,
                public_share=r.public_share,
                private_intensity_used=pi,
                estimated_private_publications=private_pubs,
                public_intensity=public_pi,
                zero_private_intensity=r.publications_per_researcher / r.public_share,
                rank_total=total_ranks[r.country_id],
                rank_public=public_ranks[r.country_id],
                clamped=clamped,
            )
        )
    return results
