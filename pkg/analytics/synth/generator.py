#!/usr/bin/env python3
"""
Deterministic synthetic corpus generation.

Random draws come from numpy's PCG64 bit generator seeded with the config
seed. Draw order is fixed: units by unit_id, then their staffed SDs by
sd_id; per cell one publication-count draw, then one citation draw per
publication. The same (seed, config) always gives the same corpus.
"""

import logging
import math
from collections import defaultdict
from fractions import Fraction
from typing import Dict, List, Tuple, Union

import numpy as np

from core.errors import ConfigError
from analytics.corpus.model import Corpus, Publication, Researcher, Taxonomy, TaxonomyEntry
from analytics.synth.config import NoiseModel, SynthConfig

logger = logging.getLogger(__name__)


def round_half_up(value: float) -> int:
    return int(math.floor(value + 0.5))


def make_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


def generate_corpus(config: SynthConfig) -> Corpus:
    """
    Generate a corpus from a config.

    Each (unit, SD) cell with positive staff gets staff researchers named
    "<unit>-<sd>-NNNN" and an expected staff x fertility x productivity
    publications, rounded half up (noise none) or Poisson-drawn. Every
    publication has one author from its cell, assigned round-robin, and
    the cell's publications are spread over the years round-robin.

    Args:
        config: Validated SynthConfig

    Returns:
        Corpus
    """
    rng = make_rng(config.seed)
    fertility = {sd.sd_id: sd.fertility for sd in config.sds}
    years = list(range(config.years[0], config.years[1] + 1))

    taxonomy = Taxonomy(
        tuple(
            TaxonomyEntry(sd.sd_id, sd.sd_name or sd.sd_id, sd.da_id, sd.da_name or sd.da_id)
            for sd in config.sds
        )
    )

    researchers: List[Researcher] = []
    publications: List[Publication] = []
    next_pub = 1
    for unit in config.units:
        for sd_id in sorted(unit.staff_by_sd):
            staff = unit.staff_by_sd[sd_id]
            if staff == 0:
                continue
            members = [f"{unit.unit_id}-{sd_id}-{n:04d}" for n in range(1, staff + 1)]
            researchers.extend(Researcher(rid, unit.unit_id, sd_id, unit.sector) for rid in members)

            expected = staff * fertility[sd_id] * unit.productivity
            if config.noise is NoiseModel.POISSON:
                count = int(rng.poisson(expected))
            else:
                count = round_half_up(expected)

            for k in range(count):
                if config.citation_rate <= 0:
                    citations = 0
                elif config.noise is NoiseModel.POISSON:
                    citations = int(rng.poisson(config.citation_rate))
                else:
                    citations = round_half_up(config.citation_rate)
                publications.append(
                    Publication(
                        pub_id=f"P{next_pub:06d}",
                        year=years[k % len(years)],
                        sd_id=sd_id,
                        citations=citations,
                        author_links=(members[k % staff],),
                    )
                )
                next_pub += 1

    logger.debug(
        "Generated %d researchers and %d publications (seed %d, noise %s)",
        len(researchers), len(publications), config.seed, config.noise.value,
    )
    return Corpus(taxonomy, tuple(researchers), tuple(publications))


def rescale_discipline(corpus: Corpus, sd_id: str, factor: Union[int, float, Fraction]) -> Corpus:
    """
    Multiply the output of one SD by a positive factor.

    Publications of the SD are grouped by author list and every group is
    resized to exactly factor x its size: copies (ids "<pub_id>~k", same
    year, citations and authors) are added cyclically, or the group is cut
    to its first publications by pub_id when factor < 1. Every unit's
    whole and fractional credit in the SD therefore scales by factor, so
    normalized intensities are unchanged while aggregate ones are not.

    Args:
        corpus: Corpus to rescale
        sd_id: SD whose output is scaled
        factor: Any positive rational (1.5 and Fraction(3, 2) are the same)

    Raises:
        ConfigError: INVALID_CONFIG for an unknown SD, a factor <= 0, or a
            factor that would leave some author group with a fractional
            number of publications
    """
    if isinstance(factor, bool) or not isinstance(factor, (int, float, Fraction)):
        raise ConfigError(f"factor must be a number, got {factor!r}", "INVALID_CONFIG")
    if isinstance(factor, float) and not math.isfinite(factor):
        raise ConfigError(f"factor must be finite, got {factor!r}", "INVALID_CONFIG")
    ratio = Fraction(factor)
    if ratio <= 0:
        raise ConfigError(f"factor must be > 0, got {factor!r}", "INVALID_CONFIG")
    if not corpus.taxonomy.has_sd(sd_id):
        raise ConfigError(f"unknown SD {sd_id!r}", "INVALID_CONFIG")

    groups: Dict[Tuple[str, ...], List[Publication]] = defaultdict(list)
    for p in sorted(corpus.publications, key=lambda p: p.pub_id):
        if p.sd_id == sd_id:
            groups[p.author_links].append(p)

    publications = [p for p in corpus.publications if p.sd_id != sd_id]
    for authors, members in sorted(groups.items()):
        target = len(members) * ratio
        if target.denominator != 1:
            raise ConfigError(
                f"factor {ratio} turns the {len(members)} publication(s) of authors "
                f"{', '.join(authors) or '(none)'} into {float(target):g}; counts must stay whole",
                "INVALID_CONFIG",
            )
        for j in range(int(target)):
            original = members[j % len(members)]
            copy = j // len(members)
            if copy == 0:
                publications.append(original)
            else:
                publications.append(
                    Publication(f"{original.pub_id}~{copy}", original.year, original.sd_id, original.citations, original.author_links)
                )
    logger.debug("Rescaled SD %s by %s", sd_id, ratio)
    return Corpus(corpus.taxonomy, corpus.researchers, tuple(publications), corpus.years)
