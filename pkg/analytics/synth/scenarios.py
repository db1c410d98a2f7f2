#!/usr/bin/env python3
"""
Built-in synthetic scenarios.

    ab_scenario     two units over mathematics and chemistry whose aggregate
                    ranking is an artifact of their specialization
    default_config  three units with opposite specializations over a low-
                    and a high-fertility SD, plus a milder second area
    table1_corpus   per-area researcher and publication totals of the
                    Italian 2001-2003 benchmark, one SD per area
"""

from typing import List, Tuple

from analytics.corpus.model import Corpus, Publication, Researcher, Taxonomy, TaxonomyEntry
from analytics.synth.config import NoiseModel, SynthConfig, SynthDiscipline, SynthUnit
from analytics.synth.generator import generate_corpus

MATH_FERTILITY = 0.33
CHEM_FERTILITY = 1.31

# (da_id, name, universities, researchers, publications)
TABLE1_AREAS: List[Tuple[str, str, int, int, int]] = [
    ("DA1", "Mathematical sciences", 59, 3108, 1011),
    ("DA2", "Physical sciences", 57, 2516, 2787),
    ("DA3", "Chemical sciences", 58, 3150, 4116),
    ("DA4", "Earth sciences", 48, 1291, 569),
    ("DA5", "Biological sciences", 63, 4866, 4257),
    ("DA6", "Medical sciences", 57, 10571, 7922),
    ("DA7", "Agricultural and veterinary sciences", 49, 2964, 1002),
    ("DA8", "Industrial and information engineering", 60, 4350, 2019),
]
TABLE1_YEARS = (2001, 2003)


def ab_config() -> SynthConfig:
    """A: 30 math + 70 chemistry staff; B: 1.5x the staff, 70% in math"""
    return SynthConfig(
        seed=0,
        sds=(
            SynthDiscipline("MATH", "AB", MATH_FERTILITY, "Mathematics", "Mathematics and chemistry"),
            SynthDiscipline("CHEM", "AB", CHEM_FERTILITY, "Chemistry", "Mathematics and chemistry"),
        ),
        units=(
            SynthUnit("A", {"MATH": 30, "CHEM": 70}),
            SynthUnit("B", {"MATH": 105, "CHEM": 45}),
        ),
        noise=NoiseModel.NONE,
    )


def ab_scenario() -> Corpus:
    """A publishes 10 + 92 = 102, B publishes 35 + 59 = 94"""
    return generate_corpus(ab_config())


def default_config(seed: int = 42) -> SynthConfig:
    """
    Fixture for the distortion suite.

    In D1, U1 sits mostly in the high-fertility SD but is the least
    productive, U2 is the reverse, so aggregate and normalized rankings of
    D1 disagree.
    """
    return SynthConfig(
        seed=seed,
        sds=(
            SynthDiscipline("LOW", "D1", 0.3, "Low-fertility discipline", "Area one"),
            SynthDiscipline("HIGH", "D1", 1.3, "High-fertility discipline", "Area one"),
            SynthDiscipline("MID_A", "D2", 0.6, "Discipline A", "Area two"),
            SynthDiscipline("MID_B", "D2", 0.9, "Discipline B", "Area two"),
        ),
        units=(
            SynthUnit("U1", {"LOW": 100, "HIGH": 900, "MID_A": 200, "MID_B": 200}, productivity=0.8),
            SynthUnit("U2", {"LOW": 900, "HIGH": 100, "MID_A": 100, "MID_B": 300}, productivity=1.25),
            SynthUnit("U3", {"LOW": 500, "HIGH": 500, "MID_A": 300, "MID_B": 100}, productivity=1.0),
        ),
        noise=NoiseModel.POISSON,
    )


def table1_corpus() -> Corpus:
    """
    Corpus reproducing the per-area totals of the 2001-2003 benchmark.

    Each area has one SD; its researchers are spread over the area's
    universities (U01, U02, ...) round-robin and each publication has a
    single author, taken round-robin over the area's researchers.
    """
    entries = []
    researchers = []
    publications = []
    years = list(range(TABLE1_YEARS[0], TABLE1_YEARS[1] + 1))
    for da_id, name, universities, n_researchers, n_publications in TABLE1_AREAS:
        sd_id = f"{da_id}-SD"
        entries.append(TaxonomyEntry(sd_id, name, da_id, name))
        members = [f"{da_id}-R{n:05d}" for n in range(n_researchers)]
        researchers.extend(
            Researcher(rid, f"U{n % universities + 1:02d}", sd_id) for n, rid in enumerate(members)
        )
        publications.extend(
            Publication(f"{da_id}-P{n:05d}", years[n % len(years)], sd_id, 0, (members[n % n_researchers],))
            for n in range(n_publications)
        )
    return Corpus(Taxonomy(tuple(entries)), tuple(researchers), tuple(publications), TABLE1_YEARS)
