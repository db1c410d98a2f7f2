#!/usr/bin/env python3
"""
Shared builders for in-memory corpora and on-disk corpus directories.
"""

import os
import sys
from pathlib import Path
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

# Add parent directory to path
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from analytics.corpus.model import Corpus, Publication, Researcher, Taxonomy, TaxonomyEntry


def make_taxonomy(areas: Mapping[str, Sequence[str]]) -> Taxonomy:
    """{da_id: [sd_id, ...]} -> Taxonomy (names equal ids)"""
    return Taxonomy(
        tuple(TaxonomyEntry(sd, sd, da, da) for da, sds in areas.items() for sd in sds)
    )


def make_corpus(
    areas: Mapping[str, Sequence[str]],
    staff: Mapping[Tuple[str, str], int],
    output: Mapping[Tuple[str, str], int],
    joint: Iterable[Tuple[str, Sequence[str]]] = (),
    year: int = 2002,
) -> Corpus:
    """
    Build a corpus cell by cell.

    Args:
        areas: {da_id: [sd_id, ...]}
        staff: {(unit_id, sd_id): researchers}
        output: {(unit_id, sd_id): single-author publications}
        joint: (sd_id, [researcher_id, ...]) co-authored publications
        year: Publication year

    Researchers are named "<unit>-<sd>-<n>" (n from 1).
    """
    researchers: List[Researcher] = []
    members: Dict[Tuple[str, str], List[str]] = {}
    for (unit, sd), n in sorted(staff.items()):
        ids = [f"{unit}-{sd}-{i}" for i in range(1, n + 1)]
        members[(unit, sd)] = ids
        researchers.extend(Researcher(rid, unit, sd) for rid in ids)

    publications: List[Publication] = []
    for (unit, sd), n in sorted(output.items()):
        authors = members[(unit, sd)]
        publications.extend(
            Publication(f"{unit}-{sd}-P{i:04d}", year, sd, 0, (authors[i % len(authors)],))
            for i in range(n)
        )
    for k, (sd, authors) in enumerate(joint):
        publications.append(Publication(f"J{k:04d}", year, sd, 0, tuple(authors)))

    return Corpus(make_taxonomy(areas), tuple(researchers), tuple(publications))


def two_unit_corpus() -> Corpus:
    """
    D1 = {S1, S2}, units U1 and U2.

    U1: 2 staff in S1 (4 pubs), 2 in S2 (1 pub)
    U2: 1 staff in S1 (1 pub), 3 in S2 (6 pubs)
    plus one S1 publication co-authored by U1-S1-1 and U2-S1-1.
    """
    return make_corpus(
        {"D1": ["S1", "S2"]},
        {("U1", "S1"): 2, ("U1", "S2"): 2, ("U2", "S1"): 1, ("U2", "S2"): 3},
        {("U1", "S1"): 4, ("U1", "S2"): 1, ("U2", "S1"): 1, ("U2", "S2"): 6},
        joint=[("S1", ["U1-S1-1", "U2-S1-1"])],
    )


TAXONOMY_CSV = """sd_id,sd_name,da_id,da_name
MAT/01,Logic,DA1,Mathematics
MAT/02,Algebra,DA1,Mathematics
CHIM/01,Analytical chemistry,DA3,Chemistry
"""

RESEARCHERS_CSV = """researcher_id,unit_id,sd_id,sector
R1,UNI-A,MAT/01,public
R2,UNI-A,MAT/02,public
R3,UNI-B,MAT/01,
R4,UNI-B,CHIM/01,public
R5,UNI-A,CHIM/01,private
"""

PUBLICATIONS_CSV = """pub_id,year,sd_id,citations
P1,2001,MAT/01,3
P2,2002,,0
P3,2003,CHIM/01,10
P4,2004,MAT/02,1
P5,2002,CHIM/01,
"""

AUTHORSHIPS_CSV = """pub_id,researcher_id
P1,R1
P1,R3
P2,R2
P3,R4
P3,R5
P4,R2
P5,R4
P5,R4
"""


def write_corpus_dir(
    directory: Path,
    taxonomy: str = TAXONOMY_CSV,
    researchers: str = RESEARCHERS_CSV,
    publications: str = PUBLICATIONS_CSV,
    authorships: Optional[str] = AUTHORSHIPS_CSV,
) -> Path:
    """Write the four CSV files into directory and return it"""
    directory.mkdir(parents=True, exist_ok=True)
    (directory / "taxonomy.csv").write_text(taxonomy, encoding="utf-8")
    (directory / "researchers.csv").write_text(researchers, encoding="utf-8")
    (directory / "publications.csv").write_text(publications, encoding="utf-8")
    if authorships is not None:
        (directory / "authorships.csv").write_text(authorships, encoding="utf-8")
    return directory


