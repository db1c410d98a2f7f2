#!/usr/bin/env python3
"""
Domain model for taxonomies, researcher rosters and publication records.

A Corpus is immutable after construction. Collections are stored sorted by
identifier so that the order of input rows never influences a result.
"""

import json
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import Dict, List, Optional, Tuple

import pandas as pd


class Sector(Enum):
    """Employment sector of a researcher."""

    PUBLIC = "public"
    PRIVATE = "private"


@dataclass(frozen=True)
class TaxonomyEntry:
    """One scientific discipline (SD) and the disciplinary area (DA) it belongs to."""

    sd_id: str
    sd_name: str
    da_id: str
    da_name: str


@dataclass(frozen=True)
class Taxonomy:
    """SDs grouped into DAs."""

    entries: Tuple[TaxonomyEntry, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(sorted(self.entries, key=lambda e: (e.sd_id, e.da_id))))

    @cached_property
    def sd_to_da(self) -> Dict[str, str]:
        return {e.sd_id: e.da_id for e in self.entries}

    @cached_property
    def da_names(self) -> Dict[str, str]:
        names: Dict[str, str] = {}
        for e in self.entries:
            names.setdefault(e.da_id, e.da_name)
        return names

    def sd_ids(self) -> List[str]:
        return sorted(self.sd_to_da)

    def da_ids(self) -> List[str]:
        return sorted(self.da_names)

    def sds_in_area(self, da_id: str) -> List[str]:
        """SDs of an area (n_j of them), sorted"""
        return sorted(sd for sd, da in self.sd_to_da.items() if da == da_id)

    def has_sd(self, sd_id: str) -> bool:
        return sd_id in self.sd_to_da

    def has_da(self, da_id: str) -> bool:
        return da_id in self.da_names


@dataclass(frozen=True)
class Researcher:
    """A roster member, associated with exactly one SD."""

    researcher_id: str
    unit_id: str
    sd_id: str
    sector: Sector = Sector.PUBLIC


@dataclass(frozen=True)
class Publication:
    """An indexed publication with its discipline and author links."""

    pub_id: str
    year: int
    sd_id: str
    citations: int = 0
    author_links: Tuple[str, ...] = ()


@dataclass(frozen=True)
class Corpus:
    """
    The full data universe: taxonomy, roster and publications.

    Attributes:
        taxonomy: SD -> DA classification
        researchers: Roster, sorted by researcher_id
        publications: Publication records, sorted by pub_id
        years: Inclusive year window applied at load time, if any
    """

    taxonomy: Taxonomy
    researchers: Tuple[Researcher, ...] = ()
    publications: Tuple[Publication, ...] = ()
    years: Optional[Tuple[int, int]] = None

    def __post_init__(self):
        object.__setattr__(self, "researchers", tuple(sorted(self.researchers, key=lambda r: r.researcher_id)))
        object.__setattr__(self, "publications", tuple(sorted(self.publications, key=lambda p: p.pub_id)))

    # ============= LOOKUPS =============

    @cached_property
    def researcher_index(self) -> Dict[str, Researcher]:
        return {r.researcher_id: r for r in self.researchers}

    def units(self) -> List[str]:
        """All unit ids present in the roster"""
        return sorted({r.unit_id for r in self.researchers})

    @property
    def period(self) -> Optional[Tuple[int, int]]:
        """Year window: the load window if one was applied, else the observed range"""
        if self.years is not None:
            return self.years
        if not self.publications:
            return None
        years = [p.year for p in self.publications]
        return (min(years), max(years))

    def counts(self) -> Tuple[int, int, int]:
        """(SDs, researchers, publications)"""
        return (len(self.taxonomy.entries), len(self.researchers), len(self.publications))

    def researchers_per_area(self) -> Dict[str, int]:
        totals = {da: 0 for da in self.taxonomy.da_ids()}
        for r in self.researchers:
            da = self.taxonomy.sd_to_da.get(r.sd_id)
            if da is not None:
                totals[da] += 1
        return totals

    # ============= TABULAR VIEWS =============

    @cached_property
    def staff_frame(self) -> pd.DataFrame:
        """One row per researcher: researcher_id, unit_id, sd_id, da_id, sector"""
        rows = [
            (r.researcher_id, r.unit_id, r.sd_id, self.taxonomy.sd_to_da.get(r.sd_id), r.sector.value)
            for r in self.researchers
        ]
        return pd.DataFrame(rows, columns=["researcher_id", "unit_id", "sd_id", "da_id", "sector"])

    @cached_property
    def publication_frame(self) -> pd.DataFrame:
        """One row per publication: pub_id, year, sd_id, da_id, citations, n_authors"""
        rows = [
            (p.pub_id, p.year, p.sd_id, self.taxonomy.sd_to_da.get(p.sd_id), p.citations, len(p.author_links))
            for p in self.publications
        ]
        return pd.DataFrame(rows, columns=["pub_id", "year", "sd_id", "da_id", "citations", "n_authors"])

    @cached_property
    def authorship_frame(self) -> pd.DataFrame:
        """One row per (publication, resolvable author): pub_id, researcher_id, unit_id"""
        index = self.researcher_index
        rows = [
            (p.pub_id, link, index[link].unit_id)
            for p in self.publications
            for link in p.author_links
            if link in index
        ]
        return pd.DataFrame(rows, columns=["pub_id", "researcher_id", "unit_id"])

    # ============= SERIALIZATION =============

    def canonical(self) -> str:
        """Canonical JSON serialization; equal corpora serialize identically"""
        payload = {
            "taxonomy": [
                [e.sd_id, e.sd_name, e.da_id, e.da_name] for e in self.taxonomy.entries
            ],
            "researchers": [
                [r.researcher_id, r.unit_id, r.sd_id, r.sector.value] for r in self.researchers
            ],
            "publications": [
                [p.pub_id, p.year, p.sd_id, p.citations, sorted(p.author_links)]
                for p in self.publications
            ],
            "years": list(self.years) if self.years else None,
        }
        return json.dumps(payload, sort_keys=True, separators=(",", ":"), ensure_ascii=False)
