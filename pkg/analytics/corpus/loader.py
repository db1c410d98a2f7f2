#!/usr/bin/env python3
"""
CSV ingestion and emission for corpora.

Schemas (UTF-8, comma-separated, RFC 4180 quoting):
    taxonomy.csv      sd_id,sd_name,da_id,da_name
    researchers.csv   researcher_id,unit_id,sd_id[,sector]
    publications.csv  pub_id,year[,sd_id][,citations]
    authorships.csv   pub_id,researcher_id

Usage:
    from analytics.corpus.loader import load_corpus_dir

    corpus = load_corpus_dir("data/italy", years=(2001, 2003))
"""

import csv
import logging
import re
from collections import Counter, defaultdict
from pathlib import Path
from typing import IO, Dict, Iterable, List, Optional, Sequence, Set, Tuple, Union

import pandas as pd

from core.errors import CorpusError, Issue
from analytics.corpus.model import Corpus, Publication, Researcher, Sector, Taxonomy, TaxonomyEntry

logger = logging.getLogger(__name__)

Source = Union[str, Path, IO[str]]

TAXONOMY_FILE = "taxonomy.csv"
RESEARCHERS_FILE = "researchers.csv"
PUBLICATIONS_FILE = "publications.csv"
AUTHORSHIPS_FILE = "authorships.csv"

TAXONOMY_COLUMNS = ["sd_id", "sd_name", "da_id", "da_name"]
RESEARCHER_COLUMNS = ["researcher_id", "unit_id", "sd_id", "sector"]
PUBLICATION_COLUMNS = ["pub_id", "year", "sd_id", "citations"]
AUTHORSHIP_COLUMNS = ["pub_id", "researcher_id"]
COVERAGE_COLUMNS = ["da_id", "indexed_count", "total_output_count"]


# =============================================================================
# Table reading
# =============================================================================


def _open(source: Source) -> IO[str]:
    if isinstance(source, (str, Path)):
        return open(source, encoding="utf-8-sig", newline="")
    return source


def read_table(
    source: Source,
    name: str,
    required: Sequence[str],
    issues: List[Issue],
) -> List[Tuple[int, Dict[str, str]]]:
    """
    Read one CSV source into (row number, record) pairs.

    Every cell is kept as text, exactly as quoted in the file. Rows whose
    field count differs from the header and missing required columns are
    recorded as issues; blank lines are skipped and not numbered.

    Args:
        source: Path or text stream
        name: Logical source name used in issue reports
        required: Columns that must appear in the header
        issues: Issue list to append to

    Returns:
        List of (1-based data row number, {column: value})
    """
    handle = _open(source)
    try:
        reader = csv.reader(handle, strict=True)
        rows = [fields for fields in reader if fields]
    except UnicodeDecodeError as e:
        issues.append(Issue("BAD_ENCODING", f"{name} is not valid UTF-8: {e}", source=name))
        return []
    except csv.Error as e:
        issues.append(Issue("BAD_CSV", f"{name} line {reader.line_num}: {e}", source=name))
        return []
    finally:
        if handle is not source:
            handle.close()

    if not rows:
        issues.append(Issue("EMPTY_SOURCE", f"{name} source has no header", source=name))
        return []

    header = [c.strip() for c in rows[0]]
    missing = [c for c in required if c not in header]
    if missing:
        issues.append(
            Issue("MISSING_COLUMN", f"{name} lacks column(s): {', '.join(missing)}", source=name)
        )
        return []

    good: List[List[str]] = []
    positions: List[int] = []
    for position, fields in enumerate(rows[1:], start=1):
        if len(fields) != len(header):
            issues.append(
                Issue(
                    "BAD_COLUMN_COUNT",
                    f"expected {len(header)} fields, found {len(fields)}",
                    row=position,
                    source=name,
                )
            )
            continue
        good.append(fields)
        positions.append(position)

    frame = pd.DataFrame(good, columns=header, dtype=str)
    return list(zip(positions, frame.to_dict(orient="records")))


_INT_RE = re.compile(r"-?[0-9]+")


def _parse_int(value: str, column: str, row: int, name: str, issues: List[Issue]) -> Optional[int]:
    # ASCII digits only: no padding, separators or plus sign
    if _INT_RE.fullmatch(value):
        return int(value)
    issues.append(
        Issue("BAD_INTEGER", f"{column} is not an integer: {value!r}", ref_id=value, row=row, source=name)
    )
    return None


def _require(value: str, column: str, row: int, name: str, issues: List[Issue]) -> bool:
    if value == "":
        issues.append(Issue("MISSING_VALUE", f"{column} is empty", row=row, source=name))
        return False
    return True


# =============================================================================
# Per-source parsing
# =============================================================================


def _parse_taxonomy(source: Source, issues: List[Issue]) -> List[TaxonomyEntry]:
    entries = []
    seen: Dict[str, int] = {}
    for row, rec in read_table(source, "taxonomy", TAXONOMY_COLUMNS, issues):
        if not (_require(rec["sd_id"], "sd_id", row, "taxonomy", issues)
                and _require(rec["da_id"], "da_id", row, "taxonomy", issues)):
            continue
        sd_id = rec["sd_id"]
        if sd_id in seen:
            issues.append(
                Issue("DUP_SD_ID", f"sd_id {sd_id!r} already defined in row {seen[sd_id]}",
                      ref_id=sd_id, row=row, source="taxonomy")
            )
            continue
        seen[sd_id] = row
        entries.append(TaxonomyEntry(sd_id, rec["sd_name"], rec["da_id"], rec["da_name"]))
    return entries


def _parse_researchers(source: Source, sd_ids: Set[str], issues: List[Issue]) -> List[Researcher]:
    researchers = []
    seen: Dict[str, int] = {}
    for row, rec in read_table(source, "researchers", RESEARCHER_COLUMNS[:3], issues):
        rid = rec["researcher_id"]
        if not (_require(rid, "researcher_id", row, "researchers", issues)
                and _require(rec["unit_id"], "unit_id", row, "researchers", issues)):
            continue
        if rid in seen:
            issues.append(
                Issue("DUP_RESEARCHER_ID",
                      f"researcher_id {rid!r} already listed in row {seen[rid]} (one SD per researcher)",
                      ref_id=rid, row=row, source="researchers")
            )
            continue
        seen[rid] = row
        if rec["sd_id"] not in sd_ids:
            issues.append(
                Issue("DANGLING_SD", f"sd_id {rec['sd_id']!r} is not in the taxonomy",
                      ref_id=rec["sd_id"], row=row, source="researchers")
            )
            continue
        raw_sector = rec.get("sector", "").lower() or Sector.PUBLIC.value
        try:
            sector = Sector(raw_sector)
        except ValueError:
            issues.append(
                Issue("INVALID_SECTOR", f"sector must be public or private, got {raw_sector!r}",
                      ref_id=rid, row=row, source="researchers")
            )
            continue
        researchers.append(Researcher(rid, rec["unit_id"], rec["sd_id"], sector))
    return researchers


def _parse_publications(
    source: Source, sd_ids: Set[str], issues: List[Issue]
) -> Tuple[List[Tuple[int, str, int, str, int]], Set[str]]:
    """Returns ([(row, pub_id, year, sd_id or '', citations)], all parsed pub ids)"""
    parsed = []
    seen: Dict[str, int] = {}
    for row, rec in read_table(source, "publications", PUBLICATION_COLUMNS[:2], issues):
        pid = rec["pub_id"]
        if not _require(pid, "pub_id", row, "publications", issues):
            continue
        if pid in seen:
            issues.append(
                Issue("DUP_PUB_ID", f"pub_id {pid!r} already listed in row {seen[pid]}",
                      ref_id=pid, row=row, source="publications")
            )
            continue
        seen[pid] = row
        year = _parse_int(rec["year"], "year", row, "publications", issues)
        raw_citations = rec.get("citations", "") or "0"
        citations = _parse_int(raw_citations, "citations", row, "publications", issues)
        if year is None or citations is None:
            continue
        if citations < 0:
            issues.append(
                Issue("NEGATIVE_CITATIONS", f"citations must be >= 0, got {citations}",
                      ref_id=pid, row=row, source="publications")
            )
            continue
        sd_id = rec.get("sd_id", "")
        if sd_id and sd_id not in sd_ids:
            issues.append(
                Issue("DANGLING_SD", f"sd_id {sd_id!r} is not in the taxonomy",
                      ref_id=sd_id, row=row, source="publications")
            )
            continue
        parsed.append((row, pid, year, sd_id, citations))
    return parsed, set(seen)


def _parse_authorships(
    source: Source,
    known_pubs: Set[str],
    researchers: Dict[str, Researcher],
    issues: List[Issue],
) -> Dict[str, List[str]]:
    links: Dict[str, List[str]] = defaultdict(list)
    for row, rec in read_table(source, "authorships", AUTHORSHIP_COLUMNS, issues):
        pid, rid = rec["pub_id"], rec["researcher_id"]
        if pid not in known_pubs:
            issues.append(
                Issue("DANGLING_PUB", f"pub_id {pid!r} is not in publications",
                      ref_id=pid, row=row, source="authorships")
            )
            continue
        if rid not in researchers:
            issues.append(
                Issue("DANGLING_AUTHOR", f"researcher_id {rid!r} is not in the roster",
                      ref_id=rid, row=row, source="authorships")
            )
            continue
        if rid not in links[pid]:
            links[pid].append(rid)
    return links


def majority_sd(author_ids: Iterable[str], researchers: Dict[str, Researcher]) -> Optional[str]:
    """
    SD held by most of a publication's authors.

    Ties are broken by the lexicographically smallest sd_id.

    Returns:
        sd_id, or None when no author resolves
    """
    votes = Counter(researchers[a].sd_id for a in author_ids if a in researchers)
    if not votes:
        return None
    best = max(votes.values())
    return min(sd for sd, n in votes.items() if n == best)


# =============================================================================
# Public API
# =============================================================================


def load_corpus(
    taxonomy_source: Source,
    roster_source: Source,
    publications_source: Source,
    authorships_source: Optional[Source] = None,
    years: Optional[Tuple[int, int]] = None,
    exclude_das: Optional[Iterable[str]] = None,
) -> Corpus:
    """
    Load a corpus from its four CSV sources.

    Args:
        taxonomy_source: taxonomy.csv path or stream
        roster_source: researchers.csv path or stream
        publications_source: publications.csv path or stream
        authorships_source: authorships.csv path or stream (optional when
            every publication carries an sd_id)
        years: Inclusive (from, to) publication-year window
        exclude_das: Areas to drop entirely (e.g. low coverage)

    Returns:
        Corpus with all cross-references resolved

    Raises:
        CorpusError: Listing every malformed row, duplicate id and dangling
            reference, each with its row number
    """
    issues: List[Issue] = []

    entries = _parse_taxonomy(taxonomy_source, issues)
    sd_ids = {e.sd_id for e in entries}
    roster_issues = len(issues)
    researchers = _parse_researchers(roster_source, sd_ids, issues)
    if not researchers and len(issues) == roster_issues:
        issues.append(Issue("EMPTY_ROSTER", "roster has no researchers", source="researchers"))
    by_id = {r.researcher_id: r for r in researchers}
    parsed_pubs, known_pubs = _parse_publications(publications_source, sd_ids, issues)

    links: Dict[str, List[str]] = {}
    if authorships_source is not None:
        links = _parse_authorships(authorships_source, known_pubs, by_id, issues)

    publications = []
    for row, pid, year, sd_id, citations in parsed_pubs:
        authors = links.get(pid, [])
        if not sd_id:
            sd_id = majority_sd(authors, by_id)
            if sd_id is None:
                issues.append(
                    Issue("UNRESOLVED_SD", "publication has no sd_id and no resolvable authors",
                          ref_id=pid, row=row, source="publications")
                )
                continue
        publications.append(Publication(pid, year, sd_id, citations, tuple(authors)))

    if issues:
        raise CorpusError(issues)

    if years is not None:
        year_from, year_to = years
        before = len(publications)
        publications = [p for p in publications if year_from <= p.year <= year_to]
        logger.info("Year window %d-%d kept %d of %d publications", year_from, year_to, len(publications), before)

    if exclude_das:
        excluded = set(exclude_das)
        dropped_sds = {e.sd_id for e in entries if e.da_id in excluded}
        entries = [e for e in entries if e.da_id not in excluded]
        researchers = [r for r in researchers if r.sd_id not in dropped_sds]
        kept = {r.researcher_id for r in researchers}
        publications = [
            Publication(p.pub_id, p.year, p.sd_id, p.citations, tuple(a for a in p.author_links if a in kept))
            for p in publications
            if p.sd_id not in dropped_sds
        ]
        logger.warning("Excluded areas: %s", ", ".join(sorted(excluded)))

    return Corpus(Taxonomy(tuple(entries)), tuple(researchers), tuple(publications), years)


def load_corpus_dir(directory: Union[str, Path], **options) -> Corpus:
    """
    Load the four standard files from a directory.

    authorships.csv is optional.
    """
    base = Path(directory)
    authorships = base / AUTHORSHIPS_FILE
    return load_corpus(
        base / TAXONOMY_FILE,
        base / RESEARCHERS_FILE,
        base / PUBLICATIONS_FILE,
        authorships if authorships.exists() else None,
        **options,
    )


def write_corpus(corpus: Corpus, directory: Union[str, Path]) -> List[Path]:
    """
    Write a corpus in the four CSV schemas.

    Returns:
        Paths written, in schema order
    """
    base = Path(directory)
    base.mkdir(parents=True, exist_ok=True)

    tables = {
        TAXONOMY_FILE: pd.DataFrame(
            [(e.sd_id, e.sd_name, e.da_id, e.da_name) for e in corpus.taxonomy.entries],
            columns=TAXONOMY_COLUMNS,
        ),
        RESEARCHERS_FILE: pd.DataFrame(
            [(r.researcher_id, r.unit_id, r.sd_id, r.sector.value) for r in corpus.researchers],
            columns=RESEARCHER_COLUMNS,
        ),
        PUBLICATIONS_FILE: pd.DataFrame(
            [(p.pub_id, p.year, p.sd_id, p.citations) for p in corpus.publications],
            columns=PUBLICATION_COLUMNS,
        ),
        AUTHORSHIPS_FILE: pd.DataFrame(
            [(p.pub_id, a) for p in corpus.publications for a in sorted(p.author_links)],
            columns=AUTHORSHIP_COLUMNS,
        ),
    }

    written = []
    for filename, frame in tables.items():
        path = base / filename
        frame.to_csv(path, index=False, lineterminator="\n", encoding="utf-8")
        written.append(path)
    return written


def load_coverage(source: Source) -> Dict[str, Tuple[int, int]]:
    """
    Read coverage.csv: da_id,indexed_count,total_output_count.

    Raises:
        CorpusError: On malformed rows
    """
    issues: List[Issue] = []
    coverage: Dict[str, Tuple[int, int]] = {}
    for row, rec in read_table(source, "coverage", COVERAGE_COLUMNS, issues):
        indexed = _parse_int(rec["indexed_count"], "indexed_count", row, "coverage", issues)
        total = _parse_int(rec["total_output_count"], "total_output_count", row, "coverage", issues)
        if indexed is None or total is None:
            continue
        coverage[rec["da_id"]] = (indexed, total)
    if issues:
        raise CorpusError(issues)
    return coverage
