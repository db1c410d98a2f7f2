#!/usr/bin/env python3
"""
Corpus validation and coverage checks.

validate_corpus never raises: every violated invariant becomes a finding in
the returned ValidationReport.
"""

from collections import Counter
from dataclasses import dataclass
from typing import List, Mapping, Tuple

from core.errors import FieldnormError
from analytics.corpus.model import Corpus, Sector

DEFAULT_COVERAGE_THRESHOLD = 0.90


@dataclass(frozen=True)
class Finding:
    """One validation finding: (code, message, offending id)."""

    code: str
    message: str
    ref_id: str = ""


@dataclass(frozen=True)
class ValidationReport:
    """Errors and warnings found in a corpus; empty errors means accepted."""

    errors: Tuple[Finding, ...] = ()
    warnings: Tuple[Finding, ...] = ()

    @property
    def accepted(self) -> bool:
        return not self.errors

    def codes(self) -> List[str]:
        return [f.code for f in self.errors]


@dataclass(frozen=True)
class CoverageFlag:
    """Coverage of one area against the representativeness threshold."""

    da_id: str
    ratio: float
    passes: bool


def _ordered(findings: List[Finding]) -> Tuple[Finding, ...]:
    return tuple(sorted(findings, key=lambda f: (f.code, f.ref_id, f.message)))


def validate_corpus(corpus: Corpus) -> ValidationReport:
    """
    Check every corpus invariant.

    Args:
        corpus: Corpus to check

    Returns:
        ValidationReport ordered by code, then id
    """
    errors: List[Finding] = []
    warnings: List[Finding] = []
    taxonomy = corpus.taxonomy

    # Taxonomy
    if not taxonomy.entries:
        errors.append(Finding("EMPTY_TAXONOMY", "taxonomy has no disciplines"))
    sd_counts = Counter(e.sd_id for e in taxonomy.entries)
    for sd_id, n in sd_counts.items():
        if n > 1:
            errors.append(Finding("DUP_SD_ID", f"sd_id defined {n} times", sd_id))

    # Roster
    if not corpus.researchers:
        errors.append(Finding("EMPTY_ROSTER", "roster has no researchers"))
    researcher_counts = Counter(r.researcher_id for r in corpus.researchers)
    for rid, n in researcher_counts.items():
        if n > 1:
            errors.append(Finding("DUP_RESEARCHER_ID", f"researcher listed {n} times (one SD per researcher)", rid))
    for r in corpus.researchers:
        if not taxonomy.has_sd(r.sd_id):
            errors.append(Finding("UNKNOWN_SD", f"researcher {r.researcher_id} has unknown sd_id", r.sd_id))
        if not isinstance(r.sector, Sector):
            errors.append(Finding("INVALID_SECTOR", f"sector {r.sector!r} is not public/private", r.researcher_id))

    # Publications
    pub_counts = Counter(p.pub_id for p in corpus.publications)
    for pid, n in pub_counts.items():
        if n > 1:
            errors.append(Finding("DUP_PUB_ID", f"pub_id listed {n} times", pid))

    index = corpus.researcher_index
    staffed = {(r.unit_id, r.sd_id) for r in corpus.researchers}
    unstaffed_credit = set()
    for p in corpus.publications:
        if not taxonomy.has_sd(p.sd_id):
            errors.append(Finding("UNKNOWN_SD", f"publication {p.pub_id} has unknown sd_id", p.sd_id))
        if p.citations < 0:
            errors.append(Finding("NEGATIVE_CITATIONS", f"citations = {p.citations}", p.pub_id))
        if not p.author_links:
            errors.append(Finding("EMPTY_AUTHORS", "publication has no authors", p.pub_id))
        for link in p.author_links:
            if link not in index:
                errors.append(Finding("DANGLING_AUTHOR", f"publication {p.pub_id} links unknown researcher", link))
            elif (index[link].unit_id, p.sd_id) not in staffed:
                unstaffed_credit.add((p.pub_id, index[link].unit_id))

    for pid, unit in sorted(unstaffed_credit):
        warnings.append(
            Finding("UNSTAFFED_CREDIT", f"unit {unit} has no staff in the SD of {pid}; credit dropped", pid)
        )

    # Disciplines without staff or output
    staff_per_sd = Counter(r.sd_id for r in corpus.researchers)
    pubs_per_sd = Counter(p.sd_id for p in corpus.publications)
    for sd_id in taxonomy.sd_ids():
        if staff_per_sd[sd_id] == 0:
            warnings.append(Finding("SD_WITHOUT_STAFF", "discipline has no researchers", sd_id))
        elif pubs_per_sd[sd_id] == 0:
            warnings.append(Finding("ZERO_OUTPUT_SD", "discipline has no publications; excluded from normalization", sd_id))

    return ValidationReport(_ordered(errors), _ordered(warnings))


# =============================================================================
# Coverage
# =============================================================================


def coverage_ratio(indexed_count: int, total_output_count: int) -> float:
    """
    Share of an area's declared research output that is indexed.

    Args:
        indexed_count: Indexed publications (>= 0)
        total_output_count: All declared research products (> 0)

    Returns:
        min(indexed / total, 1.0)

    Raises:
        FieldnormError: UNDEFINED_RATIO when total_output_count is 0
    """
    if indexed_count < 0:
        raise FieldnormError(f"indexed_count must be >= 0, got {indexed_count}", "INVALID_VALUE")
    if total_output_count <= 0:
        raise FieldnormError(
            f"coverage ratio undefined for total_output_count = {total_output_count}", "UNDEFINED_RATIO"
        )
    return min(indexed_count / total_output_count, 1.0)


def coverage_screen(
    coverage: Mapping[str, Tuple[int, int]],
    threshold: float = DEFAULT_COVERAGE_THRESHOLD,
) -> List[CoverageFlag]:
    """
    Flag areas whose coverage falls below the threshold.

    Args:
        coverage: da_id -> (indexed_count, total_output_count)
        threshold: Minimum acceptable ratio

    Returns:
        One CoverageFlag per area, ordered by da_id
    """
    return [
        CoverageFlag(da_id, ratio, ratio >= threshold)
        for da_id, ratio in (
            (da_id, coverage_ratio(*coverage[da_id])) for da_id in sorted(coverage)
        )
    ]


def excluded_areas(flags: List[CoverageFlag]) -> List[str]:
    """Area ids that fail the coverage check"""
    return [f.da_id for f in flags if not f.passes]
