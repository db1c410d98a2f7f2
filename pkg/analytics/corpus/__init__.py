"""
Corpus module: domain model, CSV ingestion and validation.

Usage:
    from analytics.corpus import load_corpus_dir, validate_corpus

    corpus = load_corpus_dir("data/italy", years=(2001, 2003))
    report = validate_corpus(corpus)
    report.accepted
"""
from .model import Corpus, Publication, Researcher, Sector, Taxonomy, TaxonomyEntry
from .loader import (
    load_corpus,
    load_corpus_dir,
    load_coverage,
    majority_sd,
    write_corpus,
)
from .validation import (
    DEFAULT_COVERAGE_THRESHOLD,
    CoverageFlag,
    Finding,
    ValidationReport,
    coverage_ratio,
    coverage_screen,
    excluded_areas,
    validate_corpus,
)

__all__ = [
    "Corpus",
    "Publication",
    "Researcher",
    "Sector",
    "Taxonomy",
    "TaxonomyEntry",
    "load_corpus",
    "load_corpus_dir",
    "load_coverage",
    "majority_sd",
    "write_corpus",
    "DEFAULT_COVERAGE_THRESHOLD",
    "CoverageFlag",
    "Finding",
    "ValidationReport",
    "coverage_ratio",
    "coverage_screen",
    "excluded_areas",
    "validate_corpus",
]
