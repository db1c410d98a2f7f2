#!/usr/bin/env python3
"""Tests for corpus validation and coverage screening."""
import os
import sys

# Add parent directory to path
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

import pytest

from core.errors import FieldnormError
from analytics.corpus import (
    Corpus,
    Publication,
    Researcher,
    coverage_ratio,
    coverage_screen,
    excluded_areas,
    validate_corpus,
)
from tests.fixtures import make_corpus, make_taxonomy, two_unit_corpus


def test_clean_corpus_accepted():
    """A consistent corpus has no errors."""
    report = validate_corpus(two_unit_corpus())
    assert report.accepted
    assert report.errors == ()


def test_empty_roster():
    """No researchers is an EMPTY_ROSTER error."""
    report = validate_corpus(Corpus(make_taxonomy({"D1": ["S1"]})))
    assert not report.accepted
    assert "EMPTY_ROSTER" in report.codes()


def test_empty_taxonomy():
    """No disciplines is an EMPTY_TAXONOMY error."""
    assert "EMPTY_TAXONOMY" in validate_corpus(Corpus(make_taxonomy({}))).codes()


def test_in_memory_violations_reported():
    """Duplicates, unknown SDs and bad publications are all reported."""
    corpus = Corpus(
        make_taxonomy({"D1": ["S1"]}),
        (Researcher("R1", "U1", "S1"), Researcher("R1", "U2", "S1"), Researcher("R2", "U1", "S9")),
        (
            Publication("P1", 2002, "S1", 0, ("R1",)),
            Publication("P1", 2002, "S1", 0, ("R1",)),
            Publication("P2", 2002, "S1", -1, ("R1",)),
            Publication("P3", 2002, "S1", 0, ()),
            Publication("P4", 2002, "S1", 0, ("ghost",)),
        ),
    )
    codes = set(validate_corpus(corpus).codes())
    assert codes == {
        "DUP_RESEARCHER_ID",
        "UNKNOWN_SD",
        "DUP_PUB_ID",
        "NEGATIVE_CITATIONS",
        "EMPTY_AUTHORS",
        "DANGLING_AUTHOR",
    }


def test_errors_are_ordered():
    """Findings come back sorted by code, then id."""
    corpus = Corpus(
        make_taxonomy({"D1": ["S1"]}),
        (Researcher("R1", "U1", "S1"),),
        (Publication("P2", 2002, "S1", 0, ()), Publication("P1", 2002, "S1", 0, ())),
    )
    errors = validate_corpus(corpus).errors
    assert [(f.code, f.ref_id) for f in errors] == [("EMPTY_AUTHORS", "P1"), ("EMPTY_AUTHORS", "P2")]


def test_warnings_for_idle_disciplines():
    """SDs without staff or without output produce warnings, not errors."""
    corpus = make_corpus(
        {"D1": ["S1", "S2", "S3"]},
        {("U1", "S1"): 2, ("U1", "S2"): 1},
        {("U1", "S1"): 3},
    )
    report = validate_corpus(corpus)
    assert report.accepted
    assert {(f.code, f.ref_id) for f in report.warnings} == {
        ("SD_WITHOUT_STAFF", "S3"),
        ("ZERO_OUTPUT_SD", "S2"),
    }


def test_unstaffed_credit_warning():
    """A unit credited in an SD where it has no staff is flagged."""
    corpus = make_corpus(
        {"D1": ["S1", "S2"]},
        {("U1", "S1"): 1, ("U2", "S2"): 1},
        {("U2", "S2"): 1},
        joint=[("S2", ["U1-S1-1", "U2-S2-1"])],
    )
    warnings = validate_corpus(corpus).warnings
    assert [(f.code, f.ref_id) for f in warnings] == [("UNSTAFFED_CREDIT", "J0000"), ("ZERO_OUTPUT_SD", "S1")]


# ============= COVERAGE =============


@pytest.mark.parametrize(
    "indexed,total,expected",
    [(95, 100, 0.95), (89, 100, 0.89), (0, 10, 0.0), (120, 100, 1.0)],
)
def test_coverage_ratio(indexed, total, expected):
    """Ratio is indexed / total, capped at 1."""
    assert coverage_ratio(indexed, total) == pytest.approx(expected)


def test_coverage_ratio_undefined_for_zero_total():
    """A zero denominator is an UNDEFINED_RATIO error."""
    with pytest.raises(FieldnormError) as exc:
        coverage_ratio(5, 0)
    assert exc.value.code == "UNDEFINED_RATIO"


def test_coverage_screen_flags_low_areas():
    """Areas below the threshold fail; the boundary passes."""
    flags = coverage_screen({"DA9": (85, 100), "DA1": (90, 100), "DA2": (99, 100)}, threshold=0.90)
    assert [(f.da_id, f.passes) for f in flags] == [("DA1", True), ("DA2", True), ("DA9", False)]
    assert excluded_areas(flags) == ["DA9"]
