#!/usr/bin/env python3
"""Tests for publication intensity, normalization and distribution statistics."""
import math
import os
import sys

# Add parent directory to path
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from core.errors import IndicatorError
from analytics.corpus import Corpus, Publication
from analytics.indicators import (
    POOLED_UNIT,
    QUALITY_LABEL,
    CountingMode,
    Normalizer,
    Scope,
    area_normalized_intensity,
    area_summary,
    credit_frame,
    describe,
    distinct_pool_table,
    intensity_table,
    normalized_sd_intensity,
    pooled_sd_table,
    quality_ownership_intensity,
    sd_distribution_stats,
    theta_table,
    variation_coefficient,
)
from analytics.synth import ab_scenario, default_config, generate_corpus, table1_corpus
from tests.fixtures import make_corpus, two_unit_corpus


def assert_neutral(corpus, mode=CountingMode.WHOLE):
    """Staff-weighted mean pqcn is 1 in every non-degenerate SD"""
    normalizer = Normalizer(corpus, mode)
    for sd_id in normalizer.sd_table.scope_ids():
        if sd_id in normalizer.degenerate_sds:
            continue
        cells = normalizer.sd_table.cells_for(sd_id)
        weighted = math.fsum(normalizer.pqcn(c.unit_id, sd_id) * c.researcher_count for c in cells)
        staff = sum(c.researcher_count for c in cells)
        assert weighted / staff == pytest.approx(1.0, abs=1e-12)


# ============= INTENSITY =============


def test_whole_counting_sd_cells():
    """Whole counting credits a co-authored publication to both units."""
    table = intensity_table(two_unit_corpus(), Scope.SD, CountingMode.WHOLE)
    values = {(c.unit_id, c.scope_id): c.intensity for c in table.cells}
    assert values == {
        ("U1", "S1"): pytest.approx(2.5),
        ("U1", "S2"): pytest.approx(0.5),
        ("U2", "S1"): pytest.approx(2.0),
        ("U2", "S2"): pytest.approx(2.0),
    }
    assert table.get("U1", "S1").da_id == "D1"


def test_fractional_counting_splits_joint_publications():
    """Fractional counting splits a publication by author share."""
    table = intensity_table(two_unit_corpus(), Scope.SD, CountingMode.FRACTIONAL)
    assert table.get("U1", "S1").publication_count == pytest.approx(4.5)
    assert table.get("U2", "S1").publication_count == pytest.approx(1.5)


def test_fractional_credits_sum_to_one_per_publication():
    """Each publication hands out exactly one credit in total."""
    credits = credit_frame(two_unit_corpus(), CountingMode.FRACTIONAL)
    totals = credits.groupby("pub_id")["credit"].sum()
    assert list(totals) == pytest.approx([1.0] * len(totals))


def test_area_level_intensity():
    """DA cells aggregate the unit's SDs."""
    table = intensity_table(two_unit_corpus(), Scope.DA)
    assert table.values("D1") == {"U1": pytest.approx(1.5), "U2": pytest.approx(2.0)}
    assert table.get("U1", "D1").researcher_count == 4


def test_cells_only_where_staff_exists():
    """Units without staff in an SD get no cell there."""
    corpus = make_corpus({"D1": ["S1", "S2"]}, {("U1", "S1"): 2, ("U2", "S2"): 1}, {("U1", "S1"): 2})
    table = intensity_table(corpus, Scope.SD)
    assert table.get("U1", "S2") is None
    assert table.get("U2", "S2").intensity == 0.0


def test_pooled_sd_table():
    """Pooled intensity is total credit over total staff."""
    pooled = pooled_sd_table(two_unit_corpus())
    assert pooled.get(POOLED_UNIT, "S1").intensity == pytest.approx(7 / 3)
    assert pooled.get(POOLED_UNIT, "S2").intensity == pytest.approx(7 / 5)


def test_empty_roster_gives_empty_table():
    """No staff means no cells."""
    corpus = make_corpus({"D1": ["S1"]}, {}, {})
    assert intensity_table(corpus).cells == ()


def test_quality_weighted_is_labeled_substitute():
    """The quality mode is named as a substitute indicator."""
    assert CountingMode.QUALITY_WEIGHTED.label == QUALITY_LABEL
    assert "substitute" in QUALITY_LABEL


def test_quality_weighting_rewards_cited_publications():
    """A publication cited above its SD mean earns more than one credit."""
    base = make_corpus({"D1": ["S1"]}, {("U1", "S1"): 1, ("U2", "S1"): 1}, {})
    corpus = Corpus(
        base.taxonomy,
        base.researchers,
        (
            Publication("P1", 2002, "S1", 9, ("U1-S1-1",)),
            Publication("P2", 2002, "S1", 1, ("U2-S1-1",)),
        ),
    )
    # mean citations 5: weights 10/6 and 2/6
    assert quality_ownership_intensity(corpus, "U1", "S1") == pytest.approx(10 / 6)
    assert quality_ownership_intensity(corpus, "U2", "D1") == pytest.approx(2 / 6)


def test_quality_unknown_scope():
    """An id that is neither SD nor DA is rejected."""
    with pytest.raises(IndicatorError) as exc:
        quality_ownership_intensity(two_unit_corpus(), "U1", "NOPE")
    assert exc.value.code == "UNKNOWN_SCOPE"


# ============= NORMALIZATION =============


def test_pqcn_values():
    """pqcn divides the unit's SD intensity by the pooled one."""
    corpus = two_unit_corpus()
    assert normalized_sd_intensity(corpus, "U1", "S1") == pytest.approx(2.5 / (7 / 3))
    assert normalized_sd_intensity(corpus, "U2", "S2") == pytest.approx(2.0 / 1.4)


def test_theta_is_staff_weighted_mean():
    """theta weights each SD's pqcn by the unit's staff there."""
    result = area_normalized_intensity(two_unit_corpus(), "U1", "D1")
    expected = (2 * (2.5 / (7 / 3)) + 2 * (0.5 / 1.4)) / 4
    assert result.theta == pytest.approx(expected)
    assert [sd for sd, _, _ in result.contributions] == ["S1", "S2"]


@pytest.mark.parametrize("mode", list(CountingMode))
def test_normalization_neutrality(mode):
    """Staff-weighted mean pqcn is 1.0 in every SD, every counting mode."""
    assert_neutral(two_unit_corpus(), mode)
    assert_neutral(generate_corpus(default_config()), mode)
    assert_neutral(ab_scenario(), mode)


def test_homogeneous_units_have_theta_one():
    """A unit that is the whole SD population has theta 1."""
    corpus = make_corpus({"D1": ["S1", "S2"]}, {("U1", "S1"): 3, ("U1", "S2"): 2}, {("U1", "S1"): 4, ("U1", "S2"): 9})
    assert area_normalized_intensity(corpus, "U1", "D1").theta == pytest.approx(1.0)


def test_missing_cell_and_unit():
    """Queries for units without staff raise with the right code."""
    corpus = make_corpus({"D1": ["S1"], "D2": ["S2"]}, {("U1", "S1"): 1, ("U2", "S2"): 1}, {("U1", "S1"): 1, ("U2", "S2"): 1})
    with pytest.raises(IndicatorError) as exc:
        normalized_sd_intensity(corpus, "U1", "S2")
    assert exc.value.code == "MISSING_CELL"
    with pytest.raises(IndicatorError) as exc:
        area_normalized_intensity(corpus, "U1", "D2")
    assert exc.value.code == "MISSING_UNIT"


def test_zero_output_sd_is_degenerate():
    """An SD without output cannot be normalized and is left out of theta."""
    corpus = make_corpus({"D1": ["S1", "S2"]}, {("U1", "S1"): 1, ("U1", "S2"): 1, ("U2", "S2"): 1}, {("U1", "S1"): 2})
    with pytest.raises(IndicatorError) as exc:
        normalized_sd_intensity(corpus, "U1", "S2")
    assert exc.value.code == "DEGENERATE_SD"

    assert area_normalized_intensity(corpus, "U1", "D1").theta == pytest.approx(1.0)
    with pytest.raises(IndicatorError) as exc:
        area_normalized_intensity(corpus, "U2", "D1")
    assert exc.value.code == "DEGENERATE_AREA"


def test_theta_table_sorted_and_skips_degenerate():
    """theta_table is ordered by (da_id, unit_id) without degenerate units."""
    corpus = make_corpus(
        {"D1": ["S1"], "D2": ["S2"]},
        {("U2", "S1"): 1, ("U1", "S1"): 1, ("U1", "S2"): 1},
        {("U2", "S1"): 1, ("U1", "S1"): 3},
    )
    rows = theta_table(corpus)
    assert [(r.da_id, r.unit_id) for r in rows] == [("D1", "U1"), ("D1", "U2")]


def test_ab_thetas_near_one():
    """Both A/B units are at the field average once normalized."""
    corpus = ab_scenario()
    assert area_normalized_intensity(corpus, "A", "AB").theta == pytest.approx(1.0, abs=0.02)
    assert area_normalized_intensity(corpus, "B", "AB").theta == pytest.approx(1.0, abs=0.02)


# ============= STATISTICS =============

# (da, mean, std, published coefficient)
PUBLISHED_SPREAD = [
    ("DA1", 0.316, 0.110, 0.348),
    ("DA2", 1.046, 0.498, 0.476),
    ("DA3", 1.322, 0.419, 0.317),
    ("DA4", 0.499, 0.290, 0.582),
    ("DA5", 0.813, 0.327, 0.402),
    ("DA6", 0.758, 0.447, 0.589),
    ("DA7", 0.363, 0.189, 0.521),
    ("DA8", 0.468, 0.355, 0.758),
]


@pytest.mark.parametrize("da,mean,std,coefficient", PUBLISHED_SPREAD)
def test_variation_coefficients_match_published(da, mean, std, coefficient):
    """std / mean reproduces every published coefficient."""
    assert variation_coefficient(std, mean) == pytest.approx(coefficient, abs=0.001)


def test_fertility_ratios_match_published():
    """Most vs least fertile SD: 39 times in engineering, 23 in medicine."""
    engineering = describe([0.030, 0.309, 1.172], "DA8")
    medicine = describe([0.086, 0.724, 1.978], "DA6")
    assert engineering.fertility_ratio == pytest.approx(39.07, abs=0.1)
    assert medicine.fertility_ratio == pytest.approx(23.0, abs=0.1)


def test_describe_sample_statistics():
    """Sample std uses n - 1; min <= median, mean <= max."""
    stats = describe([1.0, 2.0, 3.0, 6.0], "D1")
    assert stats.n_sds == 4
    assert stats.mean == pytest.approx(3.0)
    assert stats.median == pytest.approx(2.5)
    assert stats.std_dev == pytest.approx(math.sqrt(14 / 3))
    assert stats.min <= stats.mean <= stats.max
    assert stats.fertility_ratio == pytest.approx(6.0)


def test_single_sd_area_has_zero_spread():
    """One SD gives std 0 and coefficient 0."""
    stats = describe([0.7], "D1")
    assert (stats.std_dev, stats.variation_coeff) == (0.0, 0.0)


def test_zero_minimum_has_no_fertility_ratio():
    """max / min is undefined when the least fertile SD has no output."""
    assert describe([0.0, 1.0]).fertility_ratio is None


def test_empty_area_rejected():
    """No values raises EMPTY_AREA."""
    with pytest.raises(IndicatorError) as exc:
        describe([], "D9")
    assert exc.value.code == "EMPTY_AREA"


def test_distribution_stats_need_pooled_table():
    """Per-unit tables are refused."""
    corpus = two_unit_corpus()
    with pytest.raises(IndicatorError) as exc:
        sd_distribution_stats(intensity_table(corpus, Scope.SD), "D1")
    assert exc.value.code == "NOT_POOLED"
    stats = sd_distribution_stats(pooled_sd_table(corpus), "D1")
    assert (stats.min, stats.max) == (pytest.approx(1.4), pytest.approx(7 / 3))


# ============= AREA SUMMARY =============

# (da, universities, researchers, rank, publications, rank, PI, rank)
PUBLISHED_AREAS = {
    "DA1": (59, 3108, 5, 1011, 6, 0.33, 8),
    "DA2": (57, 2516, 7, 2787, 4, 1.11, 2),
    "DA3": (58, 3150, 4, 4116, 3, 1.31, 1),
    "DA4": (48, 1291, 8, 569, 8, 0.44, 6),
    "DA5": (63, 4866, 2, 4257, 2, 0.87, 3),
    "DA6": (57, 10571, 1, 7922, 1, 0.75, 4),
    "DA7": (49, 2964, 6, 1002, 7, 0.34, 7),
    "DA8": (60, 4350, 3, 2019, 5, 0.46, 5),
}


def test_area_summary_reproduces_benchmark_table():
    """Counts, PI and all three rank columns match the published areas."""
    rows = area_summary(table1_corpus())
    assert [r.da_id for r in rows] == sorted(PUBLISHED_AREAS)
    for row in rows:
        units, researchers, r_rank, pubs, p_rank, pi, pi_rank = PUBLISHED_AREAS[row.da_id]
        assert row.units == units
        assert row.researchers == researchers
        assert row.publications == pubs
        assert row.intensity == pytest.approx(pi, abs=0.005)
        assert (row.researchers_rank, row.publications_rank, row.intensity_rank) == (r_rank, p_rank, pi_rank)
        assert row.stats.n_sds == 1
        assert row.stats.std_dev == 0.0


def test_area_summary_counts_joint_publications_once():
    """A publication co-authored by two units counts once in the area totals."""
    corpus = make_corpus(
        {"D1": ["S1"]},
        {("U1", "S1"): 1, ("U2", "S1"): 1},
        {},
        joint=[("S1", ["U1-S1-1", "U2-S1-1"])],
    )
    (row,) = area_summary(corpus)
    assert (row.units, row.researchers, row.publications) == (2, 2, 1.0)
    assert row.intensity == pytest.approx(0.5)
    assert row.stats.mean == pytest.approx(0.5)
    # the normalization baseline still sums unit credits
    assert pooled_sd_table(corpus).get(POOLED_UNIT, "S1").intensity == pytest.approx(1.0)


def test_distinct_pool_table_on_two_units():
    """Distinct pooling counts the joint S1 publication once."""
    corpus = two_unit_corpus()
    by_sd = distinct_pool_table(corpus, Scope.SD)
    assert by_sd.get(POOLED_UNIT, "S1").intensity == pytest.approx(6 / 3)
    assert by_sd.get(POOLED_UNIT, "S2").intensity == pytest.approx(7 / 5)
    by_da = distinct_pool_table(corpus, Scope.DA, CountingMode.FRACTIONAL)
    assert by_da.get(POOLED_UNIT, "D1").publication_count == pytest.approx(13.0)


# ============= WORKED EXAMPLES =============


def two_sd_fertility_corpus():
    """SD s: both units 10 staff / 5 pubs; SD t: U1 10 staff / 20 pubs, U2 10 staff / 0 pubs"""
    return make_corpus(
        {"D1": ["s", "t"]},
        {("U1", "s"): 10, ("U1", "t"): 10, ("U2", "s"): 10, ("U2", "t"): 10},
        {("U1", "s"): 5, ("U1", "t"): 20, ("U2", "s"): 5},
    )


def test_pqcn_worked_example():
    """Pooled t intensity is 1.0, so U1 scores 2.0 and U2 scores 0.0 there."""
    corpus = two_sd_fertility_corpus()
    assert normalized_sd_intensity(corpus, "U1", "t") == pytest.approx(2.0)
    assert normalized_sd_intensity(corpus, "U2", "t") == pytest.approx(0.0)
    assert normalized_sd_intensity(corpus, "U1", "s") == pytest.approx(1.0)


def test_theta_worked_example():
    """theta(U1) = (1.0 x 10 + 2.0 x 10) / 20, theta(U2) = (1.0 x 10 + 0.0 x 10) / 20."""
    corpus = two_sd_fertility_corpus()
    assert area_normalized_intensity(corpus, "U1", "D1").theta == pytest.approx(1.5)
    assert area_normalized_intensity(corpus, "U2", "D1").theta == pytest.approx(0.5)


def test_quality_worked_example():
    """Citations {0, 8} with SD mean 4, sole author, one researcher: 1/5 + 9/5 = 2.0."""
    base = make_corpus({"D1": ["S1"]}, {("U1", "S1"): 1}, {})
    corpus = Corpus(
        base.taxonomy,
        base.researchers,
        (
            Publication("P1", 2002, "S1", 0, ("U1-S1-1",)),
            Publication("P2", 2002, "S1", 8, ("U1-S1-1",)),
        ),
    )
    assert quality_ownership_intensity(corpus, "U1", "S1") == pytest.approx(2.0)


# ============= PROPERTIES =============

UNITS = ("U1", "U2", "U3")
SDS = ("S1", "S2")


@st.composite
def shared_corpora(draw, citations=None):
    """Three units over two SDs of one area, with co-authored publications across units and SDs"""
    staff = {(u, sd): draw(st.integers(0, 3)) for u in UNITS for sd in SDS}
    assume(any(staff.values()))
    base = make_corpus({"D1": list(SDS)}, staff, {})
    ids = [r.researcher_id for r in base.researchers]
    drawn = draw(
        st.lists(
            st.tuples(st.sampled_from(SDS), st.lists(st.sampled_from(ids), min_size=1, max_size=4, unique=True)),
            max_size=12,
        )
    )
    publications = tuple(
        Publication(f"P{k:03d}", 2002, sd, citations if citations is not None else draw(st.integers(0, 20)), tuple(authors))
        for k, (sd, authors) in enumerate(drawn)
    )
    return Corpus(base.taxonomy, base.researchers, publications)


def staffed_share(corpus, publication):
    """Share of a publication's authors whose unit has staff in its SD"""
    index = corpus.researcher_index
    staffed = {(r.unit_id, r.sd_id) for r in corpus.researchers}
    hits = sum(1 for a in publication.author_links if (index[a].unit_id, publication.sd_id) in staffed)
    return hits / len(publication.author_links)


@settings(max_examples=60, deadline=None)
@given(corpus=shared_corpora())
def test_credit_totals_conserve(corpus):
    """Whole credits cover every publication; fractional credits add up to the publication count."""
    n_pubs = len(corpus.publications)
    whole = intensity_table(corpus, Scope.DA, CountingMode.WHOLE)
    fractional = intensity_table(corpus, Scope.DA, CountingMode.FRACTIONAL)
    assert math.fsum(c.publication_count for c in fractional.cells) == pytest.approx(n_pubs, abs=1e-9)
    assert sum(c.publication_count for c in whole.cells) >= n_pubs

    index = corpus.researcher_index
    if all(len({index[a].unit_id for a in p.author_links}) == 1 for p in corpus.publications):
        assert sum(c.publication_count for c in whole.cells) == n_pubs

    # at SD level authors without staff in the publication's SD are dropped
    by_sd = intensity_table(corpus, Scope.SD, CountingMode.FRACTIONAL)
    for sd_id in SDS:
        expected = math.fsum(staffed_share(corpus, p) for p in corpus.publications if p.sd_id == sd_id)
        assert math.fsum(c.publication_count for c in by_sd.cells_for(sd_id)) == pytest.approx(expected, abs=1e-9)


@settings(max_examples=60, deadline=None)
@given(corpus=shared_corpora(), mode=st.sampled_from(list(CountingMode)))
def test_staff_weighted_theta_mean_is_one(corpus, mode):
    """Over an area, theta weighted by the staff it covers averages exactly 1."""
    thetas = Normalizer(corpus, mode).area_thetas("D1")
    assume(thetas)
    weights = {u: sum(staff for _, _, staff in t.contributions) for u, t in thetas.items()}
    weighted = math.fsum(t.theta * weights[u] for u, t in thetas.items())
    assert weighted / sum(weights.values()) == pytest.approx(1.0, abs=1e-9)


@settings(max_examples=40, deadline=None)
@given(data=st.data(), citations=st.integers(0, 9))
def test_uniform_citations_make_quality_fractional(data, citations):
    """With the same citation count everywhere the quality weights collapse to 1."""
    corpus = data.draw(shared_corpora(citations=citations))
    quality = intensity_table(corpus, Scope.SD, CountingMode.QUALITY_WEIGHTED)
    fractional = intensity_table(corpus, Scope.SD, CountingMode.FRACTIONAL)
    assert [c.unit_id for c in quality.cells] == [c.unit_id for c in fractional.cells]
    for q, f in zip(quality.cells, fractional.cells):
        assert q.intensity == pytest.approx(f.intensity, abs=1e-12)
