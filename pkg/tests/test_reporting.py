#!/usr/bin/env python3
"""Tests for report rendering."""
import hashlib
import json
import os
import sys

# Add parent directory to path
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

import pytest

from core.config import Config
from core.reporting import Report, file_digest, format_cell, write_report


@pytest.fixture
def report(tmp_path):
    source = tmp_path / "taxonomy.csv"
    source.write_text("sd_id,sd_name,da_id,da_name\n", encoding="utf-8")
    report = Report("stats", ["da_id", "pi", "rank", "ratio"], config={"years": "2001-2003", "counting": "whole"})
    report.inputs["taxonomy"] = source
    report.add_row("DA1", 1011 / 3108, 8, None)
    report.add_row("DA3", 4116 / 3150, 1, 2.888)
    return report


def test_format_cell():
    """Floats get six decimals, None is empty, booleans are lowercase."""
    assert format_cell(0.5) == "0.500000"
    assert format_cell(None) == ""
    assert format_cell(True) == "true"
    assert format_cell(7) == "7"


def test_tsv_layout(report, tmp_path):
    """TSV has commented metadata lines, then the table."""
    lines = report.to_tsv().splitlines()
    digest = hashlib.sha256(b"sd_id,sd_name,da_id,da_name\n").hexdigest()
    assert lines[0] == f"# tool: fieldnorm {Config.VERSION}"
    assert lines[1] == "# command: stats"
    assert lines[2:4] == ["# config.counting: whole", "# config.years: 2001-2003"]
    assert lines[4] == f"# input.taxonomy: taxonomy.csv sha256={digest}"
    assert lines[5] == "da_id\tpi\trank\tratio"
    assert lines[6] == "DA1\t0.325290\t8\t"
    assert lines[7] == "DA3\t1.306667\t1\t2.888000"


def test_json_mirrors_tsv(report):
    """JSON carries the same columns and rows plus a metadata object."""
    payload = json.loads(report.to_json())
    assert payload["columns"] == ["da_id", "pi", "rank", "ratio"]
    assert payload["rows"][0] == ["DA1", 0.32529, 8, None]
    assert payload["metadata"]["command"] == "stats"
    assert payload["metadata"]["inputs"]["taxonomy"]["file"] == "taxonomy.csv"


def test_rendering_is_repeatable(report):
    """The same report renders to the same bytes."""
    assert report.render("tsv") == report.render("tsv")
    assert report.render("json") == report.render("json")


def test_row_width_checked(report):
    """Rows must match the columns."""
    with pytest.raises(ValueError):
        report.add_row("DA9", 1.0)


def test_write_report_to_file(report, tmp_path):
    """write_report writes the rendered text and returns the path."""
    path = write_report(report, "json", tmp_path / "out" / "report.json")
    assert path.read_text(encoding="utf-8") == report.to_json()
    assert file_digest(path) == hashlib.sha256(path.read_bytes()).hexdigest()


def test_write_report_to_stdout(report, capsys):
    """Without an output path the report goes to stdout."""
    assert write_report(report, "tsv") is None
    assert capsys.readouterr().out == report.to_tsv()
