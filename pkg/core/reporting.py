#!/usr/bin/env python3
"""
Report emission: a metadata header plus one table, as TSV or JSON.

Headers carry the tool version, the command, a sorted echo of the run
configuration and the SHA-256 of every input file. Nothing time- or
host-dependent goes into a report, so identical inputs and configuration
give byte-identical output.
"""

import hashlib
import json
import math
import sys
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

import pandas as pd

from core.config import Config

FLOAT_DECIMALS = 6


def file_digest(path: Union[str, Path]) -> str:
    """SHA-256 hex digest of a file"""
    digest = hashlib.sha256()
    with open(path, "rb") as f:
        for chunk in iter(lambda: f.read(65536), b""):
            digest.update(chunk)
    return digest.hexdigest()


def _plain(value: Any) -> Any:
    """JSON-ready form of a cell or config value"""
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, float):
        if not math.isfinite(value):
            return None
        return round(value, FLOAT_DECIMALS)
    if isinstance(value, Path):
        return str(value)
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    return value


def format_cell(value: Any) -> str:
    """TSV text of a cell: floats with 6 decimals, None as empty, bools lowercase"""
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, Enum):
        return str(value.value)
    if isinstance(value, float):
        if not math.isfinite(value):
            return ""
        return f"{value:.{FLOAT_DECIMALS}f}"
    if isinstance(value, (list, tuple)):
        return ",".join(format_cell(v) for v in value)
    return str(value)


@dataclass
class Report:
    """
    One report artifact.

    Attributes:
        command: Subcommand that produced it
        columns: Column names
        rows: Table rows, one value per column
        config: Run configuration echoed in the header
        inputs: Logical input name -> file path (digested on render)
        notes: Free-text header lines (labels, warnings worth keeping)
    """

    command: str
    columns: List[str]
    rows: List[List[Any]] = field(default_factory=list)
    config: Dict[str, Any] = field(default_factory=dict)
    inputs: Dict[str, Union[str, Path]] = field(default_factory=dict)
    notes: List[str] = field(default_factory=list)

    def add_row(self, *values: Any) -> None:
        if len(values) != len(self.columns):
            raise ValueError(f"row has {len(values)} values for {len(self.columns)} columns")
        self.rows.append(list(values))

    def metadata(self) -> Dict[str, Any]:
        return {
            "tool": Config.TOOL_NAME,
            "version": Config.VERSION,
            "command": self.command,
            "config": {k: _plain(v) for k, v in sorted(self.config.items())},
            "inputs": {
                name: {"file": Path(path).name, "sha256": file_digest(path)}
                for name, path in sorted(self.inputs.items())
            },
            "notes": list(self.notes),
        }

    # ============= RENDERING =============

    def to_tsv(self) -> str:
        meta = self.metadata()
        lines = [
            f"# tool: {meta['tool']} {meta['version']}",
            f"# command: {meta['command']}",
        ]
        lines += [f"# config.{k}: {format_cell(v)}" for k, v in meta["config"].items()]
        lines += [f"# input.{k}: {v['file']} sha256={v['sha256']}" for k, v in meta["inputs"].items()]
        lines += [f"# note: {n}" for n in meta["notes"]]

        frame = pd.DataFrame([[format_cell(v) for v in row] for row in self.rows], columns=self.columns)
        table = frame.to_csv(sep="\t", index=False, lineterminator="\n")
        return "\n".join(lines) + "\n" + table

    def to_json(self) -> str:
        payload = {
            "metadata": self.metadata(),
            "columns": list(self.columns),
            "rows": [[_plain(v) for v in row] for row in self.rows],
        }
        return json.dumps(payload, sort_keys=True, indent=2, ensure_ascii=False) + "\n"

    def render(self, fmt: str = "tsv") -> str:
        if fmt == "json":
            return self.to_json()
        if fmt == "tsv":
            return self.to_tsv()
        raise ValueError(f"unknown report format {fmt!r}")


def write_report(report: Report, fmt: str = "tsv", output: Optional[Union[str, Path]] = None) -> Optional[Path]:
    """
    Render a report to a file, or to stdout when output is None or "-".

    Returns:
        The path written, or None for stdout
    """
    text = report.render(fmt)
    if output is None or str(output) == "-":
        sys.stdout.write(text)
        sys.stdout.flush()
        return None
    path = Path(output)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(text)
    return path
