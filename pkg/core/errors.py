#!/usr/bin/env python3
"""
Exception hierarchy for the fieldnorm toolkit.
Every failure carries a machine-readable code and optional detail.
"""

from dataclasses import dataclass
from typing import Any, List, Optional


class FieldnormError(Exception):
    """Base exception for all toolkit errors"""

    def __init__(self, message: str, code: str = "ERROR", detail: Optional[Any] = None):
        self.message = message
        self.code = code
        self.detail = detail
        super().__init__(self.message)

    def __str__(self) -> str:
        return f"[{self.code}] {self.message}"


@dataclass(frozen=True)
class Issue:
    """
    One problem found while reading or validating a corpus.

    Attributes:
        code: Uppercase error code (e.g. DANGLING_SD)
        message: Human-readable explanation
        ref_id: Offending identifier, if any
        row: 1-based data row number in the source file, if known
        source: Logical source name (taxonomy, researchers, ...)
    """

    code: str
    message: str
    ref_id: str = ""
    row: Optional[int] = None
    source: str = ""

    def describe(self) -> str:
        where = ""
        if self.source:
            where = f"{self.source}"
            if self.row is not None:
                where += f" row {self.row}"
            where += ": "
        return f"{where}[{self.code}] {self.message}"


class CorpusError(FieldnormError):
    """
    Raised when corpus sources cannot be ingested.

    Attributes:
        issues: Every problem found, in source order
    """

    def __init__(self, issues: List[Issue]):
        self.issues = list(issues)
        first = self.issues[0] if self.issues else Issue("CORPUS_ERROR", "corpus rejected")
        more = f" (+{len(self.issues) - 1} more)" if len(self.issues) > 1 else ""
        super().__init__(first.describe() + more, code=first.code, detail=self.issues)

    def __str__(self) -> str:
        return self.message


class IndicatorError(FieldnormError):
    """Raised when an indicator is undefined for the requested cell or area"""


class RankingError(FieldnormError):
    """Raised for invalid ranking inputs or mismatched rankings"""


class SectorError(FieldnormError):
    """Raised when the public/private decomposition is undefined"""


class ConfigError(FieldnormError):
    """Raised for invalid environment or synthetic-corpus configuration"""
