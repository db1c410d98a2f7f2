#!/usr/bin/env python3
"""
Synthetic corpus configuration.

Document form (JSON or YAML):

    seed: 42
    noise: poisson            # none | poisson
    years: [2001, 2003]
    citation_rate: 0.0
    sds:
      - {sd_id: LOW, da_id: D1, fertility: 0.3}
      - {sd_id: HIGH, da_id: D1, fertility: 1.3}
    units:
      - {unit_id: U1, staff: {LOW: 100, HIGH: 900}, productivity: 0.8}
"""

import math
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import IO, Any, Dict, Tuple, Union

import yaml

from core.errors import ConfigError
from analytics.corpus.model import Sector


class NoiseModel(Enum):
    """How publication counts are drawn from their expected value."""

    NONE = "none"
    POISSON = "poisson"


@dataclass(frozen=True)
class SynthDiscipline:
    """An SD with its expected publications per researcher."""

    sd_id: str
    da_id: str
    fertility: float
    sd_name: str = ""
    da_name: str = ""


@dataclass(frozen=True)
class SynthUnit:
    """
    A unit and its staff allocation.

    productivity multiplies the fertility of every SD the unit occupies.
    """

    unit_id: str
    staff_by_sd: Dict[str, int] = field(default_factory=dict)
    productivity: float = 1.0
    sector: Sector = Sector.PUBLIC

    @property
    def total_staff(self) -> int:
        return sum(self.staff_by_sd.values())


@dataclass(frozen=True)
class SynthConfig:
    """
    Everything generate_corpus needs; the corpus is a pure function of it.

    Raises:
        ConfigError: INVALID_CONFIG on construction when an invariant fails
    """

    seed: int
    sds: Tuple[SynthDiscipline, ...]
    units: Tuple[SynthUnit, ...]
    noise: NoiseModel = NoiseModel.NONE
    years: Tuple[int, int] = (2001, 2003)
    citation_rate: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "sds", tuple(sorted(self.sds, key=lambda s: s.sd_id)))
        object.__setattr__(self, "units", tuple(sorted(self.units, key=lambda u: u.unit_id)))
        self._validate()

    def _validate(self) -> None:
        def fail(message: str) -> None:
            raise ConfigError(message, "INVALID_CONFIG")

        if isinstance(self.seed, bool) or not isinstance(self.seed, int) or self.seed < 0:
            fail(f"seed must be an unsigned integer, got {self.seed!r}")
        if not isinstance(self.noise, NoiseModel):
            fail(f"noise must be a NoiseModel, got {self.noise!r}")
        if len(self.years) != 2 or self.years[0] > self.years[1]:
            fail(f"years must be (from, to) with from <= to, got {self.years!r}")
        if not math.isfinite(self.citation_rate) or self.citation_rate < 0:
            fail(f"citation_rate must be >= 0, got {self.citation_rate}")

        sd_ids = set()
        for sd in self.sds:
            if sd.sd_id in sd_ids:
                fail(f"duplicate sd_id {sd.sd_id!r}")
            sd_ids.add(sd.sd_id)
            if not math.isfinite(sd.fertility) or sd.fertility < 0:
                fail(f"fertility of {sd.sd_id} must be >= 0, got {sd.fertility}")

        unit_ids = set()
        for unit in self.units:
            if unit.unit_id in unit_ids:
                fail(f"duplicate unit_id {unit.unit_id!r}")
            unit_ids.add(unit.unit_id)
            if not math.isfinite(unit.productivity) or unit.productivity < 0:
                fail(f"productivity of {unit.unit_id} must be >= 0, got {unit.productivity}")
            for sd_id, staff in unit.staff_by_sd.items():
                if sd_id not in sd_ids:
                    fail(f"unit {unit.unit_id} staffs unknown SD {sd_id!r}")
                if isinstance(staff, bool) or not isinstance(staff, int) or staff < 0:
                    fail(f"staff of {unit.unit_id}/{sd_id} must be a non-negative integer, got {staff!r}")

        if not any(unit.total_staff > 0 for unit in self.units):
            fail("at least one unit needs positive staff")

    def to_dict(self) -> Dict[str, Any]:
        """Document form, accepted back by config_from_dict"""
        return {
            "seed": self.seed,
            "noise": self.noise.value,
            "years": list(self.years),
            "citation_rate": self.citation_rate,
            "sds": [
                {"sd_id": s.sd_id, "da_id": s.da_id, "fertility": s.fertility, "sd_name": s.sd_name, "da_name": s.da_name}
                for s in self.sds
            ],
            "units": [
                {
                    "unit_id": u.unit_id,
                    "staff": dict(sorted(u.staff_by_sd.items())),
                    "productivity": u.productivity,
                    "sector": u.sector.value,
                }
                for u in self.units
            ],
        }


# =============================================================================
# Loading
# =============================================================================

_TOP_KEYS = {"seed", "noise", "years", "citation_rate", "sds", "units"}


def _as_enum(enum_cls, value: Any, what: str):
    try:
        return enum_cls(str(value).lower())
    except ValueError:
        choices = ", ".join(m.value for m in enum_cls)
        raise ConfigError(f"{what} must be one of {choices}, got {value!r}", "INVALID_CONFIG")


def config_from_dict(document: Dict[str, Any]) -> SynthConfig:
    """
    Build a SynthConfig from its document form.

    Raises:
        ConfigError: INVALID_CONFIG for unknown keys, missing fields or bad values
    """
    if not isinstance(document, dict):
        raise ConfigError("synthetic config must be a mapping", "INVALID_CONFIG")
    unknown = sorted(set(document) - _TOP_KEYS)
    if unknown:
        raise ConfigError(f"unknown config key(s): {', '.join(unknown)}", "INVALID_CONFIG")

    try:
        sds = tuple(
            SynthDiscipline(
                sd_id=str(s["sd_id"]),
                da_id=str(s["da_id"]),
                fertility=float(s["fertility"]),
                sd_name=str(s.get("sd_name", "")),
                da_name=str(s.get("da_name", "")),
            )
            for s in document.get("sds", [])
        )
        units = tuple(
            SynthUnit(
                unit_id=str(u["unit_id"]),
                staff_by_sd={str(k): v for k, v in (u.get("staff") or {}).items()},
                productivity=float(u.get("productivity", 1.0)),
                sector=_as_enum(Sector, u.get("sector", "public"), "sector"),
            )
            for u in document.get("units", [])
        )
        years = tuple(int(y) for y in document.get("years", (2001, 2003)))
        return SynthConfig(
            seed=document.get("seed", 0),
            sds=sds,
            units=units,
            noise=_as_enum(NoiseModel, document.get("noise", "none"), "noise"),
            years=years,
            citation_rate=float(document.get("citation_rate", 0.0)),
        )
    except (KeyError, TypeError, ValueError) as e:
        raise ConfigError(f"malformed synthetic config: {e!r}", "INVALID_CONFIG")


def load_synth_config(source: Union[str, Path, IO[str]]) -> SynthConfig:
    """
    Read a SynthConfig from a JSON or YAML file (JSON is valid YAML).

    Raises:
        ConfigError: INVALID_CONFIG when the document cannot be parsed or is invalid
    """
    try:
        if hasattr(source, "read"):
            document = yaml.safe_load(source)
        else:
            with open(source, encoding="utf-8") as f:
                document = yaml.safe_load(f)
    except yaml.YAMLError as e:
        raise ConfigError(f"cannot parse synthetic config: {e}", "INVALID_CONFIG")
    return config_from_dict(document)
