"""Unit-suffixed quantities and the binary-system catalog."""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .coherence import BinarySystem, SourceBody
from .radiometry import CONSTANTS

CATALOG_ENV = "HBT_CATALOG"

_DAY = 86_400.0

UNITS = {
    # length
    "m": 1.0,
    "km": 1e3,
    "AU": CONSTANTS.AU,
    "ly": CONSTANTS.ly,
    "R_sun": CONSTANTS.R_sun,
    "R_jupiter": CONSTANTS.R_jupiter,
    # time
    "s": 1.0,
    "d": _DAY,
    "yr": 365.25 * _DAY,
    # temperature
    "K": 1.0,
    # frequency
    "Hz": 1.0,
    "THz": 1e12,
    "PHz": 1e15,
}

DIMENSIONS = {
    "m": "length", "km": "length", "AU": "length", "ly": "length",
    "R_sun": "length", "R_jupiter": "length",
    "s": "time", "d": "time", "yr": "time",
    "K": "temperature",
    "Hz": "frequency", "THz": "frequency", "PHz": "frequency",
}


def parse_quantity(text, dimension=None):
    """Parse ``"3 AU"`` into ``(SI value, unit)``; bare numbers are taken as SI."""
    if isinstance(text, (int, float)):
        return float(text), None
    parts = str(text).split()
    if len(parts) == 1:
        return float(parts[0]), None
    if len(parts) != 2:
        raise ValueError(f"cannot parse quantity {text!r}")
    value, unit = parts
    if unit not in UNITS:
        raise ValueError(f"unknown unit {unit!r} in {text!r}")
    if dimension is not None and DIMENSIONS[unit] != dimension:
        raise ValueError(f"{text!r} is a {DIMENSIONS[unit]}, expected a {dimension}")
    return float(value) * UNITS[unit], unit


def format_quantity(si_value, unit):
    return f"{si_value / UNITS[unit]:.15g} {unit}"


@dataclass(frozen=True)
class CatalogEntry:
    key: str
    name: str
    D: float  # m
    R_A: float  # m
    R_B: float  # m
    T_A: float  # K
    T_B: float  # K
    d: float  # m
    orbital_period: float  # s
    apparent_magnitude_V: float
    display_units: dict

    @classmethod
    def from_mapping(cls, key, raw):
        fields = {
            "D": "length", "R_A": "length", "R_B": "length", "d": "length",
            "T_A": "temperature", "T_B": "temperature", "orbital_period": "time",
        }
        values, units = {}, {}
        for name, dim in fields.items():
            values[name], units[name] = parse_quantity(raw[name], dim)
            if not values[name] > 0:
                raise ValueError(f"{key}.{name} must be positive")
        return cls(
            key=key,
            name=raw.get("name", key),
            apparent_magnitude_V=float(raw["apparent_magnitude_V"]),
            display_units=units,
            **values,
        )

    def system(self):
        return BinarySystem(
            body_a=SourceBody(self.R_A, self.T_A),
            body_b=SourceBody(self.R_B, self.T_B),
            separation_d=self.d,
            observer_distance_D=self.D,
            orbital_period=self.orbital_period,
        )

    def as_display(self):
        out = {"name": self.name, "apparent_magnitude_V": self.apparent_magnitude_V}
        for k, unit in self.display_units.items():
            v = getattr(self, k)
            out[k] = format_quantity(v, unit) if unit else v
        return out


def catalog_path():
    override = os.environ.get(CATALOG_ENV)
    if override:
        return Path(override)
    return Path(str(resources.files("nehbt").joinpath("data/catalog.json")))


def load_catalog(path=None):
    path = Path(path) if path is not None else catalog_path()
    raw = json.loads(path.read_text())
    return {k: CatalogEntry.from_mapping(k, v) for k, v in raw["systems"].items()}


def get_entry(name, path=None):
    cat = load_catalog(path)
    try:
        return cat[name]
    except KeyError:
        raise KeyError(f"unknown system {name!r}; known: {', '.join(sorted(cat))}") from None
