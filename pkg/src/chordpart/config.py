"""Resource caps and run configuration.

Every exponential routine takes an explicit cap argument; ``None`` means
"use the current configuration". Exceeding a cap raises
:class:`~chordpart.errors.ResourceCapError`.
"""

from __future__ import annotations

import dataclasses
import json
import os
from dataclasses import dataclass
from pathlib import Path

CONFIG_ENV = "CHORDPART_CONFIG"


@dataclass(frozen=True)
class Caps:
    contains_induced: int = 8  # |V(H)| for induced containment
    isomorphism: int = 12
    enumeration: int = 12  # |V(G)| for connected-partition enumeration
    induced_cycle: int = 14
    perfect: int = 12
    chromatic: int = 10
    clique_budget: int = 5_000_000  # branch-and-bound nodes for max clique
    construction: int = 1_000_000  # predicted vertex count
    catalog_t: int = 4


@dataclass(frozen=True)
class Config:
    caps: Caps = dataclasses.field(default_factory=Caps)
    workers: int = 1
    output_dir: str = "."

    @classmethod
    def from_mapping(cls, data: dict) -> "Config":
        caps_data = dict(data.get("caps", {}))
        unknown = set(caps_data) - {f.name for f in dataclasses.fields(Caps)}
        if unknown:
            raise ValueError(f"unknown cap(s) in config: {sorted(unknown)}")
        extra = set(data) - {"caps", "workers", "output_dir"}
        if extra:
            raise ValueError(f"unknown config key(s): {sorted(extra)}")
        return cls(
            caps=Caps(**caps_data),
            workers=int(data.get("workers", 1)),
            output_dir=str(data.get("output_dir", ".")),
        )


_current = Config()


def get_config() -> Config:
    return _current


def set_config(config: Config) -> None:
    global _current
    _current = config


def caps() -> Caps:
    return _current.caps


def load_config(path: str | os.PathLike | None = None) -> Config:
    """Load a JSON config file; falls back to ``$CHORDPART_CONFIG``, then defaults."""
    if path is None:
        path = os.environ.get(CONFIG_ENV)
    if not path:
        return Config()
    with open(Path(path), encoding="utf-8") as fh:
        return Config.from_mapping(json.load(fh))
