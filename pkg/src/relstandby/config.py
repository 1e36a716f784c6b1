"""JSON run configuration.

Schema (all keys optional except ``system``)::

    {"name": str,
     "system": {"n", "k", "marginal": {"family", "params"},
                "standby_marginal": {...}, "copula": {"family", "params"}},
     "eval": {EvalConfig fields},
     "grid": {"start", "stop", "points"},
     "quantity": "SurvivalBare" | "SurvivalT" | "Psi1" | "Psi2" | "Psi3",
     "targets": {"survival": [...], "psi1": [...], "psi2": [...], "psi3": [...], "mttf": bool},
     "sample_count": int, "unit_cost": float,
     "reference": {published values to compare table cells against},
     "output": {"path": str | null, "format": "csv" | "json"}}

A table file is ``{"title": str, "rows": [run config, ...]}``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path as FsPath

import numpy as np

from .engine import EvalConfig
from .errors import DomainError
from .simulate import Targets
from .system import SystemSpec

__all__ = ["Grid", "RunConfig", "TableConfig", "ConfigError", "load_config", "parse_grid", "QUANTITIES", "bundled_configs"]

QUANTITIES = ("SurvivalBare", "SurvivalT", "Psi1", "Psi2", "Psi3")


class ConfigError(DomainError):
    """Malformed or unreadable configuration (CLI exit status 2)."""


@dataclass(frozen=True)
class Grid:
    start: float
    stop: float
    points: int

    def __post_init__(self):
        if not isinstance(self.points, int) or self.points < 1:
            raise ConfigError("grid.points must be a positive integer")
        if self.start < 0:
            raise ConfigError("grid.start must be nonnegative")
        if self.points > 1 and not self.stop > self.start:
            raise ConfigError("grid must be strictly increasing (stop > start)")

    def values(self):
        return np.linspace(self.start, self.stop, self.points)

    def to_dict(self):
        return {"start": self.start, "stop": self.stop, "points": self.points}


def parse_grid(text: str) -> Grid:
    """Parse ``a:b:n``."""
    try:
        a, b, n = text.split(":")
        return Grid(float(a), float(b), int(n))
    except ValueError:
        raise ConfigError(f"grid must look like start:stop:points, got {text!r}") from None


def _targets_dict(t: Targets):
    return {"survival": list(t.survival), "psi1": list(t.psi1), "psi2": list(t.psi2), "psi3": list(t.psi3), "mttf": t.mttf}


@dataclass(frozen=True)
class RunConfig:
    system: SystemSpec
    eval: EvalConfig = field(default_factory=EvalConfig)
    name: str = ""
    grid: Grid | None = None
    quantity: str | None = None
    targets: Targets | None = None
    sample_count: int | None = None
    unit_cost: float = 1.0
    reference: dict = field(default_factory=dict)
    output_path: str | None = None
    output_format: str = "csv"

    def __post_init__(self):
        if self.quantity is not None and self.quantity not in QUANTITIES:
            raise ConfigError(f"quantity must be one of {QUANTITIES}, got {self.quantity!r}")
        if self.output_format not in ("csv", "json"):
            raise ConfigError("output.format must be 'csv' or 'json'")
        if not self.unit_cost > 0:
            raise ConfigError("unit_cost must be positive")

    def to_dict(self):
        return {
            "name": self.name,
            "system": self.system.to_dict(),
            "eval": self.eval.to_dict(),
            "grid": None if self.grid is None else self.grid.to_dict(),
            "quantity": self.quantity,
            "targets": None if self.targets is None else _targets_dict(self.targets),
            "sample_count": self.sample_count,
            "unit_cost": self.unit_cost,
            "reference": dict(self.reference),
            "output": {"path": self.output_path, "format": self.output_format},
        }

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    @classmethod
    def from_dict(cls, d: dict):
        if not isinstance(d, dict):
            raise ConfigError("config must be a JSON object")
        if "system" not in d:
            raise ConfigError("config is missing field 'system'")
        try:
            system = SystemSpec.from_dict(d["system"])
        except DomainError as exc:
            raise ConfigError(f"system: {exc}") from None
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"system: {exc}") from None
        try:
            ev = EvalConfig.from_dict(d.get("eval") or {})
        except (DomainError, TypeError) as exc:
            raise ConfigError(f"eval: {exc}") from None
        g = d.get("grid")
        try:
            grid = None if g is None else Grid(float(g["start"]), float(g["stop"]), g["points"])
        except (KeyError, TypeError) as exc:
            raise ConfigError(f"grid: missing or bad field {exc}") from None
        t = d.get("targets")
        out = d.get("output") or {}
        count = d.get("sample_count")
        if count is not None and (not isinstance(count, int) or count < 1):
            raise ConfigError("sample_count must be a positive integer")
        return cls(
            system=system,
            eval=ev,
            name=str(d.get("name", "")),
            grid=grid,
            quantity=d.get("quantity"),
            targets=None if t is None else Targets.from_dict(t),
            sample_count=count,
            unit_cost=float(d.get("unit_cost", 1.0)),
            reference=dict(d.get("reference") or {}),
            output_path=out.get("path"),
            output_format=out.get("format", "csv"),
        )


@dataclass(frozen=True)
class TableConfig:
    title: str
    rows: tuple

    @classmethod
    def from_dict(cls, d: dict):
        rows = d.get("rows")
        if not isinstance(rows, list) or not rows:
            raise ConfigError("table config needs a non-empty 'rows' list")
        parsed = []
        for i, r in enumerate(rows):
            try:
                parsed.append(RunConfig.from_dict(r))
            except ConfigError as exc:
                raise ConfigError(f"rows[{i}].{exc}") from None
        return cls(str(d.get("title", "")), tuple(parsed))


def bundled_configs():
    """Names of the configurations shipped with the package."""
    root = resources.files("relstandby") / "configs"
    return sorted(p.name[:-5] for p in root.iterdir() if p.name.endswith(".json"))


def _read_text(ref: str) -> tuple[str, str]:
    p = FsPath(ref)
    if p.exists():
        return p.read_text(), str(p)
    root = resources.files("relstandby") / "configs"
    name = ref if ref.endswith(".json") else ref + ".json"
    candidate = root / name
    if candidate.is_file():
        return candidate.read_text(), f"<bundled>/{name}"
    raise ConfigError(f"cannot read config {ref!r} (not a file and not a bundled name)")


def load_config(ref: str):
    """Load a run config or a table config from a path or bundled name."""
    text, origin = _read_text(ref)
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{origin}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    try:
        if isinstance(data, dict) and "rows" in data:
            return TableConfig.from_dict(data)
        return RunConfig.from_dict(data)
    except ConfigError as exc:
        raise ConfigError(f"{origin}: {exc}") from None
