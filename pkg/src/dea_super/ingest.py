"""CSV datasets and run-configuration files."""

from __future__ import annotations

import csv
import math
import re
from pathlib import Path
from typing import Any, Mapping

import yaml

from .dataset import Dataset, DatasetError, RtsSpec, validate_dataset


class ConfigError(ValueError):
    pass


def load_dataset(path: str | Path, format: str = "csv", allow_negative: bool = False) -> Dataset:
    """Read a DMU table.

    The header's first column is ``dmu``; input columns are prefixed ``i:``
    and output columns ``o:``. Column order within each group is kept.
    """
    if format != "csv":
        raise DatasetError(f"unsupported dataset format {format!r}", rule="format")
    path = Path(path)
    with path.open(newline="", encoding="utf-8") as fh:
        rows = list(csv.reader(fh))
    rows = [(k + 1, row) for k, row in enumerate(rows) if any(cell.strip() for cell in row)]
    if not rows:
        raise DatasetError(f"{path}: empty file", rule="parse")
    _, header = rows[0]
    header = [h.strip() for h in header]
    if not header or header[0].lower() != "dmu":
        raise DatasetError(f"{path}: first header column must be 'dmu'", rule="parse")
    in_cols = [k for k, h in enumerate(header) if h.startswith("i:")]
    out_cols = [k for k, h in enumerate(header) if h.startswith("o:")]
    if not in_cols or not out_cols:
        raise DatasetError(f"{path}: header needs at least one 'i:' and one 'o:' column", rule="parse")
    stray = [h for k, h in enumerate(header[1:], 1) if k not in in_cols and k not in out_cols]
    if stray:
        raise DatasetError(f"{path}: columns {stray} are neither 'i:' nor 'o:'", rule="parse")

    records = []
    for line, row in rows[1:]:
        if len(row) != len(header):
            raise DatasetError(f"{path}: line {line} has {len(row)} cells, expected {len(header)}",
                               rule="parse")
        values = {}
        for k in in_cols + out_cols:
            cell = row[k].strip()
            try:
                values[k] = float(cell)
            except ValueError:
                raise DatasetError(f"{path}: line {line}, column {header[k]!r}: "
                                   f"not a number: {cell!r}", dmu=row[0].strip(),
                                   rule="parse") from None
        records.append((row[0].strip(), [values[k] for k in in_cols], [values[k] for k in out_cols]))
    return validate_dataset(records, allow_negative=allow_negative,
                            input_labels=[header[k][2:] for k in in_cols],
                            output_labels=[header[k][2:] for k in out_cols])


_GRS = re.compile(r"^grs\(\s*([^,]+)\s*,\s*([^)]+)\)$")


def parse_rts(value: Any) -> RtsSpec:
    """``crs``, ``vrs`` or ``grs(L, U)`` (``U`` may be ``inf``)."""
    if isinstance(value, RtsSpec):
        return value
    if isinstance(value, Mapping):
        try:
            return RtsSpec.grs(float(value["L"]), float(value["U"]))
        except (KeyError, ValueError, TypeError) as exc:
            raise ConfigError(f"bad rts mapping {value!r}: {exc}") from None
    text = str(value).strip().lower().replace(" ", "")
    if text == "crs":
        return RtsSpec.crs()
    if text == "vrs":
        return RtsSpec.vrs()
    match = _GRS.match(text)
    if match:
        try:
            return RtsSpec.grs(float(match.group(1)), float(match.group(2)))
        except ValueError as exc:
            raise ConfigError(f"bad rts {value!r}: {exc}") from None
    raise ConfigError(f"rts must be crs, vrs or grs(L,U); got {value!r}")


def load_config(path: str | Path) -> dict:
    """Read a flat YAML (or JSON) mapping of run-configuration keys."""
    path = Path(path)
    try:
        data = yaml.safe_load(path.read_text(encoding="utf-8"))
    except yaml.YAMLError as exc:
        raise ConfigError(f"{path}: {exc}") from None
    if data is None:
        data = {}
    if not isinstance(data, dict):
        raise ConfigError(f"{path}: config must be a key/value mapping")
    for key, value in data.items():
        if isinstance(value, dict):
            raise ConfigError(f"{path}: key {key!r} is nested; the config is flat")
    return data


def _float(value: Any, key: str) -> float:
    try:
        out = float(value)
    except (TypeError, ValueError):
        raise ConfigError(f"{key} must be a number, got {value!r}") from None
    if math.isnan(out):
        raise ConfigError(f"{key} must be a number, got NaN")
    return out
