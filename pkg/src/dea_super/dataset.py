"""DMU data, returns-to-scale bounds and leave-one-out evaluation contexts."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np


class DatasetError(ValueError):
    """Raised when raw DMU records violate a dataset invariant.

    ``dmu`` names the offending unit (if any) and ``rule`` is a short
    machine-readable tag for the violated check.
    """

    def __init__(self, message: str, *, dmu: str | None = None, rule: str = "invalid"):
        super().__init__(message)
        self.dmu = dmu
        self.rule = rule


@dataclass(frozen=True)
class DmuRecord:
    name: str
    inputs: tuple[float, ...]
    outputs: tuple[float, ...]


@dataclass(frozen=True)
class RtsSpec:
    """Bounds ``lower <= sum(lambda) <= upper`` on the intensity weights.

    ``upper = math.inf`` means the upper constraint is omitted entirely.
    """

    lower: float = 0.0
    upper: float = math.inf

    def __post_init__(self):
        if not (0.0 <= self.lower <= 1.0):
            raise ValueError(f"lower bound must lie in [0, 1], got {self.lower}")
        if not (self.upper >= 1.0):
            raise ValueError(f"upper bound must be >= 1, got {self.upper}")

    @classmethod
    def crs(cls) -> "RtsSpec":
        return cls(0.0, math.inf)

    @classmethod
    def vrs(cls) -> "RtsSpec":
        return cls(1.0, 1.0)

    @classmethod
    def grs(cls, lower: float, upper: float) -> "RtsSpec":
        return cls(float(lower), float(upper))

    @property
    def is_crs(self) -> bool:
        return self.lower == 0.0 and math.isinf(self.upper)

    @property
    def is_vrs(self) -> bool:
        return self.lower == 1.0 and self.upper == 1.0

    @property
    def label(self) -> str:
        if self.is_crs:
            return "crs"
        if self.is_vrs:
            return "vrs"
        return f"grs({self.lower:g},{self.upper:g})"


@dataclass(frozen=True, eq=False)
class Dataset:
    """An ordered, validated collection of DMUs.

    ``X`` is the (m, n) input matrix and ``Y`` the (s, n) output matrix,
    columns following the record order. Both arrays are read-only.
    """

    dmus: tuple[DmuRecord, ...]
    allow_negative: bool = False
    input_labels: tuple[str, ...] | None = None
    output_labels: tuple[str, ...] | None = None
    X: np.ndarray = field(init=False, repr=False)
    Y: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        X = np.array([d.inputs for d in self.dmus], dtype=float).T
        Y = np.array([d.outputs for d in self.dmus], dtype=float).T
        X.setflags(write=False)
        Y.setflags(write=False)
        object.__setattr__(self, "X", X)
        object.__setattr__(self, "Y", Y)
        if self.input_labels is None:
            object.__setattr__(self, "input_labels", tuple(f"I{i + 1}" for i in range(X.shape[0])))
        if self.output_labels is None:
            object.__setattr__(self, "output_labels", tuple(f"O{r + 1}" for r in range(Y.shape[0])))

    @property
    def n(self) -> int:
        return len(self.dmus)

    @property
    def m(self) -> int:
        return self.X.shape[0]

    @property
    def s(self) -> int:
        return self.Y.shape[0]

    @property
    def names(self) -> list[str]:
        return [d.name for d in self.dmus]

    def index(self, dmu: int | str) -> int:
        if isinstance(dmu, (int, np.integer)) and not isinstance(dmu, bool):
            if 0 <= dmu < self.n:
                return int(dmu)
            raise KeyError(f"unknown DMU index {dmu}")
        for j, d in enumerate(self.dmus):
            if d.name == dmu:
                return j
        raise KeyError(f"unknown DMU {dmu!r}")

    def __eq__(self, other):
        if not isinstance(other, Dataset):
            return NotImplemented
        return self.dmus == other.dmus and self.allow_negative == other.allow_negative

    def __hash__(self):
        return hash((self.dmus, self.allow_negative))


@dataclass(frozen=True)
class EvaluationContext:
    """DMU ``o`` under evaluation against the reference set ``J`` (everyone else)."""

    dataset: Dataset
    o: int
    rts: RtsSpec

    @property
    def J(self) -> tuple[int, ...]:
        return tuple(j for j in range(self.dataset.n) if j != self.o)

    @property
    def name(self) -> str:
        return self.dataset.dmus[self.o].name

    @property
    def x_o(self) -> np.ndarray:
        return self.dataset.X[:, self.o]

    @property
    def y_o(self) -> np.ndarray:
        return self.dataset.Y[:, self.o]

    @property
    def X_ref(self) -> np.ndarray:
        return self.dataset.X[:, list(self.J)]

    @property
    def Y_ref(self) -> np.ndarray:
        return self.dataset.Y[:, list(self.J)]


def _as_record(raw) -> DmuRecord:
    if isinstance(raw, DmuRecord):
        return raw
    if isinstance(raw, Mapping):
        name, inputs, outputs = raw["name"], raw["inputs"], raw["outputs"]
    else:
        name, inputs, outputs = raw
    return DmuRecord(str(name), tuple(float(v) for v in inputs), tuple(float(v) for v in outputs))


def validate_dataset(raw_records: Iterable, allow_negative: bool = False,
                     input_labels: Sequence[str] | None = None,
                     output_labels: Sequence[str] | None = None) -> Dataset:
    """Build a :class:`Dataset`, checking every invariant.

    Records may be :class:`DmuRecord`, ``(name, inputs, outputs)`` tuples or
    mappings with those keys. Passing a :class:`Dataset` re-checks it and
    returns an equal dataset.
    """
    if isinstance(raw_records, Dataset):
        ds = raw_records
        return validate_dataset(ds.dmus, allow_negative or ds.allow_negative,
                                input_labels if input_labels is not None else ds.input_labels,
                                output_labels if output_labels is not None else ds.output_labels)
    records = [_as_record(r) for r in raw_records]
    if len(records) < 2:
        raise DatasetError(f"need at least 2 DMUs, got {len(records)}", rule="too_few_dmus")
    m, s = len(records[0].inputs), len(records[0].outputs)
    if m < 1 or s < 1:
        raise DatasetError("each DMU needs at least one input and one output",
                           dmu=records[0].name, rule="dimension")
    seen: set[str] = set()
    for rec in records:
        if len(rec.inputs) != m or len(rec.outputs) != s:
            raise DatasetError(
                f"DMU {rec.name!r} has {len(rec.inputs)} inputs/{len(rec.outputs)} outputs, "
                f"expected {m}/{s}", dmu=rec.name, rule="dimension")
        if rec.name in seen:
            raise DatasetError(f"duplicate DMU name {rec.name!r}", dmu=rec.name, rule="duplicate_name")
        seen.add(rec.name)
        values = rec.inputs + rec.outputs
        if not all(math.isfinite(v) for v in values):
            raise DatasetError(f"DMU {rec.name!r} has a non-finite value", dmu=rec.name, rule="non_finite")
        if not allow_negative and any(v < 0 for v in values):
            raise DatasetError(f"DMU {rec.name!r} has a negative value (negative-data mode is off)",
                               dmu=rec.name, rule="negative_value")
        if all(v == 0 for v in rec.inputs):
            raise DatasetError(f"DMU {rec.name!r} has an all-zero input vector",
                               dmu=rec.name, rule="zero_inputs")
        if all(v == 0 for v in rec.outputs):
            raise DatasetError(f"DMU {rec.name!r} has an all-zero output vector",
                               dmu=rec.name, rule="zero_outputs")
    if input_labels is not None and len(input_labels) != m:
        raise DatasetError(f"{len(input_labels)} input labels for {m} inputs", rule="dimension")
    if output_labels is not None and len(output_labels) != s:
        raise DatasetError(f"{len(output_labels)} output labels for {s} outputs", rule="dimension")
    return Dataset(tuple(records), allow_negative=bool(allow_negative),
                   input_labels=None if input_labels is None else tuple(input_labels),
                   output_labels=None if output_labels is None else tuple(output_labels))


def make_context(dataset: Dataset, o: int | str, rts: RtsSpec | None = None) -> EvaluationContext:
    """Context evaluating ``o`` against all other DMUs.

    In negative-data mode only VRS bounds are accepted: translation
    invariance, which justifies negative data, needs ``sum(lambda) = 1``.
    """
    rts = RtsSpec.crs() if rts is None else rts
    try:
        idx = dataset.index(o)
    except KeyError as exc:
        raise DatasetError(str(exc.args[0]), rule="unknown_dmu") from None
    if dataset.allow_negative and not rts.is_vrs:
        raise DatasetError("negative-data mode requires VRS (L = U = 1)", rule="negative_needs_vrs")
    return EvaluationContext(dataset, idx, rts)


def from_arrays(X: Sequence[Sequence[float]], Y: Sequence[Sequence[float]],
                names: Sequence[str] | None = None, allow_negative: bool = False) -> Dataset:
    """Convenience constructor from (m, n) input and (s, n) output arrays."""
    X = np.asarray(X, dtype=float)
    Y = np.asarray(Y, dtype=float)
    if X.ndim != 2 or Y.ndim != 2 or X.shape[1] != Y.shape[1]:
        raise DatasetError("X and Y must be 2-D with the same number of columns", rule="dimension")
    n = X.shape[1]
    names = [f"DMU{j + 1}" for j in range(n)] if names is None else list(names)
    return validate_dataset(
        [(names[j], X[:, j], Y[:, j]) for j in range(n)], allow_negative=allow_negative)
