"""UCR-format labeled time series and synthetic string corpora."""

from __future__ import annotations

import math
import re
import warnings
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Literal

import numpy as np

from .seqdist import SymbolicSequence
from .validation import InvalidParameterError, ParseError, check_series

__all__ = [
    "LabeledSeries",
    "LabeledDataset",
    "load_ucr",
    "write_ucr",
    "ucr_paths",
    "synthetic_strings",
]

_SPLIT = re.compile(r"[,\s]+")


@dataclass(frozen=True)
class LabeledSeries:
    label: int
    series: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "series", tuple(check_series(self.series).tolist()))


@dataclass(frozen=True)
class LabeledDataset:
    name: str
    instances: tuple[LabeledSeries, ...]
    role: Literal["train", "test"] = "train"

    def __post_init__(self):
        object.__setattr__(self, "instances", tuple(self.instances))
        lengths = {len(s.series) for s in self.instances}
        if len(lengths) > 1:
            warnings.warn(
                f"dataset {self.name!r} mixes series lengths {sorted(lengths)}", stacklevel=3
            )

    @classmethod
    def from_arrays(cls, X, y, name: str = "dataset", role: str = "train") -> "LabeledDataset":
        return cls(name, tuple(LabeledSeries(int(lab), tuple(row)) for row, lab in zip(X, y)), role)

    def __len__(self) -> int:
        return len(self.instances)

    @property
    def X(self) -> np.ndarray:
        """Series stacked row-wise; requires equal lengths."""
        return np.array([s.series for s in self.instances], dtype=np.float64)

    @property
    def y(self) -> np.ndarray:
        return np.array([s.label for s in self.instances], dtype=np.int64)


def _parse_label(field: str, lineno: int) -> int:
    try:
        value = float(field)
    except ValueError:
        raise ParseError(f"non-numeric label {field!r}", lineno) from None
    if not math.isfinite(value):
        raise ParseError(f"label {field!r} is not finite", lineno)
    return int(round(value))


def load_ucr(path, name: str | None = None, role: str | None = None) -> LabeledDataset:
    """Read a UCR text file: one instance per line, label first, then the values.

    Fields may be separated by commas, tabs or runs of whitespace.
    """
    path = Path(path)
    text = path.read_text()
    instances = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line:
            continue
        fields = [f for f in _SPLIT.split(line) if f]
        if len(fields) < 2:
            raise ParseError("expected a label followed by at least one value", lineno)
        label = _parse_label(fields[0], lineno)
        try:
            values = [float(f) for f in fields[1:]]
        except ValueError as exc:
            raise ParseError(f"non-numeric value ({exc})", lineno) from None
        if not all(math.isfinite(v) for v in values):
            raise ParseError("series contains NaN or infinite values", lineno)
        instances.append(LabeledSeries(label, tuple(values)))
    if not instances:
        raise ParseError(f"no instances in {path}")
    stem = path.name.split(".")[0]
    if role is None:
        role = "test" if stem.upper().endswith("_TEST") else "train"
    if name is None:
        name = re.sub(r"_(TRAIN|TEST)$", "", stem, flags=re.IGNORECASE)
    return LabeledDataset(name, tuple(instances), role)


def _format_number(v: float) -> str:
    return repr(float(v))


def write_ucr(dataset: LabeledDataset, path) -> None:
    """Write ``dataset`` in the canonical comma-delimited, label-first format."""
    lines = [
        ",".join([str(s.label)] + [_format_number(v) for v in s.series]) for s in dataset.instances
    ]
    Path(path).write_text("\n".join(lines) + "\n")


def ucr_paths(directory) -> tuple[Path, Path]:
    """Locate ``<name>/<name>_TRAIN`` and ``<name>/<name>_TEST`` in a dataset directory.

    The classic extensionless files are preferred; ``.txt``/``.tsv``/``.csv`` are
    accepted as fallbacks.
    """
    directory = Path(directory)
    name = directory.name
    found = []
    for split in ("TRAIN", "TEST"):
        for suffix in ("", ".txt", ".tsv", ".csv"):
            candidate = directory / f"{name}_{split}{suffix}"
            if candidate.is_file():
                found.append(candidate)
                break
        else:
            raise FileNotFoundError(f"no {name}_{split} file in {directory}")
    return found[0], found[1]


def synthetic_strings(
    seed: int, count: int, max_len: int, alpha: int
) -> list[SymbolicSequence]:
    """Random sequences with lengths uniform in ``[0, max_len]`` and uniform symbols."""
    if alpha < 1 or max_len < 0 or count < 0:
        raise InvalidParameterError("need alpha >= 1, max_len >= 0 and count >= 0")
    rng = np.random.default_rng(seed)
    lengths = rng.integers(0, max_len + 1, size=count)
    return [
        SymbolicSequence(tuple(rng.integers(0, alpha, size=int(n)).tolist()), alpha) for n in lengths
    ]


def iter_datasets(paths: Iterable) -> Iterable[tuple[Path, LabeledDataset, LabeledDataset]]:
    for directory in paths:
        train_path, test_path = ucr_paths(directory)
        yield Path(directory), load_ucr(train_path, role="train"), load_ucr(test_path, role="test")
