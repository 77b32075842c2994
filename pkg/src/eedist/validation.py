"""Exceptions and input validation helpers shared across the package."""

from __future__ import annotations

import math
from typing import Any, Sequence

import numpy as np


class InvalidParameterError(ValueError):
    """Raised when a parameter falls outside its documented domain."""


class NotAMetricError(InvalidParameterError):
    """Raised when an index is asked to prune with something that is not a metric."""


class ParseError(ValueError):
    """Raised when an input file cannot be parsed."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


def as_codes(seq: Any) -> np.ndarray:
    """Return a contiguous int64 array of symbol codes for ``seq``.

    Strings are mapped to their code points, so any two strings can be
    compared symbol by symbol. Objects exposing ``codes()`` (``SymbolicSequence``,
    ``SaxWord``) are unwrapped. Anything else must be a 1-d sequence of integers.
    """
    if isinstance(seq, str):
        if not seq:
            return np.zeros(0, dtype=np.int64)
        return np.frombuffer(seq.encode("utf-32-le"), dtype=np.uint32).astype(np.int64)
    codes = getattr(seq, "codes", None)
    if callable(codes):
        return codes()
    arr = np.asarray(seq)
    if arr.size == 0:
        return np.zeros(0, dtype=np.int64)
    if arr.ndim != 1:
        raise InvalidParameterError(f"expected a 1-d symbol sequence, got shape {arr.shape}")
    if not np.issubdtype(arr.dtype, np.integer):
        raise InvalidParameterError(f"symbols must be integers, got dtype {arr.dtype}")
    return np.ascontiguousarray(arr, dtype=np.int64)


def check_lambda(lam: float) -> float:
    lam = float(lam)
    if not math.isfinite(lam) or lam < 0:
        raise InvalidParameterError(f"frequency factor must be a finite value >= 0, got {lam}")
    return lam


def check_alphabet_size(alpha: int, low: int = 2, high: int = 26) -> int:
    if isinstance(alpha, bool) or int(alpha) != alpha:
        raise InvalidParameterError(f"alphabet size must be an integer, got {alpha!r}")
    alpha = int(alpha)
    if not low <= alpha <= high:
        raise InvalidParameterError(f"alphabet size must be in [{low}, {high}], got {alpha}")
    return alpha


def check_series(values: Any, name: str = "series") -> np.ndarray:
    """Validate a univariate time series: 1-d, nonempty, finite."""
    arr = np.asarray(values, dtype=np.float64)
    if arr.ndim != 1:
        raise InvalidParameterError(f"{name} must be 1-d, got shape {arr.shape}")
    if arr.size == 0:
        raise InvalidParameterError(f"{name} must not be empty")
    if not np.all(np.isfinite(arr)):
        raise InvalidParameterError(f"{name} contains NaN or infinite values")
    return arr


def check_ratio(ratio: float) -> float:
    ratio = float(ratio)
    if not math.isfinite(ratio) or ratio < 1:
        raise InvalidParameterError(f"compression ratio must be >= 1, got {ratio}")
    return ratio


def check_range(lo: int, hi: int, name: str = "range") -> tuple[int, int]:
    if lo > hi:
        raise InvalidParameterError(f"{name} is not well ordered: {lo} > {hi}")
    return int(lo), int(hi)


def check_nonempty(items: Sequence, name: str) -> None:
    if len(items) == 0:
        raise InvalidParameterError(f"{name} must not be empty")
