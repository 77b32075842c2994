"""SAX symbolization: z-normalization, PAA, Gaussian breakpoints, MINDIST."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from statistics import NormalDist

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from .seqdist import SymbolicSequence
from .validation import (
    InvalidParameterError,
    check_alphabet_size,
    check_ratio,
    check_series,
)

__all__ = [
    "SaxParams",
    "SaxWord",
    "SAXTransformer",
    "z_normalize",
    "paa",
    "gaussian_breakpoints",
    "segments_for_ratio",
    "symbolize",
    "mindist",
]

# population std below this is treated as a constant series
CONSTANT_STD = 1e-10


def z_normalize(values) -> np.ndarray:
    """Zero mean, unit population standard deviation; all zeros if constant."""
    x = check_series(values)
    std = x.std()
    if std < CONSTANT_STD:
        return np.zeros_like(x)
    return (x - x.mean()) / std


def paa(values, w: int) -> np.ndarray:
    """Piecewise aggregate approximation to ``w`` frames.

    When ``w`` does not divide the length, points straddling a frame boundary
    contribute fractionally to both frames, so every frame carries the same
    total weight ``n / w``.
    """
    x = check_series(values)
    n = x.shape[0]
    if int(w) != w or not 1 <= w <= n:
        raise InvalidParameterError(f"segment count must be an integer in [1, {n}], got {w}")
    w = int(w)
    if n % w == 0:
        return x.reshape(w, n // w).mean(axis=1)
    # repeating each point w times gives n*w samples; every frame then spans exactly n of them
    return np.repeat(x, w).reshape(w, n).mean(axis=1)


@lru_cache(maxsize=None)
def _breakpoints(alpha: int) -> tuple[float, ...]:
    nd = NormalDist()
    upper = [nd.inv_cdf(k / alpha) for k in range(alpha // 2 + 1, alpha)]
    # built from the upper half so the vector is exactly symmetric about 0
    lower = [-b for b in reversed(upper)]
    middle = [0.0] if alpha % 2 == 0 else []
    return tuple(lower + middle + upper)


def gaussian_breakpoints(alpha: int) -> np.ndarray:
    """The ``alpha - 1`` standard normal quantiles at ``k / alpha``."""
    alpha = check_alphabet_size(alpha)
    return np.array(_breakpoints(alpha))


def segments_for_ratio(n: int, ratio: float) -> int:
    """Number of PAA frames for a compression ratio ``1:ratio``, ``ceil(n / ratio)``."""
    return max(1, math.ceil(n / check_ratio(ratio)))


@dataclass(frozen=True)
class SaxParams:
    alphabet_size: int
    segment_count: int

    def __post_init__(self):
        check_alphabet_size(self.alphabet_size)
        if self.segment_count < 1:
            raise InvalidParameterError(f"segment count must be >= 1, got {self.segment_count}")

    @classmethod
    def from_ratio(cls, n: int, alphabet_size: int, ratio: float = 4) -> "SaxParams":
        return cls(alphabet_size, segments_for_ratio(n, ratio))

    @property
    def breakpoints(self) -> np.ndarray:
        return gaussian_breakpoints(self.alphabet_size)


@dataclass(frozen=True)
class SaxWord:
    sequence: SymbolicSequence
    original_length: int

    @property
    def alphabet_size(self) -> int:
        return self.sequence.alphabet_size

    def codes(self) -> np.ndarray:
        return self.sequence.codes()

    def to_text(self) -> str:
        return self.sequence.to_text()

    def __len__(self) -> int:
        return len(self.sequence)


def _bucket(values: np.ndarray, breakpoints: np.ndarray) -> np.ndarray:
    # symbol k covers (beta_k, beta_{k+1}]; a value on a breakpoint goes to the lower symbol
    return np.searchsorted(breakpoints, values, side="left").astype(np.int64)


def symbolize(values, params: SaxParams) -> SaxWord:
    x = check_series(values)
    reduced = paa(z_normalize(x), params.segment_count)
    symbols = _bucket(reduced, params.breakpoints)
    return SaxWord(SymbolicSequence(tuple(symbols.tolist()), params.alphabet_size), x.shape[0])


def _cell_table(alpha: int) -> np.ndarray:
    beta = gaussian_breakpoints(alpha)
    r = np.arange(alpha)[:, None]
    c = np.arange(alpha)[None, :]
    hi = np.maximum(r, c)
    lo = np.minimum(r, c)
    table = np.zeros((alpha, alpha))
    far = np.abs(r - c) > 1
    table[far] = beta[hi[far] - 1] - beta[lo[far]]
    return table


def mindist(a: SaxWord, b: SaxWord, params: SaxParams | None = None) -> float:
    """SAX lower-bounding distance between two words of the same shape."""
    if len(a) != len(b) or a.alphabet_size != b.alphabet_size or a.original_length != b.original_length:
        raise InvalidParameterError("MINDIST needs words of equal length, alphabet and original length")
    if params is not None and (
        params.alphabet_size != a.alphabet_size or params.segment_count != len(a)
    ):
        raise InvalidParameterError("words were not produced with the given SAX parameters")
    if len(a) == 0:
        return 0.0
    cells = _cell_table(a.alphabet_size)[a.codes(), b.codes()]
    return math.sqrt(a.original_length / len(a)) * math.sqrt(float(np.sum(cells * cells)))


def mindist_matrix(a: np.ndarray, b: np.ndarray, alpha: int, n: int) -> np.ndarray:
    """MINDIST between every row of symbol matrix ``a`` and every row of ``b``."""
    table = _cell_table(alpha)
    w = a.shape[1]
    sq = table * table
    out = np.zeros((a.shape[0], b.shape[0]))
    for j in range(w):
        out += sq[a[:, j][:, None], b[:, j][None, :]]
    return np.sqrt(n / w) * np.sqrt(out)


class SAXTransformer(TransformerMixin, BaseEstimator):
    """Turn equal-length time series into SAX symbol matrices.

    Parameters
    ----------
    alphabet_size : int, default=4
        Number of symbols, between 2 and 26.
    ratio : float, default=4
        Compression ratio; each series of length n yields ``ceil(n / ratio)`` symbols.
    n_segments : int or None, default=None
        Explicit word length. Overrides ``ratio`` when given.
    """

    def __init__(self, alphabet_size=4, ratio=4, n_segments=None):
        self.alphabet_size = alphabet_size
        self.ratio = ratio
        self.n_segments = n_segments

    def fit(self, X, y=None):
        X = check_array(X, dtype=np.float64)
        n = X.shape[1]
        w = self.n_segments if self.n_segments is not None else segments_for_ratio(n, self.ratio)
        self.params_ = SaxParams(check_alphabet_size(self.alphabet_size), int(w))
        if self.params_.segment_count > n:
            raise InvalidParameterError(f"segment count {w} exceeds series length {n}")
        self.n_features_in_ = n
        return self

    def transform(self, X):
        check_is_fitted(self, "params_")
        X = check_array(X, dtype=np.float64)
        if X.shape[1] != self.n_features_in_:
            raise InvalidParameterError(
                f"X has {X.shape[1]} points per series, transformer was fitted with {self.n_features_in_}"
            )
        beta = self.params_.breakpoints
        w = self.params_.segment_count
        out = np.empty((X.shape[0], w), dtype=np.int64)
        for i, row in enumerate(X):
            out[i] = _bucket(paa(z_normalize(row), w), beta)
        return out

    def words(self, X) -> list[SaxWord]:
        """Like :meth:`transform` but returns :class:`SaxWord` objects."""
        symbols = self.transform(X)
        return [
            SaxWord(SymbolicSequence(tuple(row.tolist()), self.params_.alphabet_size), self.n_features_in_)
            for row in symbols
        ]
