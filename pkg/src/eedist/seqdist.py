"""Distances between symbolic sequences.

Every function accepts a :class:`SymbolicSequence`, a plain ``str`` (compared
by code point) or a 1-d sequence of integer symbol indices. Alphabet sizes of
the two arguments need not agree; symbols compare by index.

The extended edit distance adds a frequency term to the Levenshtein distance::

    eed(s, t) = ed(s, t) + lam * (|s| + |t| - 2 * sum_i min(f_i(s), f_i(t)))

Both integer parts are computed exactly; floating point only enters in the
final multiply-add.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Any, Hashable, Iterable, Union

import numpy as np

from . import _kernels
from .validation import InvalidParameterError, as_codes, check_lambda

__all__ = [
    "SymbolicSequence",
    "FrequencyHistogram",
    "EedParams",
    "edit_distance",
    "char_histogram",
    "histogram_divergence",
    "eed",
    "lcss",
    "distinct_char_count",
    "pack",
]

LETTERS = "abcdefghijklmnopqrstuvwxyz"


@dataclass(frozen=True)
class SymbolicSequence:
    """An immutable word over the alphabet ``{0, ..., alphabet_size - 1}``."""

    symbols: tuple[int, ...]
    alphabet_size: int

    def __post_init__(self):
        symbols = tuple(int(x) for x in self.symbols)
        object.__setattr__(self, "symbols", symbols)
        if self.alphabet_size < 1:
            raise InvalidParameterError(f"alphabet size must be positive, got {self.alphabet_size}")
        for pos, sym in enumerate(symbols):
            if not 0 <= sym < self.alphabet_size:
                raise InvalidParameterError(
                    f"symbol {sym} at position {pos} is outside alphabet of size {self.alphabet_size}"
                )

    @classmethod
    def from_text(cls, text: str, alphabet_size: int = 26) -> "SymbolicSequence":
        """Parse letters ``a, b, c, ...`` into symbol indices ``0, 1, 2, ...``."""
        if not 1 <= alphabet_size <= len(LETTERS):
            raise InvalidParameterError(f"text alphabets hold 1 to 26 letters, got {alphabet_size}")
        symbols = []
        for pos, ch in enumerate(text):
            idx = LETTERS.find(ch)
            if idx < 0 or idx >= alphabet_size:
                last = LETTERS[alphabet_size - 1]
                raise InvalidParameterError(
                    f"character {ch!r} at position {pos} is outside the alphabet a..{last}"
                )
            symbols.append(idx)
        return cls(tuple(symbols), alphabet_size)

    def to_text(self) -> str:
        if self.alphabet_size > len(LETTERS):
            raise InvalidParameterError("only alphabets of at most 26 symbols have a letter form")
        return "".join(LETTERS[s] for s in self.symbols)

    def codes(self) -> np.ndarray:
        return np.array(self.symbols, dtype=np.int64)

    def __len__(self) -> int:
        return len(self.symbols)

    def __iter__(self):
        return iter(self.symbols)

    def __getitem__(self, i):
        return self.symbols[i]


@dataclass(frozen=True)
class FrequencyHistogram:
    counts: dict[Hashable, int] = field(default_factory=dict)
    total: int = 0

    def __getitem__(self, symbol: Hashable) -> int:
        # symbols absent from the sequence have frequency 0
        return self.counts.get(symbol, 0)


@dataclass(frozen=True)
class EedParams:
    lam: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "lam", check_lambda(self.lam))


LambdaLike = Union[float, int, EedParams]


def _lam(p: LambdaLike) -> float:
    if isinstance(p, EedParams):
        return p.lam
    return check_lambda(p)


def _elements(seq: Any) -> Iterable[Hashable]:
    if isinstance(seq, (str, SymbolicSequence)):
        return seq
    return (int(x) for x in np.asarray(seq).ravel())


def edit_distance(s, t) -> int:
    """Levenshtein distance with unit insert, delete and substitute costs."""
    return int(_kernels.edit_distance_codes(as_codes(s), as_codes(t)))


def char_histogram(s) -> FrequencyHistogram:
    counts = Counter(_elements(s))
    return FrequencyHistogram(dict(counts), sum(counts.values()))


def histogram_divergence(s, t) -> int:
    """``|s| + |t| - 2 * sum_i min(f_i(s), f_i(t))``.

    Equal to the L1 distance between the two symbol-count histograms, and
    zero exactly when ``s`` and ``t`` are anagrams.
    """
    return int(_kernels.histogram_divergence_codes(as_codes(s), as_codes(t)))


def eed(s, t, lam: LambdaLike) -> float:
    """Extended edit distance with frequency factor ``lam``.

    >>> eed("marwan", "aarwin", 1.0)
    4.0
    """
    lam = _lam(lam)
    a = as_codes(s)
    b = as_codes(t)
    ed = int(_kernels.edit_distance_codes(a, b))
    hd = int(_kernels.histogram_divergence_codes(a, b))
    return ed + lam * hd


def lcss(s, t) -> int:
    """Length of the longest common (not necessarily contiguous) subsequence."""
    return int(_kernels.lcss_codes(as_codes(s), as_codes(t)))


def distinct_char_count(s, t) -> int:
    """Number of distinct symbols occurring in either sequence."""
    return len(set(_elements(s)) | set(_elements(t)))


def pack(seqs) -> tuple[np.ndarray, np.ndarray]:
    """Pack sequences into a right-padded 2-d code array plus a length vector."""
    codes = [as_codes(s) for s in seqs]
    lengths = np.array([c.shape[0] for c in codes], dtype=np.int64)
    width = int(lengths.max()) if len(codes) else 0
    out = np.zeros((len(codes), width), dtype=np.int64)
    for i, c in enumerate(codes):
        out[i, : c.shape[0]] = c
    return out, lengths


def pairwise_ed_hd(a, b=None) -> tuple[np.ndarray, np.ndarray]:
    """Integer edit-distance and histogram-divergence matrices.

    With ``b`` omitted the matrices are the (symmetric) self-distances of ``a``.
    """
    pa, la = pack(a)
    if b is None:
        return _kernels.pairwise_ed_hd(pa, la, pa, la, True)
    pb, lb = pack(b)
    return _kernels.pairwise_ed_hd(pa, la, pb, lb, False)


def pairwise_lcss(a, b=None) -> np.ndarray:
    pa, la = pack(a)
    if b is None:
        return _kernels.pairwise_lcss(pa, la, pa, la, True)
    pb, lb = pack(b)
    return _kernels.pairwise_lcss(pa, la, pb, lb, False)
