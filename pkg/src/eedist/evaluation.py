"""1-NN classification, leave-one-out tuning and test-set evaluation.

The experimental protocol: symbolize every series with SAX at a fixed
compression ratio, choose the alphabet size (and, for EED, the frequency
factor) that minimizes leave-one-out 1-NN error on the training set, then
report the 1-NN error on the test set with those parameters.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import asdict, dataclass, field
from enum import Enum
from typing import Iterable, Sequence

import numpy as np
from sklearn.base import BaseEstimator, ClassifierMixin
from sklearn.utils.multiclass import unique_labels
from sklearn.utils.validation import check_array, check_is_fitted, check_X_y

from . import seqdist
from .dataset import LabeledDataset
from .sax import SAXTransformer, SaxWord, mindist, mindist_matrix, z_normalize
from .validation import (
    InvalidParameterError,
    check_alphabet_size,
    check_lambda,
    check_range,
    check_ratio,
)

__all__ = [
    "MetricKind",
    "MetricSpec",
    "TuneReport",
    "EvalReport",
    "Summary",
    "NearestNeighborClassifier",
    "DEFAULT_LAMBDAS",
    "represent",
    "pairwise_distances",
    "nn1_classify",
    "loocv_error",
    "grid_search",
    "evaluate",
    "summarize",
]

DEFAULT_LAMBDAS = (0.0, 0.25, 0.5, 0.75, 1.0)
LAMBDA_STEP = 0.25
LAMBDA_CEILING = 4.0


class MetricKind(str, Enum):
    ED = "ED"
    EED = "EED"
    SAX_MINDIST = "SAX_MINDIST"
    LCSS_SIM = "LCSS_SIM"
    EUCLIDEAN = "EUCLIDEAN"

    @classmethod
    def parse(cls, name) -> "MetricKind":
        if isinstance(name, cls):
            return name
        key = str(name).strip().upper().replace("-", "_")
        aliases = {"SAX": cls.SAX_MINDIST, "MINDIST": cls.SAX_MINDIST, "LCSS": cls.LCSS_SIM,
                   "EUCLID": cls.EUCLIDEAN, "EUCLIDEAN": cls.EUCLIDEAN}
        if key in aliases:
            return aliases[key]
        try:
            return cls(key)
        except ValueError:
            raise InvalidParameterError(f"unknown metric {name!r}") from None

    @property
    def symbolic(self) -> bool:
        return self is not MetricKind.EUCLIDEAN


@dataclass(frozen=True)
class MetricSpec:
    """Which distance to use, plus the frequency factor when it is EED."""

    kind: MetricKind
    lam: float | None = None

    def __post_init__(self):
        kind = MetricKind.parse(self.kind)
        object.__setattr__(self, "kind", kind)
        if kind is MetricKind.EED:
            if self.lam is None:
                raise InvalidParameterError("EED needs a frequency factor")
            object.__setattr__(self, "lam", check_lambda(self.lam))
        elif self.lam is not None:
            raise InvalidParameterError(f"{kind.value} takes no frequency factor")

    @classmethod
    def of(cls, kind, lam: float | None = None) -> "MetricSpec":
        """Build a spec, dropping ``lam`` for kinds that do not use it."""
        kind = MetricKind.parse(kind)
        return cls(kind, lam if kind is MetricKind.EED else None)

    @property
    def is_metric(self) -> bool:
        return self.kind in (MetricKind.ED, MetricKind.EED)

    def distance(self, a, b) -> float:
        kind = self.kind
        if kind is MetricKind.ED:
            return float(seqdist.edit_distance(a, b))
        if kind is MetricKind.EED:
            return seqdist.eed(a, b, self.lam)
        if kind is MetricKind.LCSS_SIM:
            return float(_lcss_dissimilarity(seqdist.lcss(a, b), len(a), len(b)))
        if kind is MetricKind.SAX_MINDIST:
            return mindist(a, b)
        diff = np.asarray(a, dtype=np.float64) - np.asarray(b, dtype=np.float64)
        return float(np.sqrt(np.dot(diff, diff)))


def _lcss_dissimilarity(common, la, lb):
    longest = np.maximum(la, lb)
    return np.where(longest == 0, 0.0, 1.0 - common / np.maximum(longest, 1))


# ---------------------------------------------------------------- representation


def represent(X, kind, alpha: int | None = None, ratio: float = 4) -> list:
    """Put raw series into the domain of ``kind``.

    Symbolic kinds get :class:`SaxWord` objects; EUCLIDEAN gets z-normalized
    full-resolution arrays.
    """
    kind = MetricKind.parse(kind)
    if isinstance(X, LabeledDataset):
        X = X.X
    X = check_array(X, dtype=np.float64)
    if not kind.symbolic:
        return [z_normalize(row) for row in X]
    if alpha is None:
        raise InvalidParameterError(f"{kind.value} needs an alphabet size")
    return SAXTransformer(alphabet_size=alpha, ratio=ratio).fit(X).words(X)


def _word_matrix(words: Sequence[SaxWord]) -> np.ndarray:
    return np.array([w.codes() for w in words], dtype=np.int64).reshape(len(words), -1)


class _Pairwise:
    """Distance components between two item lists, computed once per representation."""

    def __init__(self, kind: MetricKind, a: Sequence, b: Sequence | None = None):
        self.kind = kind
        same = b is None
        b = a if same else b
        if kind in (MetricKind.ED, MetricKind.EED):
            self.ed, self.hd = seqdist.pairwise_ed_hd(a, None if same else b)
        elif kind is MetricKind.LCSS_SIM:
            common = seqdist.pairwise_lcss(a, None if same else b)
            la = np.array([len(x) for x in a])[:, None]
            lb = np.array([len(x) for x in b])[None, :]
            self.base = _lcss_dissimilarity(common, la, lb)
        elif kind is MetricKind.SAX_MINDIST:
            first = a[0]
            for w in list(a) + list(b):
                if w.alphabet_size != first.alphabet_size or w.original_length != first.original_length:
                    raise InvalidParameterError("MINDIST needs words with matching SAX parameters")
            self.base = mindist_matrix(
                _word_matrix(a), _word_matrix(b), first.alphabet_size, first.original_length
            )
        else:
            B = np.asarray(b, dtype=np.float64)
            # row by row rather than the Gram expansion, which cancels badly near 0
            self.base = np.array([np.sqrt(((B - x) ** 2).sum(axis=1)) for x in np.asarray(a, dtype=np.float64)])

    def matrix(self, lam: float | None = None) -> np.ndarray:
        if self.kind is MetricKind.ED:
            return self.ed.astype(np.float64)
        if self.kind is MetricKind.EED:
            return self.ed + lam * self.hd
        return self.base


def pairwise_distances(a: Sequence, b: Sequence | None, metric: MetricSpec) -> np.ndarray:
    """Distance matrix between item lists ``a`` and ``b`` (``b=None`` means ``a`` vs itself)."""
    if len(a) == 0 or (b is not None and len(b) == 0):
        return np.zeros((len(a), 0 if b is None else len(b)))
    return _Pairwise(metric.kind, a, b).matrix(metric.lam)


# ---------------------------------------------------------------- classification


def nn1_classify(query, items: Sequence, labels: Sequence[int], metric: MetricSpec):
    """Label of the nearest training item; ties go to the lowest index."""
    if len(items) == 0:
        raise InvalidParameterError("1-NN needs a nonempty training set")
    if len(items) != len(labels):
        raise InvalidParameterError("items and labels differ in length")
    best_i, best_d = 0, math.inf
    for i, item in enumerate(items):
        d = metric.distance(query, item)
        if d < best_d:
            best_i, best_d = i, d
    return labels[best_i]


def _loocv_misses(dist: np.ndarray, y: np.ndarray) -> int:
    dist = dist.copy()
    np.fill_diagonal(dist, np.inf)
    nearest = np.argmin(dist, axis=1)
    return int(np.sum(y[nearest] != y))


def loocv_error(items: Sequence, labels: Sequence[int], metric: MetricSpec) -> float:
    """Leave-one-out 1-NN error rate."""
    y = np.asarray(labels)
    if len(items) < 2:
        raise InvalidParameterError("leave-one-out needs at least 2 instances")
    if len(items) != len(y):
        raise InvalidParameterError("items and labels differ in length")
    return _loocv_misses(pairwise_distances(items, None, metric), y) / len(y)


class NearestNeighborClassifier(ClassifierMixin, BaseEstimator):
    """1-NN classifier on SAX words (or on z-normalized series for Euclidean).

    Parameters
    ----------
    metric : str, default="eed"
        One of ``ed``, ``eed``, ``sax``, ``lcss``, ``euclidean``.
    alphabet_size : int, default=4
    lam : float, default=0.0
        Frequency factor; only used by ``eed``.
    ratio : float, default=4
        Compression ratio of the PAA step.
    """

    def __init__(self, metric="eed", alphabet_size=4, lam=0.0, ratio=4):
        self.metric = metric
        self.alphabet_size = alphabet_size
        self.lam = lam
        self.ratio = ratio

    def _spec(self) -> MetricSpec:
        return MetricSpec.of(self.metric, self.lam)

    def _represent(self, X):
        if self.spec_.kind.symbolic:
            return self.sax_.words(X)
        return [z_normalize(row) for row in X]

    def fit(self, X, y):
        X, y = check_X_y(X, y, dtype=np.float64)
        self.spec_ = self._spec()
        self.classes_ = unique_labels(y)
        if self.spec_.kind.symbolic:
            self.sax_ = SAXTransformer(
                alphabet_size=check_alphabet_size(self.alphabet_size), ratio=check_ratio(self.ratio)
            ).fit(X)
        self.n_features_in_ = X.shape[1]
        self.items_ = self._represent(X)
        self.labels_ = y
        return self

    def kneighbors_distances(self, X) -> np.ndarray:
        """Distances from each row of ``X`` to every training item."""
        check_is_fitted(self, "items_")
        X = check_array(X, dtype=np.float64)
        return pairwise_distances(self._represent(X), self.items_, self.spec_)

    def predict(self, X):
        dist = self.kneighbors_distances(X)
        return self.labels_[np.argmin(dist, axis=1)]


# ---------------------------------------------------------------- tuning and evaluation


@dataclass(frozen=True)
class TuneReport:
    dataset: str
    metric: str
    best_alpha: int | None
    best_lambda: float | None
    train_error: float
    grid: tuple[tuple[int | None, float | None, float], ...] = field(default=())

    def to_dict(self) -> dict:
        d = asdict(self)
        d["grid"] = [list(g) for g in self.grid]
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "TuneReport":
        return cls(d["dataset"], d["metric"], d["best_alpha"], d["best_lambda"],
                   d["train_error"], tuple(tuple(g) for g in d.get("grid", ())))


@dataclass(frozen=True)
class EvalReport:
    dataset: str
    metric: str
    alpha: int | None
    lam: float | None
    test_error: float
    n_instances: int
    n_errors: int
    train_error: float | None = None

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: dict) -> "EvalReport":
        return cls(**d)


@dataclass(frozen=True)
class Summary:
    metric: str
    mean: float
    std: float
    n_datasets: int

    def to_dict(self) -> dict:
        return asdict(self)


def grid_search(
    train: LabeledDataset,
    kind,
    alpha_range: tuple[int, int] = (3, 10),
    lambda_grid: Iterable[float] = DEFAULT_LAMBDAS,
    ratio: float = 4,
    extend: bool = True,
) -> TuneReport:
    """Pick (alphabet size, frequency factor) by leave-one-out 1-NN error.

    Ties go to the smaller alphabet, then the smaller factor. For EED, when
    the best factor is the largest in the grid and the error fell strictly
    over the last two steps, the grid is extended by 0.25 at a time (up to 4)
    for as long as that keeps being the case.
    """
    kind = MetricKind.parse(kind)
    y = train.y
    if len(y) < 2:
        raise InvalidParameterError("leave-one-out needs at least 2 instances")
    n = len(y)
    ratio = check_ratio(ratio)

    if not kind.symbolic:
        err = _loocv_misses(pairwise_distances(represent(train, kind), None, MetricSpec(kind)), y) / n
        return TuneReport(train.name, kind.value, None, None, err, ((None, None, err),))

    lo, hi = check_range(*alpha_range, name="alphabet range")
    check_alphabet_size(lo)
    check_alphabet_size(hi)
    if kind is MetricKind.EED:
        lams = sorted({check_lambda(v) for v in lambda_grid})
        if not lams:
            raise InvalidParameterError("EED needs a nonempty lambda grid")
    else:
        lams = [None]

    pairs = {alpha: _Pairwise(kind, represent(train, kind, alpha, ratio)) for alpha in range(lo, hi + 1)}
    misses: dict[tuple[int, float | None], int] = {}

    def fill(lam_values):
        for alpha, pw in pairs.items():
            for lam in lam_values:
                misses[alpha, lam] = _loocv_misses(pw.matrix(lam), y)

    def best():
        # keys order: fewest misses, then smaller alpha, then smaller lambda
        return min(misses, key=lambda k: (misses[k], k[0], -1.0 if k[1] is None else k[1]))

    fill(lams)
    best_alpha, best_lam = best()
    while extend and kind is MetricKind.EED and len(lams) >= 3 and best_lam == lams[-1]:
        e = [misses[best_alpha, lam] for lam in lams[-3:]]
        nxt = lams[-1] + LAMBDA_STEP
        if not (e[0] > e[1] > e[2]) or nxt > LAMBDA_CEILING + 1e-12:
            break
        lams.append(nxt)
        fill([nxt])
        best_alpha, best_lam = best()

    grid = tuple((a, lam, misses[a, lam] / n) for a in range(lo, hi + 1) for lam in lams)
    return TuneReport(train.name, kind.value, best_alpha, best_lam, misses[best_alpha, best_lam] / n, grid)


def evaluate(
    train: LabeledDataset,
    test: LabeledDataset,
    kind,
    alpha: int | None = None,
    lam: float | None = None,
    ratio: float = 4,
    train_error: float | None = None,
) -> EvalReport:
    """1-NN test error with fixed parameters."""
    if len(train) == 0 or len(test) == 0:
        raise InvalidParameterError("evaluation needs nonempty train and test sets")
    spec = MetricSpec.of(kind, 0.0 if lam is None else lam)
    clf = NearestNeighborClassifier(
        metric=spec.kind.value, alphabet_size=alpha if alpha is not None else 4,
        lam=spec.lam or 0.0, ratio=ratio,
    ).fit(train.X, train.y)
    pred = clf.predict(test.X)
    wrong = int(np.sum(pred != test.y))
    return EvalReport(
        test.name or train.name, spec.kind.value,
        alpha if spec.kind.symbolic else None, spec.lam,
        wrong / len(test), len(test), wrong, train_error,
    )


def tune_and_evaluate(train, test, kind, alpha_range=(3, 10), lambda_grid=DEFAULT_LAMBDAS, ratio=4):
    tune = grid_search(train, kind, alpha_range, lambda_grid, ratio)
    report = evaluate(train, test, kind, tune.best_alpha, tune.best_lambda, ratio, tune.train_error)
    return tune, report


def summarize(reports: Sequence[EvalReport]) -> Summary:
    """Mean and population standard deviation of test error across datasets."""
    if not reports:
        raise InvalidParameterError("nothing to summarize")
    errors = np.array([r.test_error for r in reports])
    metrics = sorted({r.metric for r in reports})
    return Summary("+".join(metrics), float(errors.mean()), float(errors.std()), len(reports))


# ---------------------------------------------------------------- output formats

_COLUMNS = ("dataset", "method", "alpha", "lambda", "error")


def _rows(reports: Sequence[EvalReport], summaries: Sequence[Summary] = ()) -> list[list[str]]:
    rows = [
        [r.dataset, r.metric, "-" if r.alpha is None else str(r.alpha),
         "-" if r.lam is None else f"{r.lam:g}", f"{r.test_error:.3f}"]
        for r in reports
    ]
    for s in summaries:
        rows.append(["MEAN", s.metric, "-", "-", f"{s.mean:.3f}"])
        rows.append(["STD", s.metric, "-", "-", f"{s.std:.3f}"])
    return rows


def format_table(reports: Sequence[EvalReport], summaries: Sequence[Summary] = ()) -> str:
    rows = [list(_COLUMNS)] + _rows(reports, summaries)
    widths = [max(len(r[i]) for r in rows) for i in range(len(_COLUMNS))]
    lines = ["  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip() for row in rows]
    return "\n".join(lines) + "\n"


def format_csv(reports: Sequence[EvalReport], summaries: Sequence[Summary] = ()) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(_COLUMNS)
    writer.writerows(_rows(reports, summaries))
    return buf.getvalue()


def format_json(reports: Sequence[EvalReport], summaries: Sequence[Summary] = ()) -> str:
    lines = [json.dumps({"type": "eval", **r.to_dict()}, sort_keys=True) for r in reports]
    lines += [json.dumps({"type": "summary", **s.to_dict()}, sort_keys=True) for s in summaries]
    return "\n".join(lines) + "\n"


def parse_json(text: str) -> tuple[list[EvalReport], list[Summary]]:
    reports, summaries = [], []
    for line in text.splitlines():
        if not line.strip():
            continue
        d = json.loads(line)
        kind = d.pop("type")
        if kind == "eval":
            reports.append(EvalReport.from_dict(d))
        elif kind == "summary":
            summaries.append(Summary(**d))
    return reports, summaries
