"""Exact nearest-neighbor search over symbolic sequences with a vantage-point tree.

Pruning relies on the triangle inequality, so only true metrics (edit
distance, extended edit distance with a fixed frequency factor) are accepted.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from . import _kernels
from .evaluation import MetricKind, MetricSpec
from .validation import InvalidParameterError, NotAMetricError, as_codes, check_lambda

__all__ = ["VpNode", "VpLeaf", "MetricIndex", "build", "query_nn", "query_range"]

LEAF_SIZE = 16
# slack on pruning bounds so float rounding in ed + lam * hd never discards a tie
_SLACK = 1e-9


@dataclass(frozen=True)
class VpLeaf:
    items: tuple[int, ...]


@dataclass(frozen=True)
class VpNode:
    vantage: int
    radius: float
    inside: Union["VpNode", VpLeaf, None]
    outside: Union["VpNode", VpLeaf, None]


def _check_metric(metric) -> MetricSpec:
    if isinstance(metric, str):
        metric = MetricSpec.of(metric, 0.0)
    # exact type: a subclass could override distance() with something non-metric
    if type(metric) is not MetricSpec:
        raise NotAMetricError(f"{metric!r} is not a metric; the index accepts ED or EED specs only")
    if not metric.is_metric:
        raise NotAMetricError(f"{metric.kind.value} is not a metric; the index accepts ED or EED only")
    return metric


class MetricIndex:
    """Immutable VP-tree over a fixed list of sequences.

    Build with :meth:`build`; the index keeps the frequency factor it was
    built with, and queries with a different one are rejected.
    """

    def __init__(self, items, root, metric: MetricSpec):
        self._codes = tuple(items)
        self.root = root
        self.metric = metric
        self._lam = metric.lam if metric.kind is MetricKind.EED else 0.0

    @classmethod
    def build(cls, items: Sequence, metric, seed: int = 0) -> "MetricIndex":
        metric = _check_metric(metric)
        if len(items) == 0:
            raise InvalidParameterError("cannot index an empty collection")
        codes = [as_codes(s) for s in items]
        index = cls(codes, None, metric)
        rng = np.random.default_rng(seed)

        # iterative build: degenerate inputs (many duplicates) would otherwise recurse too deep
        root_slot: list = [None]
        stack = [(list(range(len(codes))), root_slot, 0)]
        while stack:
            ids, slot, pos = stack.pop()
            if len(ids) <= LEAF_SIZE:
                slot[pos] = VpLeaf(tuple(ids))
                continue
            vantage = ids.pop(int(rng.integers(len(ids))))
            dists = np.array([index._distance(codes[vantage], codes[i]) for i in ids])
            # lower median
            radius = float(np.sort(dists)[(len(dists) - 1) // 2])
            inside = [i for i, d in zip(ids, dists) if d <= radius]
            outside = [i for i, d in zip(ids, dists) if d > radius]
            children: list = [None, None]
            slot[pos] = (vantage, radius, children)
            if inside:
                stack.append((inside, children, 0))
            if outside:
                stack.append((outside, children, 1))

        index.root = _freeze(root_slot[0])
        return index

    def __len__(self) -> int:
        return len(self._codes)

    def _distance(self, a: np.ndarray, b: np.ndarray) -> float:
        ed = int(_kernels.edit_distance_codes(a, b))
        if self.metric.kind is MetricKind.ED:
            return float(ed)
        return ed + self._lam * int(_kernels.histogram_divergence_codes(a, b))

    def _lower_bound(self, a: np.ndarray, b: np.ndarray) -> float:
        # one edit moves the histogram divergence by at most 2, so ed >= ceil(hd / 2)
        hd = int(_kernels.histogram_divergence_codes(a, b))
        ed_floor = max(abs(a.shape[0] - b.shape[0]), (hd + 1) // 2)
        if self.metric.kind is MetricKind.ED:
            return float(ed_floor)
        return ed_floor + self._lam * hd

    def _check_query_lambda(self, lam):
        if lam is not None and check_lambda(lam) != self._lam:
            raise InvalidParameterError(
                f"index was built with frequency factor {self._lam}, query asked for {lam}"
            )

    def query_nn(self, q, lam: float | None = None, stats: dict | None = None) -> tuple[int, float]:
        """Nearest item as ``(id, distance)``; the lowest id wins ties.

        Leaf items are first screened with a histogram lower bound and only
        fully evaluated when they could still beat the current best. Pass a
        dict as ``stats`` to receive the number of full distance evaluations.
        """
        self._check_query_lambda(lam)
        qc = as_codes(q)
        best_id, best_d = -1, math.inf
        calls = 0
        stack = [(self.root, 0.0)]
        while stack:
            node, bound = stack.pop()
            if node is None or bound > best_d + _SLACK:
                continue
            if isinstance(node, VpLeaf):
                for i in node.items:
                    if self._lower_bound(qc, self._codes[i]) > best_d + _SLACK:
                        continue
                    d = self._distance(qc, self._codes[i])
                    calls += 1
                    if d < best_d or (d == best_d and i < best_id):
                        best_id, best_d = i, d
                continue
            d = self._distance(qc, self._codes[node.vantage])
            calls += 1
            if d < best_d or (d == best_d and node.vantage < best_id):
                best_id, best_d = node.vantage, d
            inside = (node.inside, d - node.radius)
            outside = (node.outside, node.radius - d)
            # the side q falls in goes on top so it is searched first
            if d <= node.radius:
                stack.extend([outside, inside])
            else:
                stack.extend([inside, outside])
        if stats is not None:
            stats["distance_calls"] = calls
        return best_id, best_d

    def query_range(self, q, radius: float, lam: float | None = None) -> list[tuple[int, float]]:
        """All ``(id, distance)`` with distance <= radius, sorted by (distance, id)."""
        self._check_query_lambda(lam)
        if not radius >= 0:
            raise InvalidParameterError(f"radius must be >= 0, got {radius}")
        qc = as_codes(q)
        hits = []
        stack = [self.root]
        while stack:
            node = stack.pop()
            if node is None:
                continue
            if isinstance(node, VpLeaf):
                for i in node.items:
                    if self._lower_bound(qc, self._codes[i]) > radius + _SLACK:
                        continue
                    d = self._distance(qc, self._codes[i])
                    if d <= radius:
                        hits.append((i, d))
                continue
            d = self._distance(qc, self._codes[node.vantage])
            if d <= radius:
                hits.append((node.vantage, d))
            if d - node.radius <= radius + _SLACK:
                stack.append(node.inside)
            if node.radius - d < radius + _SLACK:
                stack.append(node.outside)
        hits.sort(key=lambda h: (h[1], h[0]))
        return hits

    def linear_scan(self, q) -> list[float]:
        """Distances from ``q`` to every item, in id order."""
        qc = as_codes(q)
        return [self._distance(qc, c) for c in self._codes]

    def check_invariants(self) -> None:
        """Walk the tree and raise AssertionError on any violated node invariant."""
        seen: list[int] = []
        stack = [self.root]
        while stack:
            node = stack.pop()
            if node is None:
                continue
            if isinstance(node, VpLeaf):
                assert len(node.items) <= LEAF_SIZE, "oversized leaf"
                seen.extend(node.items)
                continue
            seen.append(node.vantage)
            v = self._codes[node.vantage]
            for i in _subtree_ids(node.inside):
                assert self._distance(v, self._codes[i]) <= node.radius, "inside item beyond radius"
            for i in _subtree_ids(node.outside):
                assert self._distance(v, self._codes[i]) > node.radius, "outside item within radius"
            stack.extend([node.inside, node.outside])
        assert sorted(seen) == list(range(len(self._codes))), "items missing or duplicated"


def _freeze(node):
    """Turn the mutable build scaffolding into nested frozen nodes."""
    if node is None or isinstance(node, VpLeaf):
        return node
    # post-order without recursion
    order = []
    stack = [node]
    while stack:
        n = stack.pop()
        order.append(n)
        for child in n[2]:
            if isinstance(child, tuple):
                stack.append(child)
    frozen: dict[int, VpNode] = {}
    for n in reversed(order):
        kids = [frozen[id(c)] if isinstance(c, tuple) else c for c in n[2]]
        frozen[id(n)] = VpNode(n[0], n[1], kids[0], kids[1])
    return frozen[id(node)]


def _subtree_ids(node) -> list[int]:
    out = []
    stack = [node]
    while stack:
        n = stack.pop()
        if n is None:
            continue
        if isinstance(n, VpLeaf):
            out.extend(n.items)
        else:
            out.append(n.vantage)
            stack.extend([n.inside, n.outside])
    return out


def build(items: Sequence, metric, seed: int = 0) -> MetricIndex:
    return MetricIndex.build(items, metric, seed)


def query_nn(index: MetricIndex, q, lam: float | None = None) -> tuple[int, float]:
    return index.query_nn(q, lam)


def query_range(index: MetricIndex, q, radius: float, lam: float | None = None):
    return index.query_range(q, radius, lam)
