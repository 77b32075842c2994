import math

import numpy as np
import pytest

from eedist.dataset import synthetic_strings
from eedist.evaluation import MetricSpec
from eedist.metricindex import LEAF_SIZE, MetricIndex, VpLeaf, build, query_nn, query_range
from eedist.seqdist import eed
from eedist.validation import InvalidParameterError, NotAMetricError


def linear_nn(index, q):
    d = index.linear_scan(q)
    i = int(np.argmin(d))
    return i, d[i]


def test_single_item_is_a_leaf():
    idx = build(["abc"], MetricSpec("ED"))
    assert isinstance(idx.root, VpLeaf)
    assert query_nn(idx, "abd") == (0, 1.0)


def test_identical_items():
    idx = MetricIndex.build(["aaa"] * 200, MetricSpec("EED", 1.0), seed=2)
    idx.check_invariants()
    assert idx.query_nn("aaa") == (0, 0.0)
    assert len(idx.query_range("aaa", 0)) == 200


def test_worked_example_strings():
    idx = MetricIndex.build(["aarwnn", "aarwxn", "xarwnn", "xarwxn"], MetricSpec("EED", 1.0))
    assert idx.query_nn("narwan") == (0, 2.0)
    hits = idx.query_range("narwan", 4)
    assert hits == [(0, 2.0), (1, 4.0), (2, 4.0)]


@pytest.mark.parametrize("seed", [0, 1, 2])
def test_node_invariants_hold(seed):
    items = synthetic_strings(seed, 100, 20, 5)
    idx = MetricIndex.build(items, MetricSpec("EED", 0.5), seed=seed)
    idx.check_invariants()


def test_leaf_buckets_are_small():
    idx = MetricIndex.build(synthetic_strings(4, 300, 12, 4), MetricSpec("ED"))
    stack = [idx.root]
    while stack:
        node = stack.pop()
        if node is None:
            continue
        if isinstance(node, VpLeaf):
            assert len(node.items) <= LEAF_SIZE
        else:
            stack += [node.inside, node.outside]


def test_build_is_deterministic_per_seed():
    items = synthetic_strings(5, 80, 10, 4)
    a = MetricIndex.build(items, MetricSpec("ED"), seed=3).root
    b = MetricIndex.build(items, MetricSpec("ED"), seed=3).root
    assert a == b


def test_query_of_indexed_item():
    items = synthetic_strings(9, 120, 16, 6)
    idx = MetricIndex.build(items, MetricSpec("EED", 1.0), seed=1)
    for i in (0, 17, 119):
        j, d = idx.query_nn(items[i])
        assert d == 0.0
        assert items[j] == items[i]
        assert j == min(k for k, s in enumerate(items) if s == items[i])


@pytest.mark.parametrize("lam", [0.0, 0.5, 1.0])
def test_matches_linear_scan(lam):
    rng = np.random.default_rng(int(lam * 10))
    items = synthetic_strings(int(lam * 100), 150, 14, 4)
    idx = MetricIndex.build(items, MetricSpec("EED", lam), seed=5)
    for q in synthetic_strings(99, 60, 14, 4):
        assert idx.query_nn(q) == linear_nn(idx, q)
        radius = float(rng.integers(0, 10))
        d = idx.linear_scan(q)
        expected = sorted(((i, x) for i, x in enumerate(d) if x <= radius), key=lambda h: (h[1], h[0]))
        assert query_range(idx, q, radius) == expected


def test_range_infinite_and_zero():
    items = ["ab", "ba", "abc", "b"]
    idx = MetricIndex.build(items, MetricSpec("ED"))
    assert {i for i, _ in idx.query_range("zz", math.inf)} == {0, 1, 2, 3}
    assert idx.query_range("abc", 0) == [(2, 0.0)]
    with pytest.raises(InvalidParameterError):
        idx.query_range("ab", -1)


def test_rejects_non_metrics():
    with pytest.raises(NotAMetricError, match="not a metric"):
        MetricIndex.build(["ab"], MetricSpec("SAX_MINDIST"))
    with pytest.raises(NotAMetricError):
        MetricIndex.build(["ab"], MetricSpec("LCSS_SIM"))
    with pytest.raises(InvalidParameterError):
        MetricIndex.build([], MetricSpec("ED"))


def test_rejects_injected_asymmetric_metric():
    class LopsidedEed(MetricSpec):
        # frequency term only charged one way round: breaks symmetry and the triangle inequality
        def distance(self, a, b):
            return eed(a, b, self.lam) if len(a) <= len(b) else eed(a, b, 0)

    broken = LopsidedEed("EED", 1.0)
    assert broken.distance("a", "abb") != broken.distance("abb", "a")
    with pytest.raises(NotAMetricError):
        MetricIndex.build(["ab", "abb"], broken)
    with pytest.raises(NotAMetricError):
        MetricIndex.build(["ab"], lambda a, b: 0.0)


def test_lambda_is_fixed_at_build():
    idx = MetricIndex.build(["ab", "ba"], MetricSpec("EED", 0.5))
    assert idx.query_nn("ab", lam=0.5) == (0, 0.0)
    with pytest.raises(InvalidParameterError, match="frequency factor"):
        idx.query_nn("ab", lam=1.0)
    with pytest.raises(InvalidParameterError):
        idx.query_range("ab", 1.0, lam=0.0)


def test_pruning_saves_distance_evaluations():
    rng = np.random.default_rng(42)
    items = [rng.integers(0, 8, 32) for _ in range(1000)]
    idx = MetricIndex.build(items, MetricSpec("EED", 1.0), seed=0)
    calls = []
    for _ in range(25):
        stats = {}
        q = rng.integers(0, 8, 32)
        assert idx.query_nn(q, stats=stats) == linear_nn(idx, q)
        calls.append(stats["distance_calls"])
    assert np.mean(calls) < len(items)
    assert max(calls) <= len(items)
