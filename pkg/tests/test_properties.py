"""Property-based checks of the distance invariants."""

from hypothesis import assume, given, settings
from hypothesis import strategies as st

from eedist.seqdist import edit_distance, eed, histogram_divergence
from oracles import l1_histogram


def words(alpha=6, max_size=24):
    return st.lists(st.integers(0, alpha - 1), max_size=max_size)


lambdas = st.sampled_from([0.0, 0.25, 0.5, 1.0, 2.0]) | st.floats(0, 10, allow_nan=False)


@given(words(), words(), lambdas)
def test_eed_symmetric_and_nonnegative(s, t, lam):
    d = eed(s, t, lam)
    assert d >= 0
    assert d == eed(t, s, lam)


@given(words(), words(), lambdas)
def test_eed_identity_of_indiscernibles(s, t, lam):
    assert eed(s, s, lam) == 0
    if s != t:
        assert eed(s, t, lam) > 0


@given(words(), words(), words(), lambdas)
def test_eed_triangle_inequality(s, t, r, lam):
    assert eed(s, t, lam) <= eed(s, r, lam) + eed(r, t, lam) + 1e-9


@given(words(), words(), words())
def test_histogram_divergence_triangle_exact(s, t, r):
    assert histogram_divergence(s, t) <= histogram_divergence(s, r) + histogram_divergence(r, t)


@given(words(), words())
def test_histogram_divergence_is_l1(s, t):
    assert histogram_divergence(s, t) == l1_histogram(s, t)


@given(words(), words(), lambdas)
def test_edit_distance_lower_bounds_eed(s, t, lam):
    ed = edit_distance(s, t)
    assert ed <= eed(s, t, lam)
    assert eed(s, t, 0.0) == ed


@given(words(), words(), st.randoms(use_true_random=False))
def test_histogram_divergence_permutation_invariant(s, t, rnd):
    before = histogram_divergence(s, t)
    s2, t2 = list(s), list(t)
    rnd.shuffle(s2)
    rnd.shuffle(t2)
    assert histogram_divergence(s2, t2) == before


@given(words(alpha=3, max_size=10), st.randoms(use_true_random=False))
def test_anagrams_have_zero_divergence(s, rnd):
    t = list(s)
    rnd.shuffle(t)
    assert histogram_divergence(s, t) == 0


@given(words(alpha=3, max_size=10), words(alpha=3, max_size=10))
def test_zero_divergence_only_for_anagrams(s, t):
    assume(sorted(s) != sorted(t))
    assert histogram_divergence(s, t) > 0


@settings(max_examples=200)
@given(words(), words())
def test_length_bounds(s, t):
    ed = edit_distance(s, t)
    assert abs(len(s) - len(t)) <= ed <= max(len(s), len(t))
    assert histogram_divergence(s, t) <= len(s) + len(t)
    # each edit moves the divergence by at most 2 (used by the index filter)
    assert 2 * ed >= histogram_divergence(s, t)
