"""Tests for canonicalization and the share state."""

from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from terms.core import distinct_node_count, iter_distinct, mk_add, mk_one, rebuild, term_eq_pure
from terms.exceptions import BudgetExhausted
from terms.instrumentation import VisitCounter
from terms.shapes import random_term, tower, twin_disjoint
from terms.sharing import ShareState, sharing_violations


def test_canonicalize_keeps_an_already_shared_tower():
    """Test canonicalize keeps an already shared tower.

    :return: None
    :rtype: None
    """
    t = tower(10)
    state = ShareState()
    assert state.canonicalize(t) is t
    assert state.stats.interner_size == 11


def test_canonicalize_merges_disjoint_towers():
    """Test canonicalize merges disjoint towers.

    :return: None
    :rtype: None
    """
    t = twin_disjoint(12)
    shared = ShareState().canonicalize(t)
    assert term_eq_pure(shared, t)
    assert shared.left is shared.right
    assert distinct_node_count(shared) == 14
    assert sharing_violations(t)
    assert sharing_violations(shared) == []


def test_all_leaves_collapse_to_one_canonical_leaf():
    """Test all leaves collapse to one canonical leaf.

    :return: None
    :rtype: None
    """
    ones = [mk_one() for _ in range(4)]
    t = mk_add(mk_add(ones[0], ones[1]), mk_add(ones[2], ones[3]))
    shared = ShareState().canonicalize(t)
    assert shared.left.left is shared.left.right is shared.right.left is shared.right.right


def test_canonicalize_visits_linear_in_graph_size():
    """Test canonicalize visits linear in graph size.

    :return: None
    :rtype: None
    """
    counter = VisitCounter()
    ShareState().canonicalize(twin_disjoint(200), counter)
    assert counter.visits <= 3 * (2 * 200 + 3)


def test_canonicalize_respects_the_budget():
    """Test canonicalize respects the budget.

    :return: None
    :rtype: None
    """
    with pytest.raises(BudgetExhausted):
        ShareState().canonicalize(twin_disjoint(50), VisitCounter(budget=10))


def test_second_canonicalization_is_a_no_op():
    """Test second canonicalization is a no op.

    :return: None
    :rtype: None
    """
    t = random_term(7, 10, 0.5)
    state = ShareState()
    first = state.canonicalize(t)
    before = state.stats
    again = state.canonicalize(t)
    assert again is first
    assert state.stats.insertions == before.insertions
    assert state.canonicalize(first) is first
    assert state.stats.insertions == before.insertions


def test_state_extends_across_terms():
    """Test state extends across terms.

    :return: None
    :rtype: None
    """
    state = ShareState()
    small = state.canonicalize(tower(3))
    large = state.canonicalize(rebuild(tower(5)))
    assert large.left.left is small
    assert state.canonical_of(small) is small
    assert state.stats.interner_size == 6
    assert state.stats.memo_size >= 6


def test_canonical_of_unknown_node_is_none():
    """Test canonical of unknown node is none.

    :return: None
    :rtype: None
    """
    assert ShareState().canonical_of(mk_one()) is None


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(min_value=0, max_value=2**32 - 1), reuse_prob=st.sampled_from([0.0, 0.5, 0.9]))
def test_canonical_form_is_maximally_shared(seed, reuse_prob):
    """Test canonical form is maximally shared.

    :param seed: Random seed.
    :param reuse_prob: Node reuse probability.
    :return: None
    :rtype: None
    """
    t = random_term(seed, 8, reuse_prob)
    shared = ShareState().canonicalize(t)
    assert term_eq_pure(shared, t)
    nodes = list(iter_distinct(shared))
    for index, first in enumerate(nodes):
        for second in nodes[index + 1:]:
            assert not term_eq_pure(first, second)


def test_memoized_subtree_costs_one_visit():
    """Test memoized subtree costs one visit.

    :return: None
    :rtype: None
    """
    t = tower(12)
    state = ShareState()
    state.canonicalize(t)
    counter = VisitCounter()
    assert state.canonicalize(t, counter) is t
    assert counter.visits == 1
    wrapped = mk_add(t, mk_one())
    counter = VisitCounter()
    state.canonicalize(wrapped, counter)
    assert counter.visits == 3
