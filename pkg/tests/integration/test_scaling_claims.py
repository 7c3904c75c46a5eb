"""Tests for the scaling behaviour of the evaluator variants on the benchmark shapes."""

from __future__ import annotations

import pytest

from bench.models import Verdict
from bench.runner import expected_superlinear, run_record, sweep, verdicts
from evaluators.variants import Variant
from terms.core import distinct_node_count, tree_size
from terms.identity import share_common
from terms.shapes import Shape, random_term
from terms.sharing import sharing_violations

SMALL_BUDGET = 10**5
FULL_BUDGET = 10**7
LARGE_N = 2**16


def visit_limit(shape, n):
    return 10 * (n + 1) if shape == Shape.TOWER else 10 * (2 * n + 3)


@pytest.mark.parametrize("shape", Shape.values)
def test_sweep_verdicts_match_the_expected_growth(shape):
    """Test sweep verdicts match the expected growth.

    :param shape: Shape name.
    :return: None
    :rtype: None
    """
    records = sweep(list(Variant), shape, budget=SMALL_BUDGET)
    results = {result.variant: result.verdict for result in verdicts(records)}
    expected = {
        variant.label: Verdict.SUPERLINEAR if expected_superlinear(variant, shape) else Verdict.LINEAR
        for variant in Variant
    }
    assert results == expected


@pytest.mark.parametrize("shape", [Shape.TOWER, Shape.TWIN_DISJOINT])
def test_exponential_variants_run_out_of_budget_at_height_32(shape):
    """Test exponential variants run out of budget at height 32.

    :param shape: Shape name.
    :return: None
    :rtype: None
    """
    for variant in Variant:
        if expected_superlinear(variant, shape):
            assert run_record(variant, shape, 32, budget=SMALL_BUDGET).budget_exhausted, variant.label


@pytest.mark.parametrize("shape", [Shape.TOWER, Shape.TWIN_DISJOINT])
def test_linear_variants_stay_within_ten_visits_per_node(shape):
    """Test linear variants stay within ten visits per node.

    :param shape: Shape name.
    :return: None
    :rtype: None
    """
    for variant in Variant:
        if expected_superlinear(variant, shape):
            continue
        record = run_record(variant, shape, LARGE_N, budget=FULL_BUDGET)
        assert not record.budget_exhausted, variant.label
        assert record.visits <= visit_limit(shape, LARGE_N), variant.label
        assert record.value_mod64 == 0


def test_id_cache_on_a_tower_visits_three_per_level():
    """Test id cache on a tower visits three per level.

    :return: None
    :rtype: None
    """
    for n in (8, 64, 1024):
        assert run_record(Variant.ID_CACHE, Shape.TOWER, n).visits == 3 * n + 1


def test_max_sharing_over_random_terms():
    """Test max sharing over random terms.

    :return: None
    :rtype: None
    """
    for seed in range(1000):
        t = random_term(seed, 7, (0.0, 0.5, 0.9)[seed % 3])
        shared = share_common(t)
        assert tree_size(shared) == tree_size(t)
        assert distinct_node_count(shared) <= distinct_node_count(t)
        assert not sharing_violations(shared)


@pytest.mark.slow
@pytest.mark.parametrize("shape", [Shape.TOWER, Shape.TWIN_DISJOINT])
def test_exponential_variants_exhaust_the_default_budget(shape):
    """Test exponential variants exhaust the default budget.

    :param shape: Shape name.
    :return: None
    :rtype: None
    """
    for variant in Variant:
        if expected_superlinear(variant, shape):
            record = run_record(variant, shape, 32)
            assert record.budget_exhausted, variant.label
            assert record.value_mod64 is None
