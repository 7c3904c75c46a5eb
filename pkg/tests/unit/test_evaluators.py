"""Tests for the reference evaluator and the eight variants."""

from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from caching.idcache import IdCache
from evaluators.variants import (
    Variant,
    eval_nat_exact,
    eval_nat_id_cache,
    eval_nat_naive,
    run_variant,
)
from terms.core import MASK64, mk_one, tree_size
from terms.exceptions import ContractViolation
from terms.identity import injected_fault
from terms.shapes import build_shape, random_term, tower, twin_disjoint


def test_naive_evaluation_visits_every_tree_node():
    """Test naive evaluation visits every tree node.

    :return: None
    :rtype: None
    """
    outcome = eval_nat_naive(tower(3))
    assert (outcome.value, outcome.visits) == (8, 15)
    assert not outcome.budget_exhausted
    assert eval_nat_naive(twin_disjoint(3)).value == 16
    assert eval_nat_naive(mk_one()).value == 1


def test_naive_evaluation_reports_an_exhausted_budget():
    """Test naive evaluation reports an exhausted budget.

    :return: None
    :rtype: None
    """
    outcome = eval_nat_naive(tower(20), budget=1000)
    assert outcome.value is None
    assert outcome.budget_exhausted
    assert outcome.visits == 1001


def test_exact_evaluation_is_unbounded():
    """Test exact evaluation is unbounded.

    :return: None
    :rtype: None
    """
    assert eval_nat_exact(tower(100)) == 2**100
    assert eval_nat_exact(twin_disjoint(70)) == 2**71


def test_variant_parse_accepts_indexes_and_slugs():
    """Test variant parse accepts indexes and slugs.

    :return: None
    :rtype: None
    """
    assert Variant.parse("7") is Variant.ID_CACHE
    assert Variant.parse("memo-fast-eq-fast-hash-shared") is Variant.MEMO_FAST_EQ_FAST_HASH_SHARED
    assert Variant.parse(" no-cache ") is Variant.NO_CACHE
    with pytest.raises(ValueError):
        Variant.parse("9")
    with pytest.raises(ValueError):
        Variant.parse("memo")


@pytest.mark.parametrize("n", [0, 1, 10, 200])
def test_id_cache_visits_on_a_tower(n):
    """Test id cache visits on a tower.

    :param n: Tower height.
    :return: None
    :rtype: None
    """
    outcome = run_variant(Variant.ID_CACHE, tower(n))
    assert outcome.visits == 3 * n + 1
    assert outcome.value == 2**n & MASK64


def test_eval_nat_id_cache_reuses_its_cache():
    """Test eval nat id cache reuses its cache.

    :return: None
    :rtype: None
    """
    t = tower(12)
    value, cache = eval_nat_id_cache(t)
    assert value == 4096
    assert isinstance(cache, IdCache)
    entries = len(cache)
    again, same = eval_nat_id_cache(t, cache)
    assert again == 4096
    assert same is cache
    assert len(cache) == entries


@pytest.mark.parametrize("variant", list(Variant))
def test_every_variant_matches_the_exact_value(variant):
    """Test every variant matches the exact value.

    :param variant: Evaluator variant.
    :return: None
    :rtype: None
    """
    for shape in ("tower", "twin-shared", "twin-disjoint"):
        t = build_shape(shape, 6)
        outcome = run_variant(variant, t)
        assert outcome.value == eval_nat_exact(t) & MASK64
        assert outcome.wall_nanos >= 0


@pytest.mark.parametrize("variant", [1, 2, 3, 4])
def test_unshared_variants_blow_up_on_a_tower(variant):
    """Test unshared variants blow up on a tower.

    :param variant: Variant index.
    :return: None
    :rtype: None
    """
    outcome = run_variant(variant, tower(24), budget=10**5)
    assert outcome.budget_exhausted
    assert outcome.value is None


@pytest.mark.parametrize("variant", [5, 6, 7, 8])
def test_sharing_aware_variants_stay_linear_on_a_tower(variant):
    """Test sharing aware variants stay linear on a tower.

    :param variant: Evaluator variant.
    :return: None
    :rtype: None
    """
    n = 1024
    outcome = run_variant(variant, tower(n), budget=10**6)
    assert outcome.value == 0
    assert outcome.visits <= 10 * (n + 1)


def test_memo_fast_eq_blows_up_on_disjoint_towers():
    """Test memo fast eq blows up on disjoint towers.

    :return: None
    :rtype: None
    """
    outcome = run_variant(Variant.MEMO_FAST_EQ_FAST_HASH, twin_disjoint(24), budget=10**5)
    assert outcome.budget_exhausted


@pytest.mark.parametrize("variant", [6, 7, 8])
def test_linear_variants_on_disjoint_towers(variant):
    """Test linear variants on disjoint towers.

    :param variant: Evaluator variant.
    :return: None
    :rtype: None
    """
    n = 1000
    outcome = run_variant(variant, twin_disjoint(n), budget=10**6)
    assert outcome.value == 2**1001 % 2**64 == 0
    assert outcome.visits <= 10 * (2 * n + 3)


def test_small_disjoint_values_wrap_like_the_exact_oracle():
    """Test small disjoint values wrap like the exact oracle.

    :return: None
    :rtype: None
    """
    for n in (62, 63, 64, 65):
        outcome = run_variant(Variant.MEMO_FAST_EQ_FAST_HASH_SHARED, twin_disjoint(n))
        assert outcome.value == eval_nat_exact(twin_disjoint(n)) % 2**64


def test_variants_run_in_dual_check(dual_check, small_terms):
    """Test variants run in dual check.

    :param dual_check: Dual-check fixture.
    :param small_terms: Random term corpus.
    :return: None
    :rtype: None
    """
    for t in small_terms[:9]:
        for variant in Variant:
            assert run_variant(variant, t).value == eval_nat_exact(t) & MASK64


def test_injected_fault_surfaces_in_dual_check(dual_check):
    """Test injected fault surfaces in dual check.

    :param dual_check: Dual-check fixture.
    :return: None
    :rtype: None
    """
    with injected_fault():
        with pytest.raises(ContractViolation):
            run_variant(Variant.MEMO_FAST_EQ_FAST_HASH, tower(4))


@pytest.mark.parametrize(
    "variant, shape",
    [(5, "tower"), (6, "tower"), (7, "tower"), (8, "tower"), (6, "twin-disjoint"), (7, "twin-disjoint"), (8, "twin-disjoint")],
)
def test_dual_check_stays_linear_on_tall_shared_shapes(dual_check, variant, shape):
    """Test dual check stays linear on tall shared shapes.

    :param dual_check: Dual-check fixture.
    :param variant: Variant index.
    :param shape: Shape name.
    :return: None
    :rtype: None
    """
    t = build_shape(shape, 40)
    outcome = run_variant(variant, t, budget=10**5)
    assert not outcome.budget_exhausted
    assert outcome.value == eval_nat_exact(t) & MASK64
    assert outcome.visits <= 10 * (2 * 40 + 3)


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(min_value=0, max_value=2**32 - 1), reuse_prob=st.sampled_from([0.0, 0.5, 0.9]))
def test_variants_agree_with_the_naive_evaluator(seed, reuse_prob):
    """Test variants agree with the naive evaluator.

    :param seed: Random seed.
    :param reuse_prob: Node reuse probability.
    :return: None
    :rtype: None
    """
    t = random_term(seed, 8, reuse_prob)
    naive = eval_nat_naive(t)
    assert naive.visits == tree_size(t)
    for variant in Variant:
        assert run_variant(variant, t).value == naive.value
