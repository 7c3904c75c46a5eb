"""Tests for the identity primitives and purity modes."""

from __future__ import annotations

import pytest

from terms.core import mk_add, mk_one, rebuild, slow_hash, term_eq_pure
from terms.exceptions import ContractViolation
from terms.identity import (
    NULL_TOKEN,
    IdEqResult,
    PurityMode,
    current_mode,
    identity_shortcut,
    injected_fault,
    purity_mode,
    share_common,
    with_id_eq,
    with_id_eq_result,
    with_id_rel,
    with_id_token,
    with_share_common,
)
from terms.instrumentation import VisitCounter
from terms.shapes import tower, twin_disjoint
from terms.sharing import ShareState


class _Calls:
    def __init__(self, answer=True):
        self.count = 0
        self.answer = answer

    def __call__(self):
        self.count += 1
        return self.answer


def test_default_mode_comes_from_settings(settings):
    """Test default mode comes from settings.

    :param settings: pytest-django settings fixture.
    :return: None
    :rtype: None
    """
    assert current_mode() is PurityMode.ACCELERATED
    settings.TERMBENCH_PURITY_MODE = "reference"
    assert current_mode() is PurityMode.REFERENCE


def test_purity_mode_context_restores_the_previous_mode():
    """Test purity mode context restores the previous mode.

    :return: None
    :rtype: None
    """
    with purity_mode(PurityMode.DUAL_CHECK):
        with purity_mode("reference"):
            assert current_mode() is PurityMode.REFERENCE
        assert current_mode() is PurityMode.DUAL_CHECK
    assert current_mode() is PurityMode.ACCELERATED


def test_with_id_eq_skips_the_thunk_on_identity():
    """Test with id eq skips the thunk on identity.

    :return: None
    :rtype: None
    """
    t = tower(3)
    thunk = _Calls()
    assert with_id_eq(t, t, thunk)
    assert thunk.count == 0
    assert with_id_eq(t, rebuild(t), thunk)
    assert thunk.count == 1


def test_with_id_eq_reference_path_always_runs_the_thunk(reference_mode):
    """Test with id eq reference path always runs the thunk.

    :param reference_mode: Reference-mode fixture.
    :return: None
    :rtype: None
    """
    t = tower(3)
    thunk = _Calls()
    assert with_id_eq(t, t, thunk)
    assert thunk.count == 1
    assert not identity_shortcut(t, t)


def test_with_id_eq_dual_check_detects_a_broken_contract(dual_check):
    """Test with id eq dual check detects a broken contract.

    :param dual_check: Dual-check fixture.
    :return: None
    :rtype: None
    """
    t = tower(2)
    assert with_id_eq(t, t, _Calls(True))
    with pytest.raises(ContractViolation) as excinfo:
        with_id_eq(t, t, _Calls(False), "always false")
    assert excinfo.value.primitive == "with_id_eq"
    assert excinfo.value.accelerated is True
    assert excinfo.value.reference is False
    assert "always false" in str(excinfo.value)


def test_injected_fault_is_detected_in_dual_check(dual_check):
    """Test injected fault is detected in dual check.

    :param dual_check: Dual-check fixture.
    :return: None
    :rtype: None
    """
    t = tower(2)
    with injected_fault():
        with pytest.raises(ContractViolation):
            with_id_eq(t, t, lambda: term_eq_pure(t, t))


def test_injected_fault_breaks_the_accelerated_path():
    """Test injected fault breaks the accelerated path.

    :return: None
    :rtype: None
    """
    t = tower(2)
    with injected_fault():
        assert not with_id_eq(t, t, lambda: True)
        assert not identity_shortcut(t, t)
    assert with_id_eq(t, t, lambda: False)


def test_with_id_rel_accelerates_a_reflexive_relation():
    """Test with id rel accelerates a reflexive relation.

    :return: None
    :rtype: None
    """
    calls = []

    def relation(x, y):
        calls.append((x, y))
        return term_eq_pure(x, y)

    related = with_id_rel(relation, "structural equality is reflexive")
    t = tower(4)
    assert related(t, t)
    assert calls == []
    assert related(t, rebuild(t))
    assert len(calls) == 1
    assert not related(t, tower(3))


def test_with_id_rel_spot_checks_reflexivity(dual_check):
    """Test with id rel spot checks reflexivity.

    :param dual_check: Dual-check fixture.
    :return: None
    :rtype: None
    """
    def never(_x, _y):
        return False

    with pytest.raises(ContractViolation) as excinfo:
        with_id_rel(never)(mk_one(), mk_one())
    assert excinfo.value.primitive == "with_id_rel"


def test_with_id_eq_result_reports_identity():
    """Test with id eq result reports identity.

    :return: None
    :rtype: None
    """
    t = tower(2)
    copy = rebuild(t)
    assert with_id_eq_result(t, t, lambda result: result) is IdEqResult.YES_EQUAL
    assert with_id_eq_result(t, copy, lambda result: result) is IdEqResult.UNKNOWN
    with purity_mode(PurityMode.REFERENCE):
        assert with_id_eq_result(t, t, lambda result: result) is IdEqResult.UNKNOWN


def test_with_id_eq_result_dual_check(dual_check):
    """Test with id eq result dual check.

    :param dual_check: Dual-check fixture.
    :return: None
    :rtype: None
    """
    t = tower(3)

    def consistent(result):
        return result is IdEqResult.YES_EQUAL or term_eq_pure(t, t)

    assert with_id_eq_result(t, t, consistent)
    with pytest.raises(ContractViolation):
        with_id_eq_result(t, t, lambda result: result)
    missing = object()
    def answer(result):
        return 5 if result is IdEqResult.YES_EQUAL else missing

    assert with_id_eq_result(t, t, answer, resolve=lambda _partial: 5) == 5


def test_with_id_token_passes_the_identity():
    """Test with id token passes the identity.

    :return: None
    :rtype: None
    """
    t = mk_one()
    assert with_id_token(t, lambda token: token) == t.identity
    with purity_mode(PurityMode.REFERENCE):
        assert with_id_token(t, lambda token: token) == NULL_TOKEN


def test_with_id_token_dual_check(dual_check):
    """Test with id token dual check.

    :param dual_check: Dual-check fixture.
    :return: None
    :rtype: None
    """
    t = tower(3)
    assert with_id_token(t, lambda _token: slow_hash(t)) == slow_hash(t)
    with pytest.raises(ContractViolation):
        with_id_token(t, lambda token: token)


def test_share_common_is_the_identity_on_the_reference_path(reference_mode):
    """Test share common is the identity on the reference path.

    :param reference_mode: Reference-mode fixture.
    :return: None
    :rtype: None
    """
    t = mk_add(tower(3), tower(3))
    assert share_common(t) is t


def test_share_common_collapses_equal_subterms():
    """Test share common collapses equal subterms.

    :return: None
    :rtype: None
    """
    t = mk_add(tower(3), tower(3))
    shared = share_common(t)
    assert term_eq_pure(shared, t)
    assert shared.left is shared.right


def test_with_share_common_reuses_the_state(dual_check):
    """Test with share common reuses the state.

    :param dual_check: Dual-check fixture.
    :return: None
    :rtype: None
    """
    state = ShareState()
    first, returned = with_share_common(tower(4), state)
    assert returned is state
    second, _state = with_share_common(tower(4), state)
    assert second is first


def test_share_common_dual_check_is_linear_on_disjoint_towers(dual_check):
    """Test share common dual check is linear on disjoint towers.

    :param dual_check: Dual-check fixture.
    :return: None
    :rtype: None
    """
    t = twin_disjoint(40)
    counter = VisitCounter(budget=1000)
    shared = share_common(t, counter)
    assert shared.left is shared.right
    assert counter.visits == 4 * 40 + 3
