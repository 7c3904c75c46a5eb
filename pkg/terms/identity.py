"""Sealed identity primitives.

Each primitive has a reference path that never looks at identity tokens and an
accelerated path that does. Callers promise a contract that makes both paths
observably equal; ``DUAL_CHECK`` runs both and raises
:class:`~terms.exceptions.ContractViolation` when they disagree.

The active mode lives in a context variable, so it is per thread and per task.
"""

from __future__ import annotations

import enum
from contextlib import contextmanager
from contextvars import ContextVar
from typing import Any, Callable, Iterator, Optional, Tuple, TypeVar

from django.db import models

from .conf import purity_mode_name
from .core import Term, term_eq_dag
from .exceptions import ContractViolation
from .instrumentation import VisitCounter
from .sharing import ShareState


V = TypeVar("V")

NULL_TOKEN = 0


class PurityMode(models.TextChoices):
    ACCELERATED = "accelerated", "Accelerated"
    REFERENCE = "reference", "Reference"
    DUAL_CHECK = "dual-check", "Dual check"


class IdEqResult(enum.Enum):
    """Outcome of an imprecise identity test.

    ``YES_EQUAL`` is only handed out when both inputs are the same node.
    """

    UNKNOWN = "unknown"
    YES_EQUAL = "yes-equal"


_active_mode: ContextVar[Optional[PurityMode]] = ContextVar("termbench_purity_mode", default=None)
_fault_injected: ContextVar[bool] = ContextVar("termbench_fault_injected", default=False)


def current_mode() -> PurityMode:
    """Return the purity mode in effect for the current context.

    :return: Context override, or the configured default.
    :rtype: PurityMode
    """
    mode = _active_mode.get()
    if mode is None:
        return PurityMode(purity_mode_name())
    return mode


@contextmanager
def purity_mode(mode: str) -> Iterator[PurityMode]:
    """Run a block under the given purity mode.

    :param mode: A :class:`PurityMode` value.
    :return: Context manager yielding the active mode.
    """
    resolved = PurityMode(mode)
    token = _active_mode.set(resolved)
    try:
        yield resolved
    finally:
        _active_mode.reset(token)


@contextmanager
def injected_fault() -> Iterator[None]:
    """Break the fast path of :func:`with_id_eq` so it answers False on identical inputs.

    Only for exercising the dual-check machinery.

    :return: Context manager.
    """
    token = _fault_injected.set(True)
    try:
        yield
    finally:
        _fault_injected.reset(token)


def _resolve_mode(mode: Optional[str]) -> PurityMode:
    return PurityMode(mode) if mode is not None else current_mode()


def same_identity(x: Term, y: Term) -> bool:
    """Raw identity comparison used by the accelerated paths."""
    return x.identity == y.identity


def identity_shortcut(x: Term, y: Term, mode: Optional[str] = None) -> bool:
    """Return True when the accelerated path may conclude ``x == y`` from identity alone.

    Always False on the reference path. Work-list algorithms use this where a
    thunk cannot be threaded through.

    :param x: First term.
    :param y: Second term.
    :param mode: Optional mode override.
    :return: Whether the identity fast path fires.
    :rtype: bool
    """
    if _resolve_mode(mode) is PurityMode.REFERENCE:
        return False
    return same_identity(x, y) and not _fault_injected.get()


def _accelerated_id_eq(x: Term, y: Term, k: Callable[[], bool]) -> bool:
    if same_identity(x, y):
        return not _fault_injected.get()
    return k()


def with_id_eq(
    x: Term,
    y: Term,
    k: Callable[[], bool],
    contract: Optional[str] = None,
    mode: Optional[str] = None,
) -> bool:
    """Evaluate ``k`` unless ``x`` and ``y`` are the same node.

    The caller promises that identical inputs make ``k()`` return True.

    :param x: First term.
    :param y: Second term.
    :param k: Thunk computing the answer.
    :param contract: Description of the reflexivity contract, used in errors.
    :param mode: Optional mode override.
    :return: True on identity, otherwise ``k()``.
    :rtype: bool
    :raises ContractViolation: In dual-check mode when the paths disagree.
    """
    resolved = _resolve_mode(mode)
    if resolved is PurityMode.REFERENCE:
        return k()
    accelerated = _accelerated_id_eq(x, y, k)
    if resolved is PurityMode.ACCELERATED:
        return accelerated
    reference = k()
    if accelerated != reference:
        raise ContractViolation("with_id_eq", accelerated, reference, contract or "identity must imply k() is true")
    return accelerated


def with_id_rel(
    relation: Callable[[Term, Term], bool],
    contract: Optional[str] = None,
) -> Callable[[Term, Term], bool]:
    """Return an identity-accelerated version of a reflexive relation.

    In dual-check mode each call also spot-checks ``relation(x, x)``.

    :param relation: Reflexive relation on terms.
    :param contract: Description of the reflexivity contract.
    :return: Relation that short-circuits to True on identical inputs.
    :rtype: Callable[[Term, Term], bool]
    """

    def accelerated(x: Term, y: Term) -> bool:
        if current_mode() is PurityMode.DUAL_CHECK and not relation(x, x):
            raise ContractViolation("with_id_rel", None, False, contract or "relation is not reflexive")
        return with_id_eq(x, y, lambda: relation(x, y), contract)

    return accelerated


def with_id_eq_result(
    x: Term,
    y: Term,
    k: Callable[[IdEqResult], V],
    resolve: Optional[Callable[[V], Any]] = None,
    mode: Optional[str] = None,
) -> V:
    """Call ``k`` with ``YES_EQUAL`` when ``x`` and ``y`` are the same node, else ``UNKNOWN``.

    ``k`` must give the same answer whichever branch it receives when both are
    legal. When ``k(UNKNOWN)`` yields only a partial answer (for instance "keep
    scanning"), ``resolve`` finishes it the way the reference path would so the
    dual check compares final answers.

    :param x: First term.
    :param y: Second term.
    :param k: Continuation receiving the test outcome.
    :param resolve: Optional completion of the ``UNKNOWN`` branch, dual-check only.
    :param mode: Optional mode override.
    :return: Result of the continuation.
    :raises ContractViolation: In dual-check mode when the branches disagree.
    """
    resolved = _resolve_mode(mode)
    if resolved is PurityMode.REFERENCE:
        return k(IdEqResult.UNKNOWN)
    matched = same_identity(x, y)
    accelerated = k(IdEqResult.YES_EQUAL if matched else IdEqResult.UNKNOWN)
    if resolved is PurityMode.ACCELERATED or not matched:
        return accelerated
    reference = k(IdEqResult.UNKNOWN)
    if resolve is not None:
        reference = resolve(reference)
    if accelerated != reference:
        raise ContractViolation("with_id_eq_result", accelerated, reference, "continuation depends on the test outcome")
    return accelerated


def with_id_token(x: Term, k: Callable[[int], V], mode: Optional[str] = None) -> V:
    """Call ``k`` with the identity token of ``x`` (``0`` on the reference path).

    ``k`` must not let the token value leak into its result.

    :param x: Term whose token is observed.
    :param k: Continuation receiving the token.
    :param mode: Optional mode override.
    :return: Result of the continuation.
    :raises ContractViolation: In dual-check mode when ``k(0)`` and ``k(token)`` differ.
    """
    resolved = _resolve_mode(mode)
    if resolved is PurityMode.REFERENCE:
        return k(NULL_TOKEN)
    accelerated = k(x.identity)
    if resolved is PurityMode.ACCELERATED:
        return accelerated
    reference = k(NULL_TOKEN)
    if accelerated != reference:
        raise ContractViolation("with_id_token", accelerated, reference, "continuation depends on the token")
    return accelerated


def with_share_common(
    x: Term,
    state: ShareState,
    counter: Optional[VisitCounter] = None,
    mode: Optional[str] = None,
) -> Tuple[Term, ShareState]:
    """Maximally share ``x`` through ``state``, extending it in place.

    The reference path is the identity function.

    :param x: Term to share.
    :param state: Share state to reuse and extend.
    :param counter: Optional visit counter.
    :param mode: Optional mode override.
    :return: Pair of the shared term and the (same) state.
    :rtype: tuple[Term, ShareState]
    :raises ContractViolation: In dual-check mode when the result is not structurally equal to ``x``.
    """
    resolved = _resolve_mode(mode)
    if resolved is PurityMode.REFERENCE:
        return x, state
    shared = state.canonicalize(x, counter)
    if resolved is PurityMode.DUAL_CHECK and not term_eq_dag(shared, x):
        raise ContractViolation("with_share_common", shared, x, "shared term is not structurally equal to its input")
    return shared, state


def share_common(x: Term, counter: Optional[VisitCounter] = None, mode: Optional[str] = None) -> Term:
    """Return a maximally shared term structurally equal to ``x``.

    :param x: Term to share.
    :param counter: Optional visit counter.
    :param mode: Optional mode override.
    :return: Shared term (``x`` itself on the reference path).
    :rtype: Term
    """
    shared, _state = with_share_common(x, ShareState(), counter, mode)
    return shared
