"""Identity-accelerated structural equality."""

from __future__ import annotations

import enum
from typing import Callable, List, Optional, Tuple

from .core import Add, Term, term_eq_pure
from .identity import identity_shortcut, with_id_eq
from .instrumentation import VisitCounter, ensure_counter

REFLEXIVE_EQUALITY = "structural equality is reflexive"


class EqDecision(enum.Enum):
    """A decided equality verdict; always agrees with :func:`term_eq_pure` on the same pair."""

    IS_TRUE = True
    IS_FALSE = False

    def __bool__(self) -> bool:
        return self.value

    @classmethod
    def of(cls, verdict: bool) -> "EqDecision":
        return cls.IS_TRUE if verdict else cls.IS_FALSE


def term_eq_one_off(a: Term, b: Term, counter: Optional[VisitCounter] = None) -> bool:
    """Check identity at the root only, then fall back to :func:`term_eq_pure`.

    :param a: First term.
    :param b: Second term.
    :param counter: Optional visit counter; the root check counts one visit.
    :return: Structural equality of ``a`` and ``b``.
    :rtype: bool
    """
    counter = ensure_counter(counter)
    counter.tick()
    return with_id_eq(a, b, lambda: term_eq_pure(a, b, counter), REFLEXIVE_EQUALITY)


def with_id_eq_dec_eq(x: Term, y: Term, k: Callable[[], EqDecision]) -> EqDecision:
    """Identity-accelerate a thunk that decides ``x == y``.

    :param x: First term.
    :param y: Second term.
    :param k: Thunk returning a decision for the pair.
    :return: ``IS_TRUE`` on identity, otherwise the thunk's decision.
    :rtype: EqDecision
    """
    return EqDecision.of(with_id_eq(x, y, lambda: bool(k()), REFLEXIVE_EQUALITY))


def _dec_eq_children(a: Term, b: Term, counter: VisitCounter) -> EqDecision:
    stack: List[Tuple[Term, Term]] = [(a, b)]
    while stack:
        x, y = stack.pop()
        counter.tick()
        if identity_shortcut(x, y):
            continue
        x_add = type(x) is Add
        if x_add != (type(y) is Add):
            return EqDecision.IS_FALSE
        if not x_add:
            continue
        # Hashes are compared before the children.
        if x.stored_hash != y.stored_hash:
            return EqDecision.IS_FALSE
        stack.append((x.right, y.right))
        stack.append((x.left, y.left))
    return EqDecision.IS_TRUE


def term_dec_eq(a: Term, b: Term, counter: Optional[VisitCounter] = None) -> EqDecision:
    """Decide structural equality with an identity check at every node pair.

    Only the root check goes through the sealed :func:`with_id_eq`, so dual-check
    mode compares the two paths at the root alone. Child pairs use
    :func:`~terms.identity.identity_shortcut`, which the reference mode switches
    off; dual-check keeps the child shortcuts so a checked run stays linear on
    shared terms.

    :param a: First term.
    :param b: Second term.
    :param counter: Optional visit counter; one visit per compared pair plus the root check.
    :return: Equality decision.
    :rtype: EqDecision
    """
    counter = ensure_counter(counter)
    counter.tick()
    return with_id_eq_dec_eq(a, b, lambda: _dec_eq_children(a, b, counter))


def term_eq_rec(a: Term, b: Term, counter: Optional[VisitCounter] = None) -> bool:
    """Boolean projection of :func:`term_dec_eq`.

    :param a: First term.
    :param b: Second term.
    :param counter: Optional visit counter.
    :return: Structural equality of ``a`` and ``b``.
    :rtype: bool
    """
    return bool(term_dec_eq(a, b, counter))
