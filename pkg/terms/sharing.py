"""Share-common state and the canonicalization engine.

Canonicalization is hash-consing after the fact: nodes are rebuilt bottom-up
so that each structural equivalence class ends up with exactly one node.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from .core import Add, Term, fast_hash, iter_distinct, mk_add, term_eq_pure
from .instrumentation import VisitCounter, ensure_counter

logger = logging.getLogger(__name__)

ONE_TAG = "one"
ADD_TAG = "add"

StructuralKey = Tuple


@dataclass(frozen=True)
class ShareStats:
    memo_size: int
    interner_size: int
    insertions: int
    visits: int


class ShareState:
    """Incremental canonicalization state.

    ``memo`` maps the identity of every node seen so far to its canonical node.
    ``interner`` maps a structural key (constructor tag plus canonical child
    identities) to the canonical node. Source nodes are retained alongside, so
    their identity tokens cannot be reused while the state is alive.

    A state has a single owner; concurrent canonicalizations need separate states.
    """

    def __init__(self):
        self.memo: Dict[int, Term] = {}
        self.interner: Dict[StructuralKey, Term] = {}
        self._retained: Dict[int, Term] = {}
        self.insertions = 0
        self.visits = 0

    @property
    def stats(self) -> ShareStats:
        return ShareStats(
            memo_size=len(self.memo),
            interner_size=len(self.interner),
            insertions=self.insertions,
            visits=self.visits,
        )

    def canonical_of(self, t: Term) -> Optional[Term]:
        """Return the canonical node already recorded for ``t``, if any.

        :param t: Any node.
        :return: Canonical node or None.
        :rtype: Term | None
        """
        return self.memo.get(t.identity)

    def _record(self, source: Term, canonical: Term) -> None:
        self.memo[source.identity] = canonical
        self._retained[source.identity] = source
        self.memo[canonical.identity] = canonical

    def _intern(self, key: StructuralKey, candidate: Term) -> Term:
        canonical = self.interner.get(key)
        if canonical is None:
            self.interner[key] = candidate
            self.insertions += 1
            canonical = candidate
        return canonical

    def canonicalize(self, t: Term, counter: Optional[VisitCounter] = None) -> Term:
        """Return the maximally shared form of ``t``, extending this state.

        Post-order over an explicit stack of visit/build frames. A memo hit
        short-circuits the whole subtree after one visit.

        :param t: Term to canonicalize.
        :param counter: Optional visit counter.
        :return: Canonical term, structurally equal to ``t``.
        :rtype: Term
        """
        counter = ensure_counter(counter)
        before = counter.visits
        insertions_before = self.insertions
        stack: List[Tuple[Term, bool]] = [(t, False)]
        while stack:
            node, build = stack.pop()
            if not build:
                counter.tick()
                if node.identity in self.memo:
                    continue
                if type(node) is Add:
                    stack.append((node, True))
                    stack.append((node.right, False))
                    stack.append((node.left, False))
                else:
                    self._record(node, self._intern((ONE_TAG,), node))
                continue
            if node.identity in self.memo:
                continue
            left = self.memo[node.left.identity]
            right = self.memo[node.right.identity]
            key = (ADD_TAG, left.identity, right.identity)
            canonical = self.interner.get(key)
            if canonical is None:
                reusable = left is node.left and right is node.right
                canonical = self._intern(key, node if reusable else mk_add(left, right))
            self._record(node, canonical)
        self.visits += counter.visits - before
        logger.debug(
            "canonicalized %r: %d visits, %d new classes",
            t,
            counter.visits - before,
            self.insertions - insertions_before,
        )
        return self.memo[t.identity]


def sharing_violations(t: Term) -> List[Tuple[Term, Term]]:
    """Return pairs of distinct nodes of ``t`` that are structurally equal.

    An empty list means ``t`` is maximally shared. Candidates are grouped by
    stored hash and compared pairwise with :func:`~terms.core.term_eq_pure`.

    :param t: Root term.
    :return: Offending node pairs.
    :rtype: list[tuple[Term, Term]]
    """
    groups: Dict[int, List[Term]] = {}
    for node in iter_distinct(t):
        groups.setdefault(fast_hash(node), []).append(node)
    violations = []
    for group in groups.values():
        for index, first in enumerate(group):
            for second in group[index + 1:]:
                if term_eq_pure(first, second):
                    violations.append((first, second))
    return violations
