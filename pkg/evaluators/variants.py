"""Evaluating terms as natural numbers: the reference evaluator and eight cached variants.

``One`` is 1 and ``Add`` is addition, wrapping modulo 2**64. Every evaluator
walks an explicit stack and charges a :class:`~terms.instrumentation.VisitCounter`,
so a run can be cut off by a deterministic node-visit budget.
"""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Tuple

from django.db import models

from caching.idcache import IdCache
from caching.memo import EqStrategy, HashStrategy, MemoCache
from terms.core import MASK64, Add, Term
from terms.exceptions import BudgetExhausted, ContractViolation
from terms.identity import PurityMode, current_mode, share_common
from terms.instrumentation import VisitCounter, ensure_counter

logger = logging.getLogger(__name__)


class Variant(models.IntegerChoices):
    NO_CACHE = 1, "no-cache"
    MEMO_SLOW_EQ_SLOW_HASH = 2, "memo-slow-eq-slow-hash"
    MEMO_SLOW_EQ_FAST_HASH = 3, "memo-slow-eq-fast-hash"
    MEMO_FAST_EQ_SLOW_HASH = 4, "memo-fast-eq-slow-hash"
    MEMO_FAST_EQ_FAST_HASH = 5, "memo-fast-eq-fast-hash"
    MEMO_FAST_EQ_FAST_HASH_SHARED = 6, "memo-fast-eq-fast-hash-shared"
    ID_CACHE = 7, "id-cache"
    ID_CACHE_SHARED = 8, "id-cache-shared"

    @classmethod
    def parse(cls, text: str) -> "Variant":
        """Resolve a variant from its index (``"1"``..``"8"``) or its slug.

        :param text: Index or slug.
        :return: Matching variant.
        :rtype: Variant
        :raises ValueError: When nothing matches.
        """
        text = str(text).strip()
        if text.isdigit():
            return cls(int(text))
        for variant in cls:
            if variant.label == text:
                return variant
        raise ValueError(f"Unknown variant: {text}")


MEMO_STRATEGIES: Dict[Variant, Tuple[str, str]] = {
    Variant.MEMO_SLOW_EQ_SLOW_HASH: (EqStrategy.SLOW_EQ, HashStrategy.SLOW_HASH),
    Variant.MEMO_SLOW_EQ_FAST_HASH: (EqStrategy.SLOW_EQ, HashStrategy.FAST_HASH),
    Variant.MEMO_FAST_EQ_SLOW_HASH: (EqStrategy.FAST_EQ, HashStrategy.SLOW_HASH),
    Variant.MEMO_FAST_EQ_FAST_HASH: (EqStrategy.FAST_EQ, HashStrategy.FAST_HASH),
    Variant.MEMO_FAST_EQ_FAST_HASH_SHARED: (EqStrategy.FAST_EQ, HashStrategy.FAST_HASH),
}

SHARED_VARIANTS = {Variant.MEMO_FAST_EQ_FAST_HASH_SHARED, Variant.ID_CACHE_SHARED}


@dataclass(frozen=True)
class EvalOutcome:
    """Result of one evaluation.

    ``value`` is None when the budget ran out; otherwise it equals the
    reference value modulo 2**64.
    """

    value: Optional[int]
    visits: int
    wall_nanos: int

    @property
    def budget_exhausted(self) -> bool:
        return self.value is None


def _naive(t: Term, counter: VisitCounter) -> int:
    values: List[int] = []
    stack: List[Tuple[Term, bool]] = [(t, False)]
    while stack:
        node, combine = stack.pop()
        if combine:
            right = values.pop()
            left = values.pop()
            values.append((left + right) & MASK64)
            continue
        counter.tick()
        if type(node) is Add:
            stack.append((node, True))
            stack.append((node.right, False))
            stack.append((node.left, False))
        else:
            values.append(1)
    return values[0]


def _eval_memo(t: Term, cache: MemoCache, counter: VisitCounter) -> int:
    values: List[int] = []
    stack: List[Tuple[Term, bool]] = [(t, False)]
    while stack:
        node, store = stack.pop()
        if store:
            right = values.pop()
            left = values.pop()
            value = (left + right) & MASK64
            cache.insert(node, value, counter)
            values.append(value)
            continue
        counter.tick()
        cached = cache.lookup(node, counter)
        if cached is not None:
            values.append(cached)
        elif type(node) is Add:
            stack.append((node, True))
            stack.append((node.right, False))
            stack.append((node.left, False))
        else:
            values.append(1)
    return values[0]


_EXPAND, _LOOKUP, _STORE, _COMBINE = range(4)


def _eval_id_cache(t: Term, cache: IdCache, counter: VisitCounter) -> int:
    # The root is evaluated directly; every child goes through the cache.
    values: List[int] = []
    stack: List[Tuple[Term, int]] = [(t, _EXPAND)]
    while stack:
        node, phase = stack.pop()
        if phase == _EXPAND:
            counter.tick()
            if type(node) is Add:
                stack.append((node, _COMBINE))
                stack.append((node.right, _LOOKUP))
                stack.append((node.left, _LOOKUP))
            else:
                values.append(1)
        elif phase == _LOOKUP:
            counter.tick()
            cached = cache.lookup(node)
            if cached is None:
                stack.append((node, _STORE))
                stack.append((node, _EXPAND))
            else:
                values.append(cached)
        elif phase == _STORE:
            cache.insert(node, values[-1])
        else:
            right = values.pop()
            left = values.pop()
            values.append((left + right) & MASK64)
    return values[0]


def eval_nat_exact(t: Term) -> int:
    """Evaluate ``t`` exactly with arbitrary precision, in time linear in its graph size.

    Used as the oracle for the wrapping evaluators.

    :param t: Term to evaluate.
    :return: Exact natural number.
    :rtype: int
    """
    values: Dict[int, int] = {}
    stack: List[Tuple[Term, bool]] = [(t, False)]
    while stack:
        node, expanded = stack.pop()
        if node.identity in values:
            continue
        if type(node) is not Add:
            values[node.identity] = 1
        elif expanded:
            values[node.identity] = values[node.left.identity] + values[node.right.identity]
        else:
            stack.append((node, True))
            stack.append((node.right, False))
            stack.append((node.left, False))
    return values[t.identity]


def _timed(run: Callable[[VisitCounter], int], budget: Optional[int]) -> EvalOutcome:
    counter = VisitCounter(budget)
    started = time.perf_counter_ns()
    try:
        value: Optional[int] = run(counter)
    except BudgetExhausted:
        value = None
    return EvalOutcome(value=value, visits=counter.visits, wall_nanos=time.perf_counter_ns() - started)


def eval_nat_naive(t: Term, budget: Optional[int] = None) -> EvalOutcome:
    """Evaluate ``t`` by plain tree traversal; visits equal the tree size.

    :param t: Term to evaluate.
    :param budget: Optional node-visit budget.
    :return: Outcome, with no value when the budget ran out.
    :rtype: EvalOutcome
    """
    return _timed(lambda counter: _naive(t, counter), budget)


def eval_nat_id_cache(
    t: Term,
    cache: Optional[IdCache] = None,
    counter: Optional[VisitCounter] = None,
) -> Tuple[int, IdCache]:
    """Evaluate ``t`` looking every child up in an identity cache first.

    :param t: Term to evaluate.
    :param cache: Cache to reuse and extend; a fresh one by default.
    :param counter: Optional visit counter.
    :return: Pair of the wrapped value and the cache.
    :rtype: tuple[int, IdCache]
    """
    cache = cache if cache is not None else IdCache()
    return _eval_id_cache(t, cache, ensure_counter(counter)), cache


def _run(variant: Variant, t: Term, counter: VisitCounter, bucket_count: Optional[int]) -> int:
    if variant in SHARED_VARIANTS:
        t = share_common(t, counter)
    if variant == Variant.NO_CACHE:
        return _naive(t, counter)
    if variant in MEMO_STRATEGIES:
        eq_strategy, hash_strategy = MEMO_STRATEGIES[variant]
        return _eval_memo(t, MemoCache(eq_strategy, hash_strategy), counter)
    return _eval_id_cache(t, IdCache(bucket_count), counter)


def run_variant(
    variant: int,
    t: Term,
    budget: Optional[int] = None,
    bucket_count: Optional[int] = None,
) -> EvalOutcome:
    """Evaluate ``t`` with one of the eight variants, each with its own fresh caches.

    In dual-check mode a completed value is compared with the exact evaluator
    reduced modulo 2**64, which runs in time linear in the graph size.

    :param variant: Variant index or member.
    :param t: Term to evaluate.
    :param budget: Optional node-visit budget.
    :param bucket_count: Identity-cache bucket count for variants 7 and 8.
    :return: Outcome of the run.
    :rtype: EvalOutcome
    :raises ContractViolation: In dual-check mode when the value differs from the reference.
    """
    variant = Variant(variant)
    outcome = _timed(lambda counter: _run(variant, t, counter, bucket_count), budget)
    logger.debug("%s: value=%s visits=%d", variant.label, outcome.value, outcome.visits)
    if outcome.value is not None and current_mode() is PurityMode.DUAL_CHECK:
        reference = eval_nat_exact(t) & MASK64
        if reference != outcome.value:
            raise ContractViolation(f"run_variant[{variant.label}]", outcome.value, reference)
    return outcome
