"""Randomized self-checks run by ``termbench verify``.

Every check runs in dual-check mode, so each identity primitive is executed on
both paths and compared. A failing check is retried on smaller terms from the
same seed and the smallest failing size is reported.
"""

from __future__ import annotations

import contextlib
import logging
import random
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional

from caching.idcache import CacheEntry, IdCache, read_imprecise_list_cache
from caching.memo import EqStrategy, HashStrategy, MemoCache
from evaluators.variants import Variant, eval_nat_exact, eval_nat_id_cache, eval_nat_naive, run_variant
from terms.core import MASK64, Term, fast_hash, iter_distinct, rebuild, slow_hash, term_eq_pure, tree_size
from terms.equality import REFLEXIVE_EQUALITY, term_dec_eq, term_eq_one_off, term_eq_rec
from terms.exceptions import TermbenchError
from terms.identity import (
    IdEqResult,
    PurityMode,
    injected_fault,
    purity_mode,
    share_common,
    with_id_eq,
    with_id_eq_result,
    with_id_rel,
    with_id_token,
    with_share_common,
)
from terms.shapes import random_term
from terms.sharing import ShareState, sharing_violations

logger = logging.getLogger(__name__)

REUSE_PROBABILITIES = (0.0, 0.5, 0.9)
ID_CACHE_BUCKET_COUNTS = (1, 2, 4096)
DEFAULT_SEED = 1
DEFAULT_ITERATIONS = 100
DEFAULT_SIZE_BUDGET = 8

# A check returns a failure description, or None when it holds.
Check = Callable[[Term, Term], Optional[str]]


@dataclass
class SuiteResult:
    name: str
    checks: int = 0
    failures: List[str] = field(default_factory=list)


@dataclass
class VerifyReport:
    """Outcome of a verification run."""

    seed: int
    iterations: int
    suites: List[SuiteResult]

    @property
    def ok(self) -> bool:
        return not any(suite.failures for suite in self.suites)

    @property
    def total_checks(self) -> int:
        return sum(suite.checks for suite in self.suites)

    def lines(self) -> List[str]:
        """Render the report, one line per suite followed by the failures.

        :return: Report lines.
        :rtype: list[str]
        """
        lines = [f"seed={self.seed} iterations={self.iterations} checks={self.total_checks}"]
        for suite in self.suites:
            status = "ok" if not suite.failures else f"{len(suite.failures)} failed"
            lines.append(f"{suite.name:<14} {suite.checks:>7} {status}")
        for suite in self.suites:
            lines.extend(f"FAIL {suite.name}: {failure}" for failure in suite.failures)
        lines.append("OK" if self.ok else "FAILED")
        return lines


def _wrapped(t: Term) -> int:
    return eval_nat_exact(t) & MASK64


def _check_hash_ok(t: Term, _other: Term) -> Optional[str]:
    for node in iter_distinct(t):
        if fast_hash(node) != slow_hash(node):
            return f"stored hash {fast_hash(node)} differs from recomputed {slow_hash(node)} at {node!r}"
    return None


def _check_equality(t: Term, other: Term) -> Optional[str]:
    related = with_id_rel(term_eq_pure, REFLEXIVE_EQUALITY)
    for label, first, second in (("self", t, t), ("copy", t, rebuild(t)), ("other", t, other)):
        expected = term_eq_pure(first, second)
        answers = {
            "term_eq_rec": term_eq_rec(first, second),
            "term_eq_one_off": term_eq_one_off(first, second),
            "term_dec_eq": bool(term_dec_eq(first, second)),
            "with_id_rel": related(first, second),
        }
        for name, answer in answers.items():
            if answer != expected:
                return f"{name} on {label} pair gave {answer}, term_eq_pure gave {expected}"
    return None


def _check_primitives(t: Term, _other: Term) -> Optional[str]:
    copy = rebuild(t)
    if not with_id_eq(t, t, lambda: term_eq_pure(t, t), REFLEXIVE_EQUALITY):
        return "with_id_eq on identical inputs was not true"
    if not with_id_eq(t, copy, lambda: term_eq_pure(t, copy), REFLEXIVE_EQUALITY):
        return "with_id_eq on a structural copy was not true"

    def equal_to_copy(result: IdEqResult) -> bool:
        return result is IdEqResult.YES_EQUAL or term_eq_pure(t, copy)

    if not with_id_eq_result(copy, copy, equal_to_copy):
        return "with_id_eq_result disagreed with structural equality"
    expected_hash = slow_hash(t)
    if with_id_token(t, lambda _token: slow_hash(t)) != expected_hash:
        return "with_id_token changed a token-independent result"
    expected = _wrapped(t)
    entries = [CacheEntry(copy, expected), CacheEntry(t, expected)]
    if read_imprecise_list_cache(t, entries, _wrapped) != expected:
        return "read_imprecise_list_cache returned a wrong value"
    if read_imprecise_list_cache(rebuild(t), entries, _wrapped) != expected:
        return "read_imprecise_list_cache missed into a wrong value"
    return None


def _check_max_sharing(t: Term, _other: Term) -> Optional[str]:
    shared = share_common(t)
    if not term_eq_pure(shared, t):
        return "share_common changed the structure of its input"
    violations = sharing_violations(shared)
    if violations:
        first, second = violations[0]
        return f"{len(violations)} structurally equal pairs left unshared, e.g. {first!r} and {second!r}"
    return None


def _check_incremental(t: Term, _other: Term) -> Optional[str]:
    state = ShareState()
    first, _state = with_share_common(t, state)
    insertions = state.insertions
    again, _state = with_share_common(t, state)
    if again is not first:
        return "second canonicalization returned a different root"
    if state.insertions != insertions:
        return f"second canonicalization inserted {state.insertions - insertions} new classes"
    canonical, _state = with_share_common(first, state)
    if canonical is not first or state.insertions != insertions:
        return "canonicalizing a canonical term was not a no-op"
    return None


def _check_caches(t: Term, _other: Term) -> Optional[str]:
    nodes = list(iter_distinct(t))
    values = {node.identity: _wrapped(node) for node in nodes}
    copies = list(iter_distinct(rebuild(t)))
    for eq_strategy in EqStrategy:
        for hash_strategy in HashStrategy:
            cache = MemoCache(eq_strategy, hash_strategy)
            for node in nodes:
                value = values[node.identity]
                if cache.get_or_insert(node, lambda value=value: value) != value:
                    return f"{cache!r} returned a wrong value on insertion"
            for copy in copies:
                if cache.lookup(copy) != _wrapped(copy):
                    return f"{cache!r} missed a structurally equal key"
    for bucket_count in ID_CACHE_BUCKET_COUNTS:
        cache = IdCache(bucket_count)
        for _round in range(2):
            for node in nodes:
                value = values[node.identity]
                if cache.get_or_insert(node, lambda value=value: value) != value:
                    return f"{cache!r} returned a wrong value"
        for copy in copies:
            if cache.get_or_insert(copy, lambda copy=copy: _wrapped(copy)) != _wrapped(copy):
                return f"{cache!r} returned a wrong value for a structural copy"
    return None


def _check_evaluators(t: Term, _other: Term) -> Optional[str]:
    expected = _wrapped(t)
    naive = eval_nat_naive(t)
    if naive.value != expected:
        return f"eval_nat_naive gave {naive.value}, expected {expected}"
    if naive.visits != tree_size(t):
        return f"eval_nat_naive made {naive.visits} visits on a tree of {tree_size(t)} nodes"
    value, _cache = eval_nat_id_cache(t)
    if value != expected:
        return f"eval_nat_id_cache gave {value}, expected {expected}"
    for variant in Variant:
        outcome = run_variant(variant, t)
        if outcome.value != expected:
            return f"{variant.label} gave {outcome.value}, expected {expected}"
    return None


SUITES: Dict[str, Check] = {
    "hash-ok": _check_hash_ok,
    "equality": _check_equality,
    "primitives": _check_primitives,
    "max-sharing": _check_max_sharing,
    "incremental": _check_incremental,
    "caches": _check_caches,
    "evaluators": _check_evaluators,
}


def _run_check(check: Check, seed: int, size_budget: int, reuse_prob: float) -> Optional[str]:
    t = random_term(seed, size_budget, reuse_prob)
    other = random_term(seed + 1, size_budget, reuse_prob)
    try:
        return check(t, other)
    except TermbenchError as exc:
        return f"{type(exc).__name__}: {exc}"


def _minimise(check: Check, seed: int, size_budget: int, reuse_prob: float) -> str:
    """Describe the smallest size budget of ``seed`` that still fails."""
    smallest, failure = size_budget, None
    for candidate in range(1, size_budget):
        failure = _run_check(check, seed, candidate, reuse_prob)
        if failure is not None:
            smallest = candidate
            break
    if failure is None:
        failure = _run_check(check, seed, size_budget, reuse_prob)
    size = tree_size(random_term(seed, smallest, reuse_prob))
    return f"seed={seed} size_budget={smallest} reuse_prob={reuse_prob} tree_size={size}: {failure}"


def run_verification(
    seed: int = DEFAULT_SEED,
    iterations: int = DEFAULT_ITERATIONS,
    size_budget: int = DEFAULT_SIZE_BUDGET,
    fault: bool = False,
) -> VerifyReport:
    """Run every suite over ``iterations`` random terms in dual-check mode.

    Iteration ``i`` uses reuse probability ``REUSE_PROBABILITIES[i % 3]``.
    Each suite reports its first failure only, minimised.

    :param seed: Master seed; term seeds are drawn from it.
    :param iterations: Number of random terms per suite.
    :param size_budget: Log2 of the tree-size cap of the random terms.
    :param fault: Break the identity fast path to exercise failure reporting.
    :return: Report with one result per suite.
    :rtype: VerifyReport
    """
    rng = random.Random(seed)
    term_seeds = [rng.getrandbits(32) for _ in range(iterations)]
    suites = [SuiteResult(name) for name in SUITES]
    with contextlib.ExitStack() as stack:
        stack.enter_context(purity_mode(PurityMode.DUAL_CHECK))
        if fault:
            stack.enter_context(injected_fault())
        for suite in suites:
            check = SUITES[suite.name]
            for index, term_seed in enumerate(term_seeds):
                reuse_prob = REUSE_PROBABILITIES[index % len(REUSE_PROBABILITIES)]
                suite.checks += 1
                if _run_check(check, term_seed, size_budget, reuse_prob) is not None:
                    suite.failures.append(_minimise(check, term_seed, size_budget, reuse_prob))
                    break
            logger.info("suite %s: %d checks, %d failures", suite.name, suite.checks, len(suite.failures))
    return VerifyReport(seed=seed, iterations=iterations, suites=suites)
