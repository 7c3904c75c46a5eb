"""Generators for the benchmark shapes and seeded random terms."""

from __future__ import annotations

import bisect
import random
from typing import List, Tuple

from django.db import models

from .core import Term, mk_add, mk_one
from .validators import validate_depth, validate_ratio, validate_size_budget

RANDOM_LEAF_PROBABILITY = 0.3


class Shape(models.TextChoices):
    TOWER = "tower", "Maximally shared tower"
    TWIN_SHARED = "twin-shared", "Two roots over one shared tower"
    TWIN_DISJOINT = "twin-disjoint", "Two identity-disjoint towers under one root"


def tower(n: int) -> Term:
    """Build ``tower(n)``: ``one`` at height 0, ``add(t, t)`` over a shared ``t`` above.

    :param n: Height.
    :return: Root of a term with ``n + 1`` distinct nodes and ``2**(n+1) - 1`` tree nodes.
    :rtype: Term
    :raises ValidationError: When ``n`` exceeds the depth limit.
    """
    validate_depth(n)
    t = mk_one()
    for _level in range(n):
        t = mk_add(t, t)
    return t


def twin_shared(n: int) -> Tuple[Term, Term]:
    """Build two distinct ``add(t, t)`` roots over a single ``t = tower(n)``.

    :param n: Height of the shared tower.
    :return: Pair of roots with distinct identities and identity-equal children.
    :rtype: tuple[Term, Term]
    """
    t = tower(n)
    return mk_add(t, t), mk_add(t, t)


def twin_disjoint(n: int) -> Term:
    """Build ``add(a, b)`` where ``a`` and ``b`` are independently built towers.

    :param n: Height of each tower.
    :return: Root of a term with ``2n + 3`` distinct nodes.
    :rtype: Term
    """
    return mk_add(tower(n), tower(n))


def build_shape(shape: str, n: int) -> Term:
    """Build the single benchmark term for ``shape`` at height ``n``.

    The twin-shared pair is joined under one extra root so that every shape is
    evaluated as one term.

    :param shape: One of :class:`Shape`.
    :param n: Height parameter.
    :return: Benchmark term.
    :rtype: Term
    """
    if shape == Shape.TOWER:
        return tower(n)
    if shape == Shape.TWIN_SHARED:
        left, right = twin_shared(n)
        return mk_add(left, right)
    if shape == Shape.TWIN_DISJOINT:
        return twin_disjoint(n)
    raise ValueError(f"Unknown shape: {shape}")


def closed_form_counts(shape: str, n: int) -> Tuple[int, int]:
    """Return ``(distinct, tree)`` node counts of :func:`build_shape` without building it.

    :param shape: One of :class:`Shape`.
    :param n: Height parameter.
    :return: Pair of graph size and tree size.
    :rtype: tuple[int, int]
    """
    if shape == Shape.TOWER:
        return n + 1, 2 ** (n + 1) - 1
    if shape == Shape.TWIN_SHARED:
        return n + 4, 2 ** (n + 3) - 1
    if shape == Shape.TWIN_DISJOINT:
        return 2 * n + 3, 2 ** (n + 2) - 1
    raise ValueError(f"Unknown shape: {shape}")


class _Pool:
    """Built nodes kept sorted by tree size for reuse as children."""

    def __init__(self):
        self.sizes: List[int] = []
        self.terms: List[Term] = []

    def remember(self, term: Term, size: int) -> None:
        index = bisect.bisect_right(self.sizes, size)
        self.sizes.insert(index, size)
        self.terms.insert(index, term)

    def pick(self, rng: random.Random, allowance: int):
        eligible = bisect.bisect_right(self.sizes, allowance)
        if not eligible:
            return None
        index = rng.randrange(eligible)
        return self.terms[index], self.sizes[index]


def random_term(seed: int, size_budget: int, reuse_prob: float = 0.0) -> Term:
    """Build a deterministic random term DAG.

    Children are drawn top-down from a tree-size allowance of ``2**size_budget``.
    With probability ``reuse_prob`` a child slot reuses an already built node
    that fits the remaining allowance, which introduces sharing.

    :param seed: Random seed.
    :param size_budget: Log2 of the tree-size cap; at least 1.
    :param reuse_prob: Probability of reusing a pooled node as a child.
    :return: Root of the generated term.
    :rtype: Term
    :raises ValidationError: On a size budget below one or a probability outside [0, 1].
    """
    validate_size_budget(size_budget)
    validate_ratio(reuse_prob)
    rng = random.Random(seed)
    pool = _Pool()
    results: List[Tuple[Term, int]] = []
    stack: List[Tuple[bool, int]] = [(False, 1 << size_budget)]
    while stack:
        combine, allowance = stack.pop()
        if combine:
            right, right_size = results.pop()
            left, left_size = results.pop()
            node = mk_add(left, right)
            size = 1 + left_size + right_size
            results.append((node, size))
            pool.remember(node, size)
            continue
        if reuse_prob and rng.random() < reuse_prob:
            picked = pool.pick(rng, allowance)
            if picked is not None:
                results.append(picked)
                continue
        if allowance < 3 or rng.random() < RANDOM_LEAF_PROBABILITY:
            leaf = mk_one()
            results.append((leaf, 1))
            pool.remember(leaf, 1)
            continue
        left_allowance = rng.randint(1, allowance - 2)
        stack.append((True, 0))
        stack.append((False, allowance - 1 - left_allowance))
        stack.append((False, left_allowance))
    return results[0][0]
