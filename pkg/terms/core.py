"""The two-constructor term language with an intrusive hash.

A term is either ``One`` or ``Add(left, right)``. Every ``Add`` stores the hash
of its children at construction time, so :func:`fast_hash` never traverses.
Python object references are the shared handles; each node carries an
``identity`` token fixed for its lifetime.

Every traversal here uses an explicit work-list: towers reach depths far past
the interpreter's recursion limit.
"""

from __future__ import annotations

import itertools
import threading
from typing import Dict, Iterator, List, Optional, Tuple

from .instrumentation import VisitCounter, ensure_counter

MASK64 = (1 << 64) - 1
FNV_PRIME = 1099511628211
ONE_HASH = 7

_sequence = itertools.count(1)
_sequence_lock = threading.Lock()
_deterministic_ids = False


def use_deterministic_ids(enabled: bool = True, start: int = 1) -> None:
    """Switch identity tokens between object addresses and a sequential counter.

    Sequential tokens make golden tests reproducible. Tokens start at ``start``
    so that ``0`` stays free for the reference path of :func:`with_id_token`.

    :param enabled: True for sequential ids, False for object addresses.
    :param start: First sequential id to hand out.
    :return: None
    """
    global _sequence, _deterministic_ids
    with _sequence_lock:
        _deterministic_ids = enabled
        _sequence = itertools.count(start)


def deterministic_ids_enabled() -> bool:
    return _deterministic_ids


def _issue_identity(node: "Term") -> int:
    if _deterministic_ids:
        with _sequence_lock:
            return next(_sequence)
    return id(node)


def mix(a: int, b: int) -> int:
    """Combine two hash codes: ``(a * FNV_PRIME + b) mod 2**64``, xor the high half of ``a``.

    For ``a < 2**32`` this is the plain multiply-add ``(a * FNV_PRIME + b) mod 2**64``;
    from ``a >= 2**32`` on it deliberately differs from that formula. The fold
    keeps towers from collapsing: ``FNV_PRIME + 1`` is divisible by four, so the
    plain ``mix(h, h)`` reaches 0 after 32 levels.

    :param a: Left hash code.
    :param b: Right hash code.
    :return: Mixed 64-bit hash code.
    :rtype: int
    """
    return ((a * FNV_PRIME + b) & MASK64) ^ (a >> 32)


class Term:
    """Immutable term node. Use :func:`mk_one` and :func:`mk_add` to build one."""

    __slots__ = ("identity",)

    def __setattr__(self, name, value):
        raise AttributeError(f"{type(self).__name__} is immutable")

    def __delattr__(self, name):
        raise AttributeError(f"{type(self).__name__} is immutable")


class One(Term):
    """The leaf constructor."""

    __slots__ = ()

    def __init__(self):
        object.__setattr__(self, "identity", _issue_identity(self))

    def __repr__(self) -> str:
        return f"One(id={self.identity})"


class Add(Term):
    """The binary constructor, carrying the mixed hash of its children.

    :param left: Left child.
    :param right: Right child.
    :param stored_hash: ``mix(fast_hash(left), fast_hash(right))``.
    """

    __slots__ = ("left", "right", "stored_hash")

    def __init__(self, left: Term, right: Term, stored_hash: int):
        object.__setattr__(self, "left", left)
        object.__setattr__(self, "right", right)
        object.__setattr__(self, "stored_hash", stored_hash)
        object.__setattr__(self, "identity", _issue_identity(self))

    def __repr__(self) -> str:
        return f"Add(id={self.identity}, hash={self.stored_hash})"


def mk_one() -> One:
    """Allocate a fresh ``One`` node (a new identity on every call).

    :return: New leaf node.
    :rtype: One
    """
    return One()


def mk_add(left: Term, right: Term) -> Add:
    """Allocate an ``Add`` node whose stored hash mixes the children's hashes.

    :param left: Left child.
    :param right: Right child.
    :return: New binary node.
    :rtype: Add
    """
    return Add(left, right, mix(fast_hash(left), fast_hash(right)))


def fast_hash(t: Term, counter: Optional[VisitCounter] = None) -> int:
    """Return the hash of ``t`` in constant time.

    :param t: Term to hash.
    :param counter: Optional visit counter; one visit is recorded.
    :return: 7 for ``One``, the stored hash for ``Add``.
    :rtype: int
    """
    if counter is not None:
        counter.tick()
    if type(t) is Add:
        return t.stored_hash
    return ONE_HASH


def slow_hash(t: Term, counter: Optional[VisitCounter] = None) -> int:
    """Recompute the hash of ``t`` from scratch, ignoring stored hashes.

    Costs one visit per node of the unfolded tree.

    :param t: Term to hash.
    :param counter: Optional visit counter (and budget).
    :return: Structural hash equal to :func:`fast_hash` for well-formed terms.
    :rtype: int
    """
    counter = ensure_counter(counter)
    values: List[int] = []
    stack: List[Tuple[Term, bool]] = [(t, False)]
    while stack:
        node, combine = stack.pop()
        if combine:
            right = values.pop()
            left = values.pop()
            values.append(mix(left, right))
            continue
        counter.tick()
        if type(node) is Add:
            stack.append((node, True))
            stack.append((node.right, False))
            stack.append((node.left, False))
        else:
            values.append(ONE_HASH)
    return values[0]


def term_eq_pure(a: Term, b: Term, counter: Optional[VisitCounter] = None) -> bool:
    """Structural equality by plain tree recursion, without identity shortcuts.

    :param a: First term.
    :param b: Second term.
    :param counter: Optional visit counter; one visit per compared node pair.
    :return: True when both terms unfold to the same tree.
    :rtype: bool
    """
    counter = ensure_counter(counter)
    stack: List[Tuple[Term, Term]] = [(a, b)]
    while stack:
        x, y = stack.pop()
        counter.tick()
        x_add = type(x) is Add
        if x_add != (type(y) is Add):
            return False
        if x_add:
            stack.append((x.right, y.right))
            stack.append((x.left, y.left))
    return True


def term_eq_dag(a: Term, b: Term, counter: Optional[VisitCounter] = None) -> bool:
    """Structural equality comparing each distinct pair of nodes once.

    Same answer as :func:`term_eq_pure`, in time bounded by the number of
    distinct node pairs reached rather than by the unfolded tree size. Used to
    verify results on heavily shared terms.

    :param a: First term.
    :param b: Second term.
    :param counter: Optional visit counter; one visit per distinct compared pair.
    :return: True when both terms unfold to the same tree.
    :rtype: bool
    """
    counter = ensure_counter(counter)
    seen = set()
    stack: List[Tuple[Term, Term]] = [(a, b)]
    while stack:
        x, y = stack.pop()
        pair = (x.identity, y.identity)
        if pair in seen:
            continue
        seen.add(pair)
        counter.tick()
        x_add = type(x) is Add
        if x_add != (type(y) is Add):
            return False
        if x_add:
            if x.stored_hash != y.stored_hash:
                return False
            stack.append((x.right, y.right))
            stack.append((x.left, y.left))
    return True


def iter_distinct(t: Term) -> Iterator[Term]:
    """Yield each distinct node (by identity) reachable from ``t`` once, parents first.

    :param t: Root term.
    :return: Iterator over distinct nodes.
    :rtype: Iterator[Term]
    """
    seen = set()
    stack = [t]
    while stack:
        node = stack.pop()
        if node.identity in seen:
            continue
        seen.add(node.identity)
        yield node
        if type(node) is Add:
            stack.append(node.right)
            stack.append(node.left)


def distinct_node_count(t: Term) -> int:
    """Return the graph size of ``t``.

    :param t: Root term.
    :return: Number of distinct nodes by identity.
    :rtype: int
    """
    return sum(1 for _node in iter_distinct(t))


def tree_node_count(t: Term, counter: Optional[VisitCounter] = None) -> int:
    """Count the nodes of the fully unfolded tree by walking it.

    Exponential on shared terms; pass a budgeted counter when unsure.

    :param t: Root term.
    :param counter: Optional visit counter.
    :return: Tree size.
    :rtype: int
    """
    counter = ensure_counter(counter)
    count = 0
    stack = [t]
    while stack:
        node = stack.pop()
        counter.tick()
        count += 1
        if type(node) is Add:
            stack.append(node.right)
            stack.append(node.left)
    return count


def _post_order_distinct(t: Term) -> List[Term]:
    """Return distinct nodes ordered so children come before parents."""
    order: List[Term] = []
    done = set()
    stack: List[Tuple[Term, bool]] = [(t, False)]
    while stack:
        node, expanded = stack.pop()
        if node.identity in done:
            continue
        if expanded or type(node) is not Add:
            done.add(node.identity)
            order.append(node)
            continue
        stack.append((node, True))
        stack.append((node.right, False))
        stack.append((node.left, False))
    return order


def tree_size(t: Term) -> int:
    """Compute the tree size of ``t`` exactly in time linear in its graph size.

    :param t: Root term.
    :return: Number of nodes in the unfolded tree.
    :rtype: int
    """
    sizes: Dict[int, int] = {}
    for node in _post_order_distinct(t):
        if type(node) is Add:
            sizes[node.identity] = 1 + sizes[node.left.identity] + sizes[node.right.identity]
        else:
            sizes[node.identity] = 1
    return sizes[t.identity]


def rebuild(t: Term) -> Term:
    """Build a structural copy of ``t`` that shares no node identity with it.

    Sharing inside ``t`` is reproduced, so the copy is identity-isomorphic.

    :param t: Term to copy.
    :return: Fresh term, structurally equal to ``t``.
    :rtype: Term
    """
    copies: Dict[int, Term] = {}
    for node in _post_order_distinct(t):
        if type(node) is Add:
            copies[node.identity] = mk_add(copies[node.left.identity], copies[node.right.identity])
        else:
            copies[node.identity] = mk_one()
    return copies[t.identity]

