"""Memo cache over terms with pluggable equality and hash strategies."""

from __future__ import annotations

from typing import Callable, Dict, List, Optional, Tuple

from django.db import models

from terms.core import Term, fast_hash, slow_hash, term_eq_pure
from terms.equality import term_eq_rec
from terms.instrumentation import VisitCounter, ensure_counter


class EqStrategy(models.TextChoices):
    SLOW_EQ = "slow-eq", "Plain structural equality"
    FAST_EQ = "fast-eq", "Identity-accelerated equality"


class HashStrategy(models.TextChoices):
    SLOW_HASH = "slow-hash", "Recomputed structural hash"
    FAST_HASH = "fast-hash", "Stored intrusive hash"


EQUALITIES: Dict[str, Callable[..., bool]] = {
    EqStrategy.SLOW_EQ: term_eq_pure,
    EqStrategy.FAST_EQ: term_eq_rec,
}

HASHES: Dict[str, Callable[..., int]] = {
    HashStrategy.SLOW_HASH: slow_hash,
    HashStrategy.FAST_HASH: fast_hash,
}


class MemoCache:
    """Open-hashing map from terms to values.

    Keys are bucketed by hash code; a lookup compares the candidates of one
    bucket with the configured equality. The slow hash is recomputed on every
    lookup and every insert. Single owner; not safe for concurrent mutation.

    :param eq_strategy: How candidate keys are compared.
    :param hash_strategy: How keys are hashed.
    """

    def __init__(self, eq_strategy: str = EqStrategy.FAST_EQ, hash_strategy: str = HashStrategy.FAST_HASH):
        self.eq_strategy = EqStrategy(eq_strategy)
        self.hash_strategy = HashStrategy(hash_strategy)
        self._equal = EQUALITIES[self.eq_strategy]
        self._hash = HASHES[self.hash_strategy]
        self._buckets: Dict[int, List[Tuple[Term, int]]] = {}
        self._size = 0

    def __len__(self) -> int:
        return self._size

    def __repr__(self) -> str:
        return f"MemoCache({self.eq_strategy.value}, {self.hash_strategy.value}, size={self._size})"

    def lookup(self, t: Term, counter: Optional[VisitCounter] = None) -> Optional[int]:
        """Return the value stored for a key structurally equal to ``t``.

        :param t: Query term.
        :param counter: Optional visit counter charged for hashing and comparisons.
        :return: Stored value, or None on a miss.
        :rtype: int | None
        """
        counter = ensure_counter(counter)
        for key, value in self._buckets.get(self._hash(t, counter), ()):
            if self._equal(key, t, counter):
                return value
        return None

    def insert(self, t: Term, value: int, counter: Optional[VisitCounter] = None) -> None:
        """Store ``value`` for ``t``; the caller has just seen a miss.

        :param t: Key term.
        :param value: Value computed for ``t``.
        :param counter: Optional visit counter charged for hashing.
        :return: None
        """
        counter = ensure_counter(counter)
        self._buckets.setdefault(self._hash(t, counter), []).append((t, value))
        self._size += 1

    def get_or_insert(self, t: Term, compute: Callable[[], int], counter: Optional[VisitCounter] = None) -> int:
        """Return the cached value for ``t``, computing and storing it on a miss.

        ``compute()`` must equal the cached function applied to ``t``.

        :param t: Query term.
        :param compute: Thunk producing the value on a miss.
        :param counter: Optional visit counter.
        :return: Value for ``t``.
        :rtype: int
        """
        cached = self.lookup(t, counter)
        if cached is not None:
            return cached
        value = compute()
        self.insert(t, value, counter)
        return value
