"""Identity-keyed cache with imprecise bucket lookup.

Buckets are chosen from the identity token of the query and searched with the
imprecise identity test only, so no structural equality ever runs here. A
structurally equal but distinct node is simply a miss.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import partial
from typing import Callable, List, Optional

from terms.conf import bucket_count as configured_bucket_count
from terms.core import FNV_PRIME, MASK64, Term
from terms.exceptions import ContractViolation
from terms.identity import NULL_TOKEN, IdEqResult, PurityMode, current_mode, with_id_eq_result, with_id_token
from terms.validators import validate_bucket_count


_MISS = object()


@dataclass(frozen=True, eq=False)
class CacheEntry:
    """A cached input and its value; ``value`` equals the cached function applied to ``input``.

    The entry holds the input alive, so its identity token stays valid.
    """

    input: Term
    value: int


def fold_token(token: int) -> int:
    """Mix the bits of an identity token before reducing it to a bucket index.

    :param token: Identity token.
    :return: Mixed 64-bit value.
    :rtype: int
    """
    return ((token ^ (token >> 32)) * FNV_PRIME) & MASK64


def _probe_entry(entry: CacheEntry, result: IdEqResult):
    if result is IdEqResult.YES_EQUAL:
        return entry.value
    return _MISS


def _finish_with(compute: Callable[[], int]) -> Callable[[object], int]:
    return lambda partial_result: compute() if partial_result is _MISS else partial_result


def read_imprecise_list_cache(x: Term, entries: List[CacheEntry], f: Callable[[Term], int]) -> int:
    """Look ``x`` up in an association list without updating it.

    :param x: Query term.
    :param entries: Cached entries for ``f``.
    :param f: The cached function, applied to ``x`` on a miss.
    :return: ``f(x)``, from the list when an entry for the same node exists.
    :rtype: int
    """
    finish = _finish_with(lambda: f(x))
    for entry in reversed(entries):
        found = with_id_eq_result(entry.input, x, partial(_probe_entry, entry), resolve=finish)
        if found is not _MISS:
            return found
    return f(x)


def id_bucket_lookup(
    entries: List[CacheEntry],
    x: Term,
    compute: Callable[[], int],
    update: Callable[[CacheEntry], None],
) -> int:
    """Search one bucket for ``x`` by identity, computing and recording the value on a miss.

    Newest entries are searched first. ``compute()`` must equal the cached
    function applied to ``x``; it may itself read and write the cache.

    :param entries: Bucket contents.
    :param x: Query term.
    :param compute: Thunk producing the value on a miss.
    :param update: Callback receiving the new entry on a miss.
    :return: Value for ``x``.
    :rtype: int
    """
    finish = _finish_with(compute)
    for entry in reversed(entries):
        found = with_id_eq_result(entry.input, x, partial(_probe_entry, entry), resolve=finish)
        if found is not _MISS:
            return found
    value = compute()
    update(CacheEntry(x, value))
    return value


def _split_phase_mode() -> PurityMode:
    # Split-phase probes cannot be dual-checked one call at a time; callers
    # compare final values instead.
    mode = current_mode()
    return PurityMode.ACCELERATED if mode is PurityMode.DUAL_CHECK else mode


class IdCache:
    """Fixed array of buckets keyed by identity token. No resizing.

    Single owner; not safe for concurrent mutation.

    :param bucket_count: Number of buckets, at least one; defaults to the configured count.
    """

    def __init__(self, bucket_count: Optional[int] = None):
        if bucket_count is None:
            bucket_count = configured_bucket_count()
        validate_bucket_count(bucket_count)
        self.bucket_count = bucket_count
        self.buckets: List[List[CacheEntry]] = [[] for _ in range(bucket_count)]

    def __len__(self) -> int:
        return sum(len(bucket) for bucket in self.buckets)

    def __repr__(self) -> str:
        return f"IdCache(buckets={self.bucket_count}, entries={len(self)})"

    def bucket_index(self, token: int) -> int:
        return fold_token(token) % self.bucket_count

    def get_or_insert(self, x: Term, compute: Callable[[], int]) -> int:
        """Return the cached value for the node ``x``, computing it on a miss.

        In dual-check mode the bucket of the real token is searched and updated
        once; the reference bucket (token ``0``) is then read without updating,
        and any entry it holds for ``x`` must carry the same value.

        :param x: Query term.
        :param compute: Thunk producing the value on a miss.
        :return: Value for ``x``.
        :rtype: int
        :raises ContractViolation: In dual-check mode when the reference bucket disagrees.
        """

        def in_bucket(token: int) -> int:
            bucket = self.buckets[self.bucket_index(token)]
            return id_bucket_lookup(bucket, x, compute, bucket.append)

        if current_mode() is not PurityMode.DUAL_CHECK:
            return with_id_token(x, in_bucket)
        value = with_id_token(x, in_bucket, mode=PurityMode.ACCELERATED)
        reference_bucket = self.buckets[self.bucket_index(NULL_TOKEN)]
        reference = read_imprecise_list_cache(x, reference_bucket, lambda _x: value)
        if reference != value:
            raise ContractViolation("IdCache.get_or_insert", value, reference, "cached value differs from f(x)")
        return value

    def lookup(self, x: Term) -> Optional[int]:
        """Probe for ``x`` without computing anything.

        :param x: Query term.
        :return: Cached value, or None on a miss.
        :rtype: int | None
        """
        mode = _split_phase_mode()

        def probe(token: int) -> Optional[int]:
            for entry in reversed(self.buckets[self.bucket_index(token)]):
                found = with_id_eq_result(entry.input, x, partial(_probe_entry, entry), mode=mode)
                if found is not _MISS:
                    return found
            return None

        return with_id_token(x, probe, mode=mode)

    def insert(self, x: Term, value: int) -> None:
        """Record ``value`` for ``x`` after a missed :meth:`lookup`.

        :param x: Key term.
        :param value: Value computed for ``x``.
        :return: None
        """
        entry = CacheEntry(x, value)
        with_id_token(x, lambda token: self.buckets[self.bucket_index(token)].append(entry), mode=_split_phase_mode())

    def bucket_sizes(self) -> List[int]:
        return [len(bucket) for bucket in self.buckets]
