"""Benchmark records, sweeps, scaling verdicts and CSV output."""

from __future__ import annotations

import contextvars
import csv
import logging
import math
import statistics
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, TextIO, Tuple

from django.db import transaction

from evaluators.variants import Variant, run_variant
from terms.conf import default_budget, deterministic_ids, scaling_threshold
from terms.shapes import Shape, build_shape

from .models import BenchRow, BenchRun, VariantVerdict, Verdict

logger = logging.getLogger(__name__)

CSV_HEADER = ["shape", "n", "variant", "value_mod64", "visits", "wall_nanos", "budget_exhausted"]

LINEAR_N_LIST = [8 * 2**step for step in range(10)]
EXPONENTIAL_N_LIST = list(range(8, 41, 4))


@dataclass(frozen=True)
class BenchRecord:
    """One (shape, n, variant) run."""

    shape: str
    n: int
    variant: str
    value_mod64: Optional[int]
    visits: int
    wall_nanos: int
    budget_exhausted: bool

    def as_row(self) -> List[str]:
        return [
            self.shape,
            str(self.n),
            self.variant,
            "" if self.value_mod64 is None else str(self.value_mod64),
            str(self.visits),
            str(self.wall_nanos),
            "true" if self.budget_exhausted else "false",
        ]


@dataclass(frozen=True)
class ScalingVerdict:
    """Growth classification of one variant over a sweep.

    ``ratio`` is the median visit growth per doubling of ``n``; infinite when
    any run exhausted its budget, None with fewer than two completed points.
    """

    variant: str
    verdict: Verdict
    ratio: Optional[float]
    samples: int


def expected_superlinear(variant: int, shape: str) -> bool:
    """Return whether ``variant`` is expected to blow up exponentially on ``shape``.

    :param variant: Variant index.
    :param shape: Shape name.
    :return: True for the expected-exponential combinations.
    :rtype: bool
    """
    last_exponential = Variant.MEMO_FAST_EQ_FAST_HASH if shape == Shape.TWIN_DISJOINT else Variant.MEMO_FAST_EQ_SLOW_HASH
    return int(variant) <= last_exponential


def default_n_list(variant: int, shape: str) -> List[int]:
    """Return the default heights to sweep for a variant on a shape.

    :param variant: Variant index.
    :param shape: Shape name.
    :return: Heights, doubling for linear variants and stepping by four otherwise.
    :rtype: list[int]
    """
    return list(EXPONENTIAL_N_LIST if expected_superlinear(variant, shape) else LINEAR_N_LIST)


def run_record(
    variant: int,
    shape: str,
    n: int,
    budget: Optional[int] = None,
    bucket_count: Optional[int] = None,
) -> BenchRecord:
    """Build the shape and evaluate it with one variant.

    :param variant: Variant index.
    :param shape: Shape name.
    :param n: Height.
    :param budget: Node-visit budget; the configured default when None.
    :param bucket_count: Identity-cache bucket count.
    :return: Benchmark record.
    :rtype: BenchRecord
    """
    variant = Variant(variant)
    term = build_shape(shape, n)
    outcome = run_variant(variant, term, default_budget() if budget is None else budget, bucket_count)
    record = BenchRecord(
        shape=str(shape),
        n=n,
        variant=variant.label,
        value_mod64=outcome.value,
        visits=outcome.visits,
        wall_nanos=outcome.wall_nanos,
        budget_exhausted=outcome.budget_exhausted,
    )
    logger.debug("record %s", record)
    return record


def sweep(
    variants: Sequence[int],
    shape: str,
    n_list: Optional[Sequence[int]] = None,
    budget: Optional[int] = None,
    bucket_count: Optional[int] = None,
    jobs: int = 1,
) -> List[BenchRecord]:
    """Run every (variant, n) pair and return records in execution order.

    With ``jobs > 1`` pairs run on a thread pool; each pair owns all of its
    state and results are collected in submission order.

    :param variants: Variants to run.
    :param shape: Shape name.
    :param n_list: Heights; per-variant defaults when None.
    :param budget: Node-visit budget.
    :param bucket_count: Identity-cache bucket count.
    :param jobs: Number of worker threads.
    :return: Records, grouped by variant then height.
    :rtype: list[BenchRecord]
    """
    pairs: List[Tuple[int, int]] = [
        (variant, n)
        for variant in variants
        for n in (n_list if n_list is not None else default_n_list(variant, shape))
    ]
    if jobs <= 1:
        return [run_record(variant, shape, n, budget, bucket_count) for variant, n in pairs]
    context = contextvars.copy_context()

    def run_pair(pair: Tuple[int, int]) -> BenchRecord:
        return context.copy().run(run_record, pair[0], shape, pair[1], budget, bucket_count)

    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(run_pair, pairs))


def classify(records: Iterable[BenchRecord], threshold: Optional[float] = None) -> ScalingVerdict:
    """Classify the growth of one variant's records.

    Growth between consecutive heights is normalised to a doubling, so height
    lists that do not double are handled too.

    :param records: Records of a single variant.
    :param threshold: Largest median doubling ratio still called linear.
    :return: Verdict with its fitted ratio.
    :rtype: ScalingVerdict
    """
    threshold = scaling_threshold() if threshold is None else threshold
    ordered = sorted(records, key=lambda record: record.n)
    variant = ordered[0].variant if ordered else ""
    if any(record.budget_exhausted for record in ordered):
        return ScalingVerdict(variant, Verdict.SUPERLINEAR, math.inf, len(ordered))
    ratios = []
    for smaller, larger in zip(ordered, ordered[1:]):
        if smaller.n <= 0 or larger.n <= smaller.n or smaller.visits <= 0:
            continue
        ratios.append((larger.visits / smaller.visits) ** (1 / math.log2(larger.n / smaller.n)))
    if not ratios:
        return ScalingVerdict(variant, Verdict.LINEAR, None, len(ordered))
    ratio = statistics.median(ratios)
    verdict = Verdict.LINEAR if ratio <= threshold else Verdict.SUPERLINEAR
    return ScalingVerdict(variant, verdict, ratio, len(ordered))


def verdicts(records: Sequence[BenchRecord], threshold: Optional[float] = None) -> List[ScalingVerdict]:
    """Classify each variant appearing in ``records``, in order of first appearance.

    :param records: Sweep records.
    :param threshold: Optional verdict threshold.
    :return: One verdict per variant.
    :rtype: list[ScalingVerdict]
    """
    grouped = {}
    for record in records:
        grouped.setdefault(record.variant, []).append(record)
    results = [classify(group, threshold) for group in grouped.values()]
    for result in results:
        logger.info("%s: %s (ratio %s)", result.variant, result.verdict.value, result.ratio)
    return results


def write_csv(records: Iterable[BenchRecord], stream: TextIO, header: bool = True) -> None:
    """Write records as CSV.

    :param records: Records to write.
    :param stream: Text stream.
    :param header: Whether to write the header row first.
    :return: None
    """
    writer = csv.writer(stream, lineterminator="\n")
    if header:
        writer.writerow(CSV_HEADER)
    for record in records:
        writer.writerow(record.as_row())


def format_verdicts(results: Iterable[ScalingVerdict]) -> str:
    """Render verdicts as a fixed-width table.

    :param results: Verdicts to render.
    :return: Table text.
    :rtype: str
    """
    lines = [f"{'variant':<32} {'verdict':<12} {'ratio':>8} {'samples':>7}"]
    for result in results:
        ratio = "-" if result.ratio is None else f"{result.ratio:.3f}"
        lines.append(f"{result.variant:<32} {result.verdict.value:<12} {ratio:>8} {result.samples:>7}")
    return "\n".join(lines)


def save_run(
    command: str,
    shape: str,
    records: Sequence[BenchRecord],
    results: Sequence[ScalingVerdict] = (),
    budget: Optional[int] = None,
    bucket_count: Optional[int] = None,
):
    """Persist a run with its rows and verdicts.

    :param command: ``run`` or ``sweep``.
    :param shape: Shape name.
    :param records: Records in execution order.
    :param results: Verdicts, for sweeps.
    :param budget: Budget used.
    :param bucket_count: Bucket count used.
    :return: The stored run.
    :rtype: bench.models.BenchRun
    """
    with transaction.atomic():
        run = BenchRun.objects.create(
            command=command,
            shape=shape,
            budget=budget,
            bucket_count=bucket_count,
            deterministic_ids=deterministic_ids(),
        )
        BenchRow.objects.bulk_create(
            BenchRow(
                run=run,
                position=position,
                shape=record.shape,
                n=record.n,
                variant=Variant.parse(record.variant),
                value_mod64=record.as_row()[3],
                visits=record.visits,
                wall_nanos=record.wall_nanos,
                budget_exhausted=record.budget_exhausted,
            )
            for position, record in enumerate(records)
        )
        VariantVerdict.objects.bulk_create(
            VariantVerdict(
                run=run,
                variant=Variant.parse(result.variant),
                verdict=result.verdict,
                ratio=None if result.ratio is None or math.isinf(result.ratio) else result.ratio,
                samples=result.samples,
            )
            for result in results
        )
    return run
