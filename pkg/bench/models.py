"""Stored benchmark runs, their CSV rows and per-variant scaling verdicts."""

from django.db import models

from evaluators.variants import Variant
from terms.shapes import Shape


class Verdict(models.TextChoices):
    LINEAR = "linear", "Linear"
    SUPERLINEAR = "superlinear", "Superlinear"


class BenchRun(models.Model):
    """One ``run`` or ``sweep`` invocation saved with ``--save``."""

    class Command(models.TextChoices):
        RUN = "run", "Run"
        SWEEP = "sweep", "Sweep"

    command = models.CharField(max_length=10, choices=Command.choices)
    shape = models.CharField(max_length=20, choices=Shape.choices)
    budget = models.PositiveBigIntegerField(null=True, blank=True)
    bucket_count = models.PositiveIntegerField(null=True, blank=True)
    deterministic_ids = models.BooleanField(default=False)
    created_at = models.DateTimeField(auto_now_add=True)

    class Meta:
        ordering = ["-created_at"]

    def __str__(self):
        return f"{self.command} {self.shape} #{self.pk}"


class BenchRow(models.Model):
    """A CSV row of a stored run; ``position`` keeps execution order."""

    run = models.ForeignKey(BenchRun, on_delete=models.CASCADE, related_name="records")
    position = models.PositiveIntegerField()
    shape = models.CharField(max_length=20, choices=Shape.choices)
    n = models.PositiveIntegerField()
    variant = models.PositiveSmallIntegerField(choices=Variant.choices)
    # Decimal text of a value up to 2**64 - 1; empty when the budget ran out.
    value_mod64 = models.CharField(max_length=20, blank=True)
    visits = models.PositiveBigIntegerField()
    wall_nanos = models.PositiveBigIntegerField()
    budget_exhausted = models.BooleanField(default=False)

    class Meta:
        ordering = ["run", "position"]
        constraints = [
            models.UniqueConstraint(fields=["run", "position"], name="benchrow_run_position_unique"),
        ]
        indexes = [
            models.Index(fields=["shape", "variant", "n"], name="benchrow_shape_variant_n_idx"),
        ]

    def __str__(self):
        return f"{self.get_variant_display()} {self.shape} n={self.n}"

    def as_csv_row(self):
        """Return the row as written by the CSV writer.

        :return: Field values as strings.
        :rtype: list[str]
        """
        return [
            self.shape,
            str(self.n),
            self.get_variant_display(),
            self.value_mod64,
            str(self.visits),
            str(self.wall_nanos),
            "true" if self.budget_exhausted else "false",
        ]


class VariantVerdict(models.Model):
    """Growth verdict of one variant in a stored sweep; ``ratio`` is null when unbounded or undefined."""

    run = models.ForeignKey(BenchRun, on_delete=models.CASCADE, related_name="verdicts")
    variant = models.PositiveSmallIntegerField(choices=Variant.choices)
    verdict = models.CharField(max_length=12, choices=Verdict.choices)
    ratio = models.FloatField(null=True, blank=True)
    samples = models.PositiveIntegerField(default=0)

    class Meta:
        constraints = [
            models.UniqueConstraint(fields=["run", "variant"], name="variantverdict_run_variant_unique"),
        ]

    def __str__(self):
        return f"{self.get_variant_display()}: {self.verdict}"
