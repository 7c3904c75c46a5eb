"""``termbench gen|run|sweep|verify``: build benchmark terms, time the evaluators and self-check."""

from __future__ import annotations

import argparse
from functools import partial

from django.core.exceptions import ValidationError
from django.core.management.base import BaseCommand, CommandError

from bench.runner import format_verdicts, run_record, save_run, sweep, verdicts, write_csv
from bench.verify import DEFAULT_ITERATIONS, DEFAULT_SEED, DEFAULT_SIZE_BUDGET, run_verification
from evaluators.variants import Variant
from terms.core import distinct_node_count, tree_node_count, tree_size
from terms.shapes import Shape, build_shape, closed_form_counts
from terms.validators import validate_bucket_count, validate_depth, validate_size_budget

# Heights up to this one are also counted by walking the unfolded tree.
TRAVERSAL_CHECK_LIMIT = 20

USAGE_ERROR = 2
IO_ERROR = 3
CHECK_FAILED = 1


def _usage_error(parser, message):
    if parser.called_from_command_line:
        argparse.ArgumentParser.error(parser, message)
    raise CommandError(f"Error: {message}", returncode=USAGE_ERROR)


def _natural(text):
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a natural number, got {text}")
    return value


def _int_list(text):
    try:
        return [_natural(item) for item in text.split(",") if item.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated naturals, got {text!r}")


def parse_variants(text):
    """Resolve ``all``, an index, a slug, or a comma-separated mix of them.

    :param text: Variant selection.
    :return: Selected variants in the given order.
    :rtype: list[Variant]
    :raises ValidationError: On an unknown variant.
    """
    if text.strip() == "all":
        return list(Variant)
    selected = []
    for item in text.split(","):
        try:
            selected.append(Variant.parse(item))
        except ValueError:
            raise ValidationError("Unknown variant %(value)s.", code="variant", params={"value": item.strip()})
    return selected


class Command(BaseCommand):
    help = "Generate benchmark terms, run and sweep the evaluator variants, or run the self-checks."

    def create_parser(self, prog_name, subcommand, **kwargs):
        parser = super().create_parser(prog_name, subcommand, **kwargs)
        parser.error = partial(_usage_error, parser)
        return parser

    def add_arguments(self, parser):
        actions = parser.add_subparsers(dest="action", required=True, metavar="{gen,run,sweep,verify}")

        def add_action(name, help_text):
            sub = actions.add_parser(name, help=help_text, called_from_command_line=parser.called_from_command_line)
            sub.error = partial(_usage_error, sub)
            return sub

        gen = add_action("gen", "Build a shape and print its node counts.")
        self._add_shape_arguments(gen)

        run = add_action("run", "Evaluate one shape with one variant and print a CSV row.")
        run.add_argument("--variant", required=True, help="Variant index 1-8 or slug.")
        self._add_shape_arguments(run)
        self._add_eval_arguments(run)

        sweep_parser = add_action("sweep", "Evaluate a shape over many heights and classify the growth.")
        sweep_parser.add_argument("--variant", default="all", help="'all', an index, a slug, or a comma list.")
        sweep_parser.add_argument("--shape", required=True, choices=Shape.values)
        sweep_parser.add_argument("--n-list", dest="n_list", type=_int_list, default=None, help="Comma-separated heights.")
        sweep_parser.add_argument("--out", default=None, help="CSV output path; stdout by default.")
        sweep_parser.add_argument("--jobs", type=_natural, default=1, help="Worker threads.")
        self._add_eval_arguments(sweep_parser)

        verify = add_action("verify", "Run the dual-check self-test suites.")
        verify.add_argument("--seed", type=_natural, default=DEFAULT_SEED)
        verify.add_argument("--iterations", type=_natural, default=DEFAULT_ITERATIONS)
        verify.add_argument("--size-budget", dest="size_budget", type=_natural, default=DEFAULT_SIZE_BUDGET)
        verify.add_argument("--inject-fault", dest="inject_fault", action="store_true", help=argparse.SUPPRESS)

    @staticmethod
    def _add_shape_arguments(parser):
        parser.add_argument("--shape", required=True, choices=Shape.values)
        parser.add_argument("--n", required=True, type=int)

    @staticmethod
    def _add_eval_arguments(parser):
        parser.add_argument("--budget", type=_natural, default=None, help="Node-visit budget.")
        parser.add_argument("--buckets", type=int, default=None, help="Identity-cache bucket count.")
        parser.add_argument("--save", action="store_true", help="Store the results in the database.")

    def handle(self, *args, **options):
        handler = getattr(self, f"handle_{options['action']}")
        try:
            handler(options)
        except ValidationError as exc:
            raise CommandError("; ".join(exc.messages), returncode=USAGE_ERROR)
        except OSError as exc:
            raise CommandError(str(exc), returncode=IO_ERROR)

    def handle_gen(self, options):
        shape, n = options["shape"], options["n"]
        validate_depth(n)
        term = build_shape(shape, n)
        distinct, tree = distinct_node_count(term), tree_size(term)
        if n <= TRAVERSAL_CHECK_LIMIT:
            walked = tree_node_count(term)
            if (distinct, walked) != closed_form_counts(shape, n) or walked != tree:
                raise CommandError(
                    f"node counts distinct={distinct} tree={walked} disagree with the closed form",
                    returncode=CHECK_FAILED,
                )
        self.stdout.write(f"shape={shape} n={n} distinct={distinct} tree={tree}")

    def _validate_eval_options(self, options):
        if options["buckets"] is not None:
            validate_bucket_count(options["buckets"])

    def handle_run(self, options):
        variants = parse_variants(options["variant"])
        if len(variants) != 1:
            raise ValidationError("run takes exactly one variant.", code="variant")
        validate_depth(options["n"])
        self._validate_eval_options(options)
        record = run_record(variants[0], options["shape"], options["n"], options["budget"], options["buckets"])
        write_csv([record], self.stdout)
        if options["save"]:
            run = save_run("run", options["shape"], [record], budget=options["budget"], bucket_count=options["buckets"])
            self.stderr.write(f"saved run {run.pk}")

    def handle_sweep(self, options):
        variants = parse_variants(options["variant"])
        n_list = options["n_list"]
        for n in n_list or ():
            validate_depth(n)
        self._validate_eval_options(options)
        records = sweep(
            variants,
            options["shape"],
            n_list,
            budget=options["budget"],
            bucket_count=options["buckets"],
            jobs=options["jobs"],
        )
        results = verdicts(records)
        if options["out"]:
            with open(options["out"], "w", newline="", encoding="utf-8") as stream:
                write_csv(records, stream)
        else:
            write_csv(records, self.stdout)
        self.stderr.write(format_verdicts(results))
        if options["save"]:
            run = save_run(
                "sweep",
                options["shape"],
                records,
                results,
                budget=options["budget"],
                bucket_count=options["buckets"],
            )
            self.stderr.write(f"saved run {run.pk}")

    def handle_verify(self, options):
        validate_size_budget(options["size_budget"])
        report = run_verification(
            seed=options["seed"],
            iterations=options["iterations"],
            size_budget=options["size_budget"],
            fault=options["inject_fault"],
        )
        for line in report.lines():
            self.stdout.write(line)
        if not report.ok:
            raise CommandError("verification failed", returncode=CHECK_FAILED)
