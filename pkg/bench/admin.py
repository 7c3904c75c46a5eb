"""Admin views for stored benchmark runs."""

from __future__ import annotations

from django.contrib import admin
from django.http import HttpResponse

from .models import BenchRow, BenchRun, VariantVerdict
from .runner import CSV_HEADER


class BenchRowInline(admin.TabularInline):
    model = BenchRow
    extra = 0
    readonly_fields = ("position", "shape", "n", "variant", "value_mod64", "visits", "wall_nanos", "budget_exhausted")
    can_delete = False


class VariantVerdictInline(admin.TabularInline):
    model = VariantVerdict
    extra = 0
    readonly_fields = ("variant", "verdict", "ratio", "samples")
    can_delete = False


@admin.register(BenchRun)
class BenchRunAdmin(admin.ModelAdmin):
    list_display = ("id", "command", "shape", "budget", "bucket_count", "deterministic_ids", "row_count", "created_at")
    list_filter = ("command", "shape", "deterministic_ids", "created_at")
    inlines = [VariantVerdictInline, BenchRowInline]
    actions = ["export_csv"]
    date_hierarchy = "created_at"
    readonly_fields = ("created_at",)

    @admin.display(description="Rows")
    def row_count(self, obj):
        """Return the number of CSV rows stored for a run.

        :param obj: BenchRun instance.
        :return: Row count.
        :rtype: int
        """
        return obj.records.count()

    @admin.action(description="Download selected runs as CSV")
    def export_csv(self, request, queryset):
        """Concatenate the rows of the selected runs into one CSV download.

        :param request: Current HTTP request.
        :param queryset: Selected BenchRun records.
        :return: CSV attachment.
        :rtype: HttpResponse
        """
        response = HttpResponse(content_type="text/csv")
        response["Content-Disposition"] = 'attachment; filename="termbench.csv"'
        lines = [",".join(CSV_HEADER)]
        for row in BenchRow.objects.filter(run__in=queryset).order_by("run_id", "position"):
            lines.append(",".join(row.as_csv_row()))
        response.write("\n".join(lines) + "\n")
        return response


@admin.register(BenchRow)
class BenchRowAdmin(admin.ModelAdmin):
    list_display = ("run", "position", "shape", "n", "variant", "visits", "wall_nanos", "budget_exhausted")
    list_filter = ("shape", "variant", "budget_exhausted")
    list_select_related = ("run",)
