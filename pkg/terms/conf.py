"""Lazy accessors for toolkit settings.

Read on every call so ``settings`` overrides in tests take effect.
"""

from __future__ import annotations

from django.conf import settings

DEFAULT_DEPTH_LIMIT = 2**20
DEFAULT_BUDGET = 10**7
DEFAULT_BUCKET_COUNT = 4096
DEFAULT_PURITY_MODE = "accelerated"
DEFAULT_SCALING_THRESHOLD = 2.5


def depth_limit() -> int:
    return int(getattr(settings, "TERMBENCH_DEPTH_LIMIT", DEFAULT_DEPTH_LIMIT))


def default_budget() -> int:
    return int(getattr(settings, "TERMBENCH_DEFAULT_BUDGET", DEFAULT_BUDGET))


def bucket_count() -> int:
    return int(getattr(settings, "TERMBENCH_BUCKET_COUNT", DEFAULT_BUCKET_COUNT))


def purity_mode_name() -> str:
    return str(getattr(settings, "TERMBENCH_PURITY_MODE", DEFAULT_PURITY_MODE))


def deterministic_ids() -> bool:
    return bool(getattr(settings, "TERMBENCH_DETERMINISTIC_IDS", False))


def scaling_threshold() -> float:
    return float(getattr(settings, "TERMBENCH_SCALING_THRESHOLD", DEFAULT_SCALING_THRESHOLD))
