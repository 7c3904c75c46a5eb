"""Run ``termbench gen|run|sweep|verify`` without going through ``manage.py``."""

from __future__ import annotations

import os
import sys
from pathlib import Path

PROJECT_ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(PROJECT_ROOT))


def main(argv=None) -> None:
    os.environ.setdefault("DJANGO_SETTINGS_MODULE", "termbench_site.settings")
    from django.core.management import execute_from_command_line

    args = sys.argv[1:] if argv is None else list(argv)
    execute_from_command_line(["termbench", "termbench", *args])


if __name__ == "__main__":
    main()
