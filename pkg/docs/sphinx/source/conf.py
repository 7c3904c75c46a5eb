"""Sphinx configuration for the termbench documentation."""

import os
import sys
from pathlib import Path

import django

PROJECT_ROOT = Path(__file__).resolve().parents[3]
sys.path.insert(0, str(PROJECT_ROOT))
os.environ.setdefault("DJANGO_SETTINGS_MODULE", "termbench_site.settings")
django.setup()

project = "termbench"
author = "termbench developers"
release = "1.0"

extensions = [
    "sphinx.ext.autodoc",
    "sphinx.ext.viewcode",
]

templates_path = []
exclude_patterns = []

html_theme = "alabaster"

rinoh_documents = [
    dict(doc="index", target="termbench", title="termbench documentation"),
]
