"""Write the termbench API reference as plain reStructuredText.

Reads docstrings of the modules in ``MODULE_GROUPS`` and writes
``docs/sphinx/source/api_generated.rst``. Choice enums (shapes, variants,
purity modes, cache strategies) are listed with their values so the CLI
spellings appear in the reference.
"""

from __future__ import annotations

import enum
import importlib
import inspect
import os
import sys
import textwrap
from pathlib import Path

import django

PROJECT_ROOT = Path(__file__).resolve().parents[1]
OUTPUT_PATH = PROJECT_ROOT / "docs" / "sphinx" / "source" / "api_generated.rst"
sys.path.insert(0, str(PROJECT_ROOT))
os.environ.setdefault("DJANGO_SETTINGS_MODULE", "termbench_site.settings")
django.setup()

MODULE_GROUPS = {
    "Terms": [
        "terms.core",
        "terms.shapes",
        "terms.identity",
        "terms.sharing",
        "terms.equality",
        "terms.instrumentation",
        "terms.exceptions",
    ],
    "Caching": [
        "caching.memo",
        "caching.idcache",
    ],
    "Evaluators": [
        "evaluators.variants",
    ],
    "Benchmarks": [
        "bench.models",
        "bench.runner",
        "bench.verify",
        "bench.management.commands.termbench",
    ],
}


def _heading(title: str, underline: str) -> str:
    return f"{title}\n{underline * len(title)}\n\n"


def _doc(obj) -> str:
    doc = inspect.getdoc(obj)
    if not doc:
        return "Undocumented.\n\n"
    return textwrap.dedent(doc).strip() + "\n\n"


def _enum_table(cls) -> str:
    rows = []
    for member in cls:
        label = getattr(member, "label", None)
        rows.append(f"- ``{member.value}``" + (f": {label}" if label else ""))
    return "\n".join(rows) + "\n\n"


def _public_members(cls):
    for name, member in cls.__dict__.items():
        if name.startswith("_") and name != "__init__":
            continue
        if isinstance(member, property) and member.fget:
            yield name, member.fget
        elif isinstance(member, (staticmethod, classmethod)):
            yield name, member.__func__
        elif inspect.isfunction(member):
            yield name, member


def _write_class(out, cls) -> None:
    out.write(_heading(cls.__name__, "~"))
    out.write(_doc(cls))
    if issubclass(cls, enum.Enum):
        out.write(_enum_table(cls))
        return
    for name, member in _public_members(cls):
        out.write(_heading(f"{cls.__name__}.{name}", '"'))
        out.write(_doc(member))


def _write_module(out, module_name: str) -> None:
    module = importlib.import_module(module_name)
    out.write(_heading(module_name, "^"))
    out.write(_doc(module))
    for _name, cls in inspect.getmembers(module, inspect.isclass):
        if cls.__module__ == module.__name__:
            _write_class(out, cls)
    for name, func in inspect.getmembers(module, inspect.isfunction):
        if func.__module__ == module.__name__ and not name.startswith("_"):
            out.write(_heading(f"{module.__name__}.{name}", "~"))
            out.write(_doc(func))


def main() -> None:
    OUTPUT_PATH.parent.mkdir(parents=True, exist_ok=True)
    with OUTPUT_PATH.open("w", encoding="utf-8") as out:
        out.write(_heading("API Reference (Generated)", "="))
        out.write("Generated from docstrings by ``scripts/generate_api_reference.py``.\n\n")
        for group, modules in MODULE_GROUPS.items():
            out.write(_heading(group, "-"))
            for module_name in modules:
                _write_module(out, module_name)


if __name__ == "__main__":
    main()
