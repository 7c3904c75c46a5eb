"""Shared fixtures for the termbench tests."""

from __future__ import annotations

import pytest

from terms.conf import deterministic_ids as configured_deterministic_ids
from terms.core import use_deterministic_ids
from terms.identity import PurityMode, purity_mode
from terms.shapes import random_term


@pytest.fixture
def deterministic_ids():
    """Hand out sequential identity tokens starting at 1 for the duration of a test.

    :return: None
    :rtype: None
    """
    use_deterministic_ids(True)
    yield
    use_deterministic_ids(configured_deterministic_ids())


@pytest.fixture
def dual_check():
    """Run a test body in dual-check mode.

    :return: The active mode.
    :rtype: PurityMode
    """
    with purity_mode(PurityMode.DUAL_CHECK) as mode:
        yield mode


@pytest.fixture
def reference_mode():
    """Run a test body on the reference paths only.

    :return: The active mode.
    :rtype: PurityMode
    """
    with purity_mode(PurityMode.REFERENCE) as mode:
        yield mode


@pytest.fixture
def small_terms():
    """Provide seeded random terms with and without internal sharing.

    :return: List of terms.
    :rtype: list
    """
    return [random_term(seed, 6, reuse_prob) for seed in range(12) for reuse_prob in (0.0, 0.5, 0.9)]
