from __future__ import annotations

import random
import sys
from functools import lru_cache

import pytest

from dminor.families import braess, enumerate_tdags, random_tdag


@lru_cache(maxsize=None)
def tdags_up_to(n: int) -> tuple:
    return tuple(g for k in range(1, n + 1) for g in enumerate_tdags(k))


def random_tdags(count: int, seed: int, lo: int = 2, hi: int = 8, max_multiplicity: int = 1):
    rng = random.Random(seed)
    return [random_tdag(rng.randint(lo, hi), rng, max_multiplicity=max_multiplicity) for _ in range(count)]


@pytest.fixture
def rng():
    return random.Random(20240611)


@pytest.fixture
def b():
    return braess()


def pytest_terminal_summary(terminalreporter):
    # fd-level capture hides the live criterion lines, so repeat them here
    for mod in list(sys.modules.values()):
        lines = getattr(mod, "REPORT_LINES", None)
        if lines and getattr(mod, "__name__", "").endswith("test_acceptance"):
            terminalreporter.section("acceptance criteria")
            for line in lines:
                terminalreporter.write_line(line)
