import os
import random

import pytest
from hypothesis import settings, strategies as st

from koszulkit.corpus import bundled_corpus, bundled_dir, load_algebra, random_algebra


# fixed example sequence so runs (and their timings) are reproducible
settings.register_profile("repro", derandomize=True, deadline=None)
settings.load_profile("repro")


def data_path(name):
    return os.path.join(bundled_dir(), name)


@pytest.fixture(scope="session")
def corpus():
    return bundled_corpus()


@pytest.fixture(scope="session")
def sl2():
    return load_algebra(data_path("sl2.alg"))


@pytest.fixture(scope="session")
def a3():
    return load_algebra(data_path("a3.alg"))


@pytest.fixture(scope="session")
def free_loop():
    return load_algebra(data_path("free_loop.alg"))


@pytest.fixture(scope="session")
def loop_sq():
    return load_algebra(data_path("loop_sq.alg"))


# random algebras are generated from a seed so hypothesis can shrink on the seed
seeds = st.integers(min_value=0, max_value=10 ** 6)


def algebra_from_seed(seed, finite=True, max_vertices=6, max_arrows=10):
    return random_algebra(random.Random(seed), max_vertices, max_arrows, finite)


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance")
    if mod and mod.RESULTS:
        terminalreporter.section("acceptance criteria")
        for n in sorted(mod.RESULTS):
            terminalreporter.write_line(mod.RESULTS[n])
