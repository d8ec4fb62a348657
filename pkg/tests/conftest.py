"""Shared fixtures: family construction is cheap, linearization tables are
not, so tables and measure specs are cached per session."""

from functools import lru_cache

import pytest

from hyplab.families import make_family
from hyplab.linearization import LinearizationTable
from hyplab.measures import measure_of


@lru_cache(maxsize=None)
def cached_family(tag, *items):
    return make_family(tag, **dict(items))


@lru_cache(maxsize=None)
def cached_table(tag, n, *items):
    return LinearizationTable(cached_family(tag, *items), N=n)


@lru_cache(maxsize=None)
def cached_measure(tag, *items):
    return measure_of(cached_family(tag, *items))


@pytest.fixture(scope="session")
def family():
    def get(tag, **params):
        return cached_family(tag, *sorted(params.items()))

    return get


@pytest.fixture(scope="session")
def table():
    def get(tag, n=30, **params):
        return cached_table(tag, n, *sorted(params.items()))

    return get


@pytest.fixture(scope="session")
def measure():
    def get(tag, **params):
        return cached_measure(tag, *sorted(params.items()))

    return get
