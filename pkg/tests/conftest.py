"""Shared fixtures."""

import pytest

from dedekind_engine.config import get_settings


@pytest.fixture(autouse=True)
def clean_settings(monkeypatch):
    """Isolate tests from DEDEKIND_* variables in the developer's environment."""
    for key in ("DEDEKIND_THREADS", "DEDEKIND_SEARCH_BOUND", "DEDEKIND_PRIME_CAP"):
        monkeypatch.delenv(key, raising=False)
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()
