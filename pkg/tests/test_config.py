"""Tests for environment-driven settings."""

import pytest

from dedekind_engine.config import Settings, get_settings, load_settings
from dedekind_engine.errors import PreconditionError


def test_defaults():
    assert load_settings() == Settings()


def test_environment_overrides(monkeypatch):
    monkeypatch.setenv("DEDEKIND_THREADS", "4")
    monkeypatch.setenv("DEDEKIND_SEARCH_BOUND", "12")
    settings = load_settings()
    assert settings.threads == 4
    assert settings.search_bound == 12
    assert settings.prime_cap == Settings().prime_cap


def test_get_settings_is_cached(monkeypatch):
    first = get_settings()
    monkeypatch.setenv("DEDEKIND_THREADS", "8")
    assert get_settings() is first
    get_settings.cache_clear()
    assert get_settings().threads == 8


@pytest.mark.parametrize("value", ["0", "many"])
def test_invalid_values(monkeypatch, value):
    monkeypatch.setenv("DEDEKIND_THREADS", value)
    with pytest.raises(PreconditionError):
        load_settings()
