import pytest

from fockledger.meta import MAX_CUTOFF_ENV, Meta


@pytest.fixture(autouse=True)
def reset_meta(monkeypatch):
    """Every test starts from the default config and no log directory."""

    monkeypatch.delenv(MAX_CUTOFF_ENV, raising=False)
    Meta.reset()
    yield
    Meta.reset()
