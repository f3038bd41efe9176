from __future__ import annotations

import pytest

from skewpbw import corpus


@pytest.fixture(scope="session")
def load():
    cache: dict = {}

    def _load(name: str):
        if name not in cache:
            cache[name] = corpus.load(name)
        return cache[name]

    return _load


@pytest.fixture(scope="session")
def certified_names():
    return corpus.CERTIFIED
