import json
import os

import pytest
from click.testing import CliRunner
from hypothesis import settings

from glasnerkit.core.config import config

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile(os.getenv("HYPOTHESIS_PROFILE", "default"))


@pytest.fixture(autouse=True)
def default_config(monkeypatch):
    """Every test starts and ends with the built-in defaults."""
    for name in list(os.environ):
        if name.startswith("GLASNER_"):
            monkeypatch.delenv(name, raising=False)
    config.reload()
    yield config
    config.reload()


@pytest.fixture
def runner():
    return CliRunner(mix_stderr=False)


@pytest.fixture
def write_set(tmp_path):
    def _write(dim, points, name="set.json"):
        path = tmp_path / name
        path.write_text(json.dumps({"dim": dim, "points": points}))
        return str(path)
    return _write


@pytest.fixture
def write_matrix(tmp_path):
    def _write(entries, name="matrix.json"):
        path = tmp_path / name
        path.write_text(json.dumps({"dim": len(entries), "entries": entries}))
        return str(path)
    return _write
