from __future__ import annotations

import json
from pathlib import Path

import pytest

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture(scope="session")
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture(scope="session")
def mp149_doc() -> dict:
    return json.loads((FIXTURES / "mp-149.json").read_text())


@pytest.fixture(scope="session")
def mp3666_doc() -> dict:
    return json.loads((FIXTURES / "mp-3666.json").read_text())
