from __future__ import annotations

import itertools
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from oppgen.config import EngineConfig
from oppgen.engine import ProjectEngine
from oppgen.store import ProjectStore

from corpus_builders import plain_text_fixture_files


def fixed_clock():
    counter = itertools.count()

    def clock() -> str:
        return f"2026-08-09T00:00:{next(counter) % 60:02d}+00:00"

    return clock


@pytest.fixture
def store(tmp_path) -> ProjectStore:
    return ProjectStore(tmp_path / "projects")


@pytest.fixture
def engine(store) -> ProjectEngine:
    return ProjectEngine(store, clock=fixed_clock())


@pytest.fixture
def mock_config() -> EngineConfig:
    return EngineConfig(seed=7, embedding_dimension=128)


@pytest.fixture
def ready_project(engine, mock_config, tmp_path) -> str:
    """A project with processed assets, discovered and described spaces."""
    engine.create_project("fixture project", mock_config)
    project_id = "fixture-project"
    for path in plain_text_fixture_files(tmp_path, 3):
        engine.upload_asset(project_id, path.name, path.read_bytes())
    engine.process_assets(project_id)
    engine.discover(project_id)
    engine.describe_spaces(project_id)
    return project_id
