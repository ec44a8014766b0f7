"""
Fixtures compartilhadas dos testes
"""
import os
import sys

import pytest

root_dir = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
if root_dir not in sys.path:
    sys.path.insert(0, root_dir)

from nerve_forge.models.combinatorics import Partition  # noqa: E402
from nerve_forge.models.geometry import PointSet  # noqa: E402
from nerve_forge.services.acceptance import face_fixture_pair  # noqa: E402
from nerve_forge.services.report_storage import report_storage  # noqa: E402


@pytest.fixture
def square():
    """Quadrado unitário em ordem anti-horária"""
    return PointSet.from_rows([(0, 0), (1, 0), (1, 1), (0, 1)], dim=2)


@pytest.fixture
def face_fixture():
    return face_fixture_pair()


@pytest.fixture
def nerve_face_points():
    """Sete pontos: três partes com interseção tripla"""
    ps = PointSet.from_rows([(-4, 1), (4, -1), (1, 4), (-1, -4), (-3, -2), (3, 2), (5, -6)], dim=2)
    partition = Partition(n_parts=3, assignment=(0, 0, 1, 1, 2, 2, 2))
    return ps, partition


@pytest.fixture
def symmetric_octagon():
    return PointSet.from_rows([(1, 3), (-1, 3), (-3, 1), (-3, -1), (-1, -3), (1, -3), (3, -1), (3, 1)], dim=2)


@pytest.fixture(autouse=True)
def clean_reports(tmp_path, monkeypatch):
    """Relatórios de cada teste vão para um diretório temporário"""
    monkeypatch.setattr(report_storage, "directory", tmp_path / "reports")
    yield
    report_storage.clear_history()
