# tests/conftest.py
from __future__ import annotations

import pytest

from scalar import FieldSpec


@pytest.fixture
def Q() -> FieldSpec:
    return FieldSpec.rationals()


@pytest.fixture
def F7() -> FieldSpec:
    return FieldSpec.prime(7)


@pytest.fixture(autouse=True)
def _isolated_config(monkeypatch: pytest.MonkeyPatch, tmp_path) -> None:
    # reports y config fuera del repo
    monkeypatch.setenv("LAB_CONFIG_PATH", str(tmp_path / "missing.yml"))
    monkeypatch.setenv("LAB_REPORT_DIR", str(tmp_path / "reports"))
    monkeypatch.delenv("CENTRALIZER_LAB_DIM_CAP", raising=False)
