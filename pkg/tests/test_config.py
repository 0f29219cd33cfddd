from __future__ import annotations

import logging

import pytest

import config


def test_defaults() -> None:
    assert config.dim_cap() == 4096
    assert config.setting("tilting_max_steps") == 64


def test_yaml_merge(tmp_path, monkeypatch: pytest.MonkeyPatch) -> None:
    path = tmp_path / "lab.yml"
    path.write_text("lab:\n  dim_cap: 256\n  seed: 3\n", encoding="utf-8")
    monkeypatch.setenv("LAB_CONFIG_PATH", str(path))
    assert config.dim_cap() == 256
    assert config.setting("seed") == 3
    # claves no tocadas conservan el default
    assert config.setting("oracle_max_labels") == 12


def test_env_overrides_yaml(tmp_path, monkeypatch: pytest.MonkeyPatch) -> None:
    path = tmp_path / "lab.yml"
    path.write_text("lab:\n  dim_cap: 256\n", encoding="utf-8")
    monkeypatch.setenv("LAB_CONFIG_PATH", str(path))
    monkeypatch.setenv("CENTRALIZER_LAB_DIM_CAP", "32")
    assert config.dim_cap() == 32


def test_bad_env_value_keeps_default(monkeypatch: pytest.MonkeyPatch, caplog: pytest.LogCaptureFixture) -> None:
    monkeypatch.setenv("CENTRALIZER_LAB_DIM_CAP", "lots")
    with caplog.at_level(logging.WARNING, logger="config"):
        assert config.dim_cap() == 4096
    assert "bad value" in caplog.text


def test_broken_yaml_is_ignored(tmp_path, monkeypatch: pytest.MonkeyPatch) -> None:
    path = tmp_path / "lab.yml"
    path.write_text("lab: [unclosed\n", encoding="utf-8")
    monkeypatch.setenv("LAB_CONFIG_PATH", str(path))
    assert config.dim_cap() == 4096
