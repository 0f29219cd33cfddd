from __future__ import annotations

import json

import pytest

import corpus
from main import EXIT_OK, EXIT_PRECONDITION, RunConfig, main, run


def _run(capsys: pytest.CaptureFixture, *argv: str):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out.splitlines()


def test_ideal_dim(capsys, tmp_path) -> None:
    report = tmp_path / "ideal.json"
    code, lines = _run(capsys, "brauer", "ideal-dim", "--n", "2", "--f", "1", "--out", str(report))
    assert code == EXIT_OK
    assert lines[0] == "1"
    data = json.loads(report.read_text(encoding="utf-8"))
    assert set(data) >= {"schema", "command", "params", "results", "pass", "versions"}
    assert data["command"] == "brauer ideal-dim"
    assert data["results"]["agree"] is True


def test_default_report_dir(capsys, tmp_path) -> None:
    code, _ = _run(capsys, "brauer", "relations", "--n", "3", "--m", "1")
    assert code == EXIT_OK
    assert (tmp_path / "reports" / "brauer-relations.json").exists()


def test_brauer_mul(capsys, tmp_path) -> None:
    code, lines = _run(capsys, "brauer", "mul", "--n", "2", "--m", "3", "--d1", "(1,2)(1',2')",
                       "--d2", "(1,2)(1',2')", "--out", str(tmp_path / "mul.json"))
    assert code == EXIT_OK
    assert "-6" in lines[0]


def test_dcp_builtin(capsys, tmp_path) -> None:
    code, lines = _run(capsys, "dcp", "--builtin", "Zigzag", "--out", str(tmp_path / "dcp.json"))
    assert code == EXIT_OK
    assert lines[0] == "bijective"


@pytest.mark.parametrize("argv", [
    ["brauer", "ideal-dim", "--n", "2", "--f", "1", "--field", "F4"],
    ["brauer", "ideal-dim", "--n", "2", "--f", "5"],
    ["spsw", "schur", "--m", "0", "--n", "2"],
    ["dcp"],
])
def test_invalid_arguments(argv, capsys) -> None:
    assert main(argv) == EXIT_PRECONDITION
    assert "invalid arguments" in capsys.readouterr().err


def test_unknown_builtin_is_precondition(capsys) -> None:
    assert main(["strat", "flags", "--builtin", "nope"]) == EXIT_PRECONDITION


def test_quotient_dcp(capsys, tmp_path) -> None:
    code, lines = _run(capsys, "spsw", "quotient-dcp", "--m", "1", "--n", "2", "--f", "1",
                       "--out", str(tmp_path / "q.json"))
    assert code == EXIT_OK
    assert lines[0] == "pass"


def test_harmonic_small_char_is_skipped(capsys, tmp_path) -> None:
    code, lines = _run(capsys, "spsw", "harmonic", "--m", "1", "--n", "2", "--f", "1", "--field", "F2",
                       "--out", str(tmp_path / "h.json"))
    assert code == EXIT_OK
    data = json.loads((tmp_path / "h.json").read_text(encoding="utf-8"))
    assert data["results"]["decomposition"].startswith("skipped")


def test_dim_cap_flag(capsys, tmp_path) -> None:
    code = main(["spsw", "schur", "--m", "2", "--n", "4", "--dim-cap", "100", "--out", str(tmp_path / "s.json")])
    assert code == EXIT_PRECONDITION


def test_strat_minimal(capsys, tmp_path) -> None:
    code, lines = _run(capsys, "strat", "minimal", "--builtin", "Zigzag", "--out", str(tmp_path / "m.json"))
    assert code == EXIT_OK
    assert lines[0] == "T(2)"


def test_strat_checker_with_mults(capsys, tmp_path) -> None:
    code, lines = _run(capsys, "strat", "faithful-dcp", "--builtin", "Zigzag", "--mults", "1:1,2:2",
                       "--out", str(tmp_path / "c.json"))
    assert code == EXIT_OK
    assert lines[0] == "pass"


def test_weights(capsys, tmp_path) -> None:
    report = tmp_path / "w.json"
    code, _ = _run(capsys, "spsw", "weights", "--m", "1", "--n", "2", "--f", "1", "--p", "5", "--out", str(report))
    assert code == EXIT_OK
    data = json.loads(report.read_text(encoding="utf-8"))
    assert data["results"]["separated"] is True
    assert data["results"]["chain"] is None


def test_corpus_dump(capsys, tmp_path) -> None:
    target = tmp_path / "algs"
    code, _ = _run(capsys, "corpus", "dump", "--out", str(target))
    assert code == EXIT_OK
    assert (target / "Zigzag.json").exists()


def test_dcp_from_algebra_file(capsys, tmp_path) -> None:
    path = tmp_path / "regular.json"
    corpus.dump(corpus.builtin("M2xK"), str(path))
    code, lines = _run(capsys, "dcp", "--algebra", str(path), "--out", str(tmp_path / "r.json"))
    assert code == EXIT_OK
    assert lines[0] == "bijective"


def test_small_characteristic_is_precondition(capsys, tmp_path) -> None:
    code = main(["spsw", "quotient-dcp", "--m", "1", "--n", "2", "--f", "1", "--field", "F2",
                 "--out", str(tmp_path / "q.json")])
    assert code == EXIT_PRECONDITION
    assert not (tmp_path / "q.json").exists()


def test_run_with_config(capsys, tmp_path) -> None:
    cfg = RunConfig(group="spsw", command="schur", m=1, n=2, out=str(tmp_path / "s.json"), timings=True)
    assert run(cfg) == EXIT_OK
    data = json.loads((tmp_path / "s.json").read_text(encoding="utf-8"))
    assert data["results"]["dim_ssy"] == 10
    assert "total_s" in data["timings"]


@pytest.mark.parametrize("argv", [
    ["check-thm19", "--m", "1", "--n", "2", "--f", "1", "--field", "Q"],
    ["spsw", "check-thm19", "--m", "1", "--n", "2", "--f", "1", "--field", "Q"],
])
def test_short_quotient_command(argv, capsys, tmp_path) -> None:
    report = tmp_path / "q.json"
    code, lines = _run(capsys, *argv, "--out", str(report))
    assert code == EXIT_OK
    assert lines[0] == "pass"
    data = json.loads(report.read_text(encoding="utf-8"))
    assert data["command"] == "spsw quotient-dcp"


def test_short_quotient_command_default_report(capsys, tmp_path) -> None:
    assert main(["check-thm19", "--m", "1", "--n", "2", "--f", "1"]) == EXIT_OK
    assert (tmp_path / "reports" / "spsw-quotient-dcp.json").exists()
