from __future__ import annotations

import json

from report import build_payload, save_report, summary_table


def _payload(**kw):
    return build_payload("brauer ideal-dim", {"n": 2, "f": 1, "field": "Q"},
                         {"dim": 1, "nested": {"ok": True}, "listed": [1, 2]}, True, **kw)


def test_payload_keys() -> None:
    p = _payload()
    assert set(p) == {"schema", "command", "params", "results", "pass", "versions"}
    assert "python" in p["versions"] and "sympy" in p["versions"]
    # gmpy2 sólo actúa como backend de sympy; el informe registra su versión o "absent"
    assert "gmpy2" in p["versions"]
    assert set(_payload(timings={"total_s": 0.123456})) >= {"timings"}


def test_save_is_sorted(tmp_path) -> None:
    out = save_report(str(tmp_path / "deep" / "r.json"), _payload())
    text = open(out, encoding="utf-8").read()
    data = json.loads(text)
    assert data["results"]["dim"] == 1
    assert list(data) == sorted(data)


def test_summary_table_skips_lists() -> None:
    df = summary_table(_payload())
    assert list(df.columns) == ["key", "value"]
    keys = set(df["key"])
    assert {"params.n", "results.dim", "results.nested.ok", "pass"} <= keys
    assert "results.listed" not in keys
