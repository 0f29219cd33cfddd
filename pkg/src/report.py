# src/report.py
from __future__ import annotations

import json
import os
import platform
from pathlib import Path
from typing import Any, Dict, List

import pandas as pd

SCHEMA_VERSION = 1


def _versions() -> Dict[str, str]:
    out = {"python": platform.python_version()}
    try:
        import sympy

        out["sympy"] = sympy.__version__
    except ImportError:  # pragma: no cover
        pass
    try:
        import gmpy2

        out["gmpy2"] = gmpy2.version()
    except ImportError:
        out["gmpy2"] = "absent"
    return out


def _jsonable(x: Any) -> Any:
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (bool, int, float, str)) or x is None:
        return x
    return str(x)


def build_payload(command: str, params: Dict[str, Any], results: Dict[str, Any],
                  passed: bool, timings: Dict[str, float] | None = None) -> Dict[str, Any]:
    payload = {
        "schema": SCHEMA_VERSION,
        "command": command,
        "params": _jsonable(params),
        "results": _jsonable(results),
        "pass": bool(passed),
        "versions": _versions(),
    }
    if timings is not None:
        payload["timings"] = {k: round(v, 4) for k, v in timings.items()}
    return payload


def save_report(out_path: str, payload: Dict[str, Any]) -> str:
    """Write deterministic JSON (sorted keys) and return the path."""
    Path(os.path.dirname(out_path) or ".").mkdir(parents=True, exist_ok=True)
    text = json.dumps(payload, indent=2, sort_keys=True, ensure_ascii=False)
    Path(out_path).write_text(text + "\n", encoding="utf-8")
    return out_path


def _flatten(prefix: str, x: Any, out: List[Dict[str, Any]]) -> None:
    if isinstance(x, dict):
        for k in sorted(x):
            _flatten(f"{prefix}.{k}" if prefix else str(k), x[k], out)
    elif isinstance(x, (bool, int, float, str)) or x is None:
        out.append({"key": prefix, "value": x})


def summary_table(payload: Dict[str, Any]) -> pd.DataFrame:
    """Scalar entries of params and results as a two-column table (lists are skipped)."""
    rows: List[Dict[str, Any]] = []
    _flatten("params", payload.get("params", {}), rows)
    _flatten("results", payload.get("results", {}), rows)
    rows.append({"key": "pass", "value": payload.get("pass")})
    return pd.DataFrame(rows, columns=["key", "value"])
