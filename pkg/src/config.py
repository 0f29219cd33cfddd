# src/config.py
from __future__ import annotations

import logging
import os
from typing import Any, Dict

import yaml
from dotenv import load_dotenv

load_dotenv()

log = logging.getLogger(__name__)

CONFIG_PATH = os.getenv("LAB_CONFIG_PATH", "config/lab.yml")

# ---------------- Config (YAML + defaults) ----------------

def _defaults() -> Dict[str, Any]:
    return {
        "lab": {
            "dim_cap": 4096,          # (2m)^n máximo para el espacio tensorial
            "tilting_max_steps": 64,  # extensiones universales por T(λ)
            "oracle_max_labels": 12,  # subconjuntos en el oráculo de tilting mínimo
            "report_dir": "reports",
            "seed": 0,
            "log_level": "INFO",
            "property_samples": 20,
        }
    }


def _load_config(path: str | None = None) -> Dict[str, Any]:
    cfg = _defaults()
    path = path or os.getenv("LAB_CONFIG_PATH", CONFIG_PATH)
    try:
        if os.path.exists(path):
            with open(path, "r", encoding="utf-8") as f:
                user_cfg = yaml.safe_load(f) or {}
            if isinstance(user_cfg.get("lab"), dict):
                # Merge superficial (claves de primer nivel)
                for k, v in user_cfg["lab"].items():
                    cfg["lab"][k] = v
    except (OSError, yaml.YAMLError) as exc:
        log.warning("[config] ignoring %s: %s", path, exc)

    env = {
        "CENTRALIZER_LAB_DIM_CAP": ("dim_cap", int),
        "LAB_LOG_LEVEL": ("log_level", str),
        "LAB_REPORT_DIR": ("report_dir", str),
    }
    for var, (key, cast) in env.items():
        raw = os.getenv(var)
        if raw:
            try:
                cfg["lab"][key] = cast(raw)
            except ValueError:
                log.warning("[config] bad value %s=%r, keeping %r", var, raw, cfg["lab"][key])
    return cfg


def setting(key: str) -> Any:
    return _load_config()["lab"][key]


def dim_cap() -> int:
    return int(setting("dim_cap"))
