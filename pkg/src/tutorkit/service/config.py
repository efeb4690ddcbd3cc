"""Service configuration: JSON config file with environment-variable overrides.

Recognized file keys (all optional): ``port``, ``data_dir``,
``baseline_label``, ``admin_token``. Environment variables override the
file: ``TUTORKIT_PORT``, ``TUTORKIT_DATA_DIR``, ``TUTORKIT_BASELINE_LABEL``,
``TUTORKIT_ADMIN_TOKEN``.
"""
from __future__ import annotations

import json
import os
from dataclasses import dataclass
from pathlib import Path
from typing import Mapping

__all__ = ["ServiceConfig", "load_config", "ENV_PREFIX"]

ENV_PREFIX = "TUTORKIT_"


@dataclass(frozen=True)
class ServiceConfig:
    port: int = 8077
    data_dir: Path = Path("tutor-sessions")
    baseline_label: str = "classical"
    admin_token: str | None = None

    def __post_init__(self) -> None:
        if not 1 <= int(self.port) <= 65535:
            raise ValueError("port must lie in [1, 65535]")
        if not self.baseline_label:
            raise ValueError("baseline_label must be non-empty")
        object.__setattr__(self, "port", int(self.port))
        object.__setattr__(self, "data_dir", Path(self.data_dir))


def load_config(
    path: str | os.PathLike | None = None,
    env: Mapping[str, str] | None = None,
) -> ServiceConfig:
    env = os.environ if env is None else env
    values: dict = {}
    if path is not None:
        raw = json.loads(Path(path).read_text(encoding="utf-8"))
        if not isinstance(raw, dict):
            raise ValueError("config file must hold a JSON object")
        unknown = set(raw) - {"port", "data_dir", "baseline_label", "admin_token"}
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        values.update(raw)
    if ENV_PREFIX + "PORT" in env:
        values["port"] = int(env[ENV_PREFIX + "PORT"])
    if ENV_PREFIX + "DATA_DIR" in env:
        values["data_dir"] = env[ENV_PREFIX + "DATA_DIR"]
    if ENV_PREFIX + "BASELINE_LABEL" in env:
        values["baseline_label"] = env[ENV_PREFIX + "BASELINE_LABEL"]
    if ENV_PREFIX + "ADMIN_TOKEN" in env:
        values["admin_token"] = env[ENV_PREFIX + "ADMIN_TOKEN"] or None
    return ServiceConfig(**values)
