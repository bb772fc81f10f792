"""Run configuration: caps, seed, cache directory, output format."""
from __future__ import annotations

import os
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Optional

__all__ = ["Config", "get_config", "set_config", "load_config_file"]

FORMATS = ("json", "csv", "text")


@dataclass(frozen=True)
class Config:
    dim_cap: int = 4096
    word_cap: int = 200
    seed: int = 0
    cache_dir: Optional[str] = None
    output: str = "json"

    def __post_init__(self):
        if self.dim_cap <= 0 or self.word_cap <= 0:
            raise ValueError("caps must be positive")
        if self.output not in FORMATS:
            raise ValueError(f"output format must be one of {FORMATS}")

    def with_(self, **kw) -> "Config":
        kw = {k: v for k, v in kw.items() if v is not None}
        return replace(self, **kw)


_current = Config(cache_dir=os.environ.get("CACHE_DIR") or None)


def get_config() -> Config:
    return _current


def set_config(cfg: Config) -> Config:
    global _current
    old, _current = _current, cfg
    return old


def load_config_file(path: str | Path, base: Optional[Config] = None) -> Config:
    """key = value lines; '#' starts a comment."""
    base = base or get_config()
    types = {"dim_cap": int, "word_cap": int, "seed": int, "cache_dir": str, "output": str}
    kw = {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"{path}:{lineno}: expected key = value")
        key, value = (x.strip() for x in line.split("=", 1))
        key = key.replace("-", "_")
        if key not in types:
            raise ValueError(f"{path}:{lineno}: unknown key {key!r}")
        kw[key] = types[key](value.strip('"'))
    return base.with_(**kw)
