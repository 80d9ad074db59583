"""Named view presets: a small atlas of noteworthy views.

The table ships as a versioned JSON manifest (presets.json) next to
this module.  Viewport coordinates are approximate - they frame the
right neighbourhood rather than an exact crop, and say so in their
metadata.  User preset files (JSON mapping name -> preset fields) can
be merged on top.
"""
from __future__ import annotations

import json
from functools import lru_cache
from importlib import resources
from pathlib import Path

MANIFEST_VERSION = 1


@lru_cache(maxsize=1)
def _builtin() -> dict[str, dict]:
    raw = resources.files(__package__).joinpath("presets.json").read_text()
    manifest = json.loads(raw)
    if manifest.get("manifest_version") != MANIFEST_VERSION:
        raise ValueError(
            f"preset manifest version {manifest.get('manifest_version')} "
            f"!= supported {MANIFEST_VERSION}")
    return manifest["presets"]


def load_presets(extra_file: str | Path | None = None) -> dict[str, dict]:
    """Built-in preset table, optionally overlaid with a user JSON file."""
    table = {k: dict(v) for k, v in _builtin().items()}
    if extra_file is not None:
        user = json.loads(Path(extra_file).read_text())
        for name, fields in user.items():
            table[name] = dict(fields)
    return table
