"""Kernel selection: the compiled extension when importable, else the numpy fallback.

Set ``FLUENT_SEASON_PURE=1`` to force the fallback.
"""
from __future__ import annotations

import os

from . import _kernels_py

BACKEND = "python"
season_counts = _kernels_py.season_counts

if not os.environ.get("FLUENT_SEASON_PURE"):
    try:
        from . import _kernels as _compiled
    except ImportError:
        pass
    else:
        season_counts = _compiled.season_counts
        BACKEND = "cython"


def get_backend(name: str | None = None):
    """Return ``(name, season_counts)`` for an explicit backend, or the default."""
    if name is None:
        return BACKEND, season_counts
    if name == "python":
        return name, _kernels_py.season_counts
    if name == "cython":
        from . import _kernels as compiled
        return name, compiled.season_counts
    raise ValueError(f"unknown backend {name!r}")
