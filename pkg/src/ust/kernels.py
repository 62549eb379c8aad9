"""Select the compiled kernels when built, else the pure-Python twins.

Set ``UST_PURE_PYTHON=1`` to force the fallback.  :data:`BACKEND` names the
active implementation.
"""
from __future__ import annotations

import os

from . import _kernels_py as python_kernels

compiled_kernels = None
if os.environ.get("UST_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _kernels as compiled_kernels  # type: ignore[no-redef]
    except ImportError:
        compiled_kernels = None

_active = compiled_kernels if compiled_kernels is not None else python_kernels
BACKEND = "cython" if compiled_kernels is not None else "python"

walk_trees = _active.walk_trees
gw_bfs = _active.gw_bfs
gw_level_sizes = _active.gw_level_sizes


def get_backend(name: str):
    """Return the kernel module called ``name`` ("cython" or "python")."""
    if name == "python":
        return python_kernels
    if name == "cython":
        if compiled_kernels is None:
            try:
                from . import _kernels
            except ImportError as exc:
                raise RuntimeError("compiled kernels are not built") from exc
            return _kernels
        return compiled_kernels
    raise ValueError(f"unknown backend {name!r}")
