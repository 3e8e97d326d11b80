"""Backend selection for the bounded search kernel.

The compiled extension is preferred when importable; set QWITT_PURE=1 to
force the pure-Python twin (used by the benchmark for comparison).
"""

from __future__ import annotations

import os

from . import _search_py

if os.environ.get("QWITT_PURE"):
    _impl = _search_py
else:
    try:
        from . import _search_c as _impl  # type: ignore[attr-defined]
    except ImportError:
        _impl = _search_py

BACKEND = _impl.BACKEND
search_vectors = _impl.search_vectors


def available_backends():
    out = {"python": _search_py.search_vectors}
    try:
        from . import _search_c

        out["c"] = _search_c.search_vectors
    except ImportError:
        pass
    return out
