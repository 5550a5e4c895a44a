"""Integer linear-algebra kernels with compiled/pure backend selection.

The compiled extension is preferred when importable; set the
environment variable ``TAUTCLASS_PURE=1`` to force the pure-Python
fallback (used by the benchmark to compare both).
"""

from __future__ import annotations

import os

if os.environ.get("TAUTCLASS_PURE"):
    from . import pure as _impl
else:
    try:
        from . import _fast as _impl  # type: ignore[attr-defined]
    except ImportError:
        from . import pure as _impl

BACKEND: str = _impl.BACKEND
det_int = _impl.det_int
rank_int = _impl.rank_int

__all__ = ["BACKEND", "det_int", "rank_int"]
