"""Kernel backend selection.

The compiled extension is used when it imports; otherwise the pure-Python
module is used. Setting ``CDLAT_PURE_PYTHON=1`` forces the fallback.
"""

from __future__ import annotations

import os

if os.environ.get("CDLAT_PURE_PYTHON", "") not in ("", "0"):
    from . import _pykernels as _impl
else:
    try:
        from . import _ckernels as _impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _pykernels as _impl

Collector = _impl.Collector
table_closure = _impl.table_closure
centralizer_mask = _impl.centralizer_mask
BACKEND: str = _impl.BACKEND

__all__ = ["BACKEND", "Collector", "table_closure", "centralizer_mask"]
