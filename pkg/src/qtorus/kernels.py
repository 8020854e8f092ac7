"""Hot-loop kernels, compiled when available.

The Cython build (``_ckernels``) is used if it imports; otherwise the
pure-Python twin is used. Set ``QTORUS_PURE_PYTHON=1`` to force the
fallback. ``BACKEND`` names the active implementation.
"""

import os

from . import _pykernels

if os.environ.get("QTORUS_PURE_PYTHON", "") not in ("", "0"):
    _impl = _pykernels
else:
    try:
        from . import _ckernels as _impl
    except ImportError:
        _impl = _pykernels

BACKEND = "cython" if _impl is not _pykernels else "python"

image_count = _impl.image_count
central_box_mask = _impl.central_box_mask
first_central_in_box = _impl.first_central_in_box
ordering_table = _impl.ordering_table

__all__ = [
    "BACKEND",
    "image_count",
    "central_box_mask",
    "first_central_in_box",
    "ordering_table",
]
