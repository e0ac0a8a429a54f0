"""Kernel backend selection.

The compiled extension is preferred when it imported cleanly; otherwise the
pure-Python kernel serves every call. Setting the environment variable
PIPOW_FORCE_PURE=1 before import skips the extension outright, which is how
the benchmark and the bit-identity tests obtain both backends in one
process (the pure module is always importable directly).
"""

from __future__ import annotations

import os

from . import _kernel_py
from .errors import DomainError

_COMPILED_INDEX_LIMIT = 2**32 - 1

if os.environ.get("PIPOW_FORCE_PURE") == "1":
    _impl = _kernel_py
else:
    try:
        from . import _kernel as _impl  # type: ignore[attr-defined]
    except ImportError:
        _impl = _kernel_py

BACKEND = _impl.BACKEND_NAME


def dp_row_scaled(depth: int, truncation: int, scale: int) -> list:
    """Backend-dispatched fixed-point sweep; see _kernel_py.dp_row_scaled."""
    if depth < 0:
        raise DomainError("depth must be nonnegative")
    if truncation < 0:
        raise DomainError("truncation must be nonnegative")
    if scale < 0:
        raise DomainError("scale must be nonnegative")
    if _impl is not _kernel_py and truncation > _COMPILED_INDEX_LIMIT:
        return _kernel_py.dp_row_scaled(depth, truncation, scale)
    return _impl.dp_row_scaled(depth, truncation, scale)
