"""Kernel backend selection.

The compiled Cython extension is used when it imports; otherwise (or when
MUONTOMO_PURE is set) the pure numpy implementation takes over. Both expose
the same functions with identical semantics.
"""
import os

if os.environ.get("MUONTOMO_PURE"):
    from . import pure as _impl
else:
    try:
        from .. import _kernels as _impl  # type: ignore[attr-defined]
    except ImportError:
        from . import pure as _impl

BACKEND = _impl.BACKEND
normalize_line = _impl.normalize_line
sinogram_row = _impl.sinogram_row
path_lengths = _impl.path_lengths

__all__ = ["BACKEND", "normalize_line", "sinogram_row", "path_lengths"]
