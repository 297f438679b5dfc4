"""Kernel dispatch: numba when available and not disabled by ``TRIACT_NUMBA=0``."""

from __future__ import annotations

from triact import _config
from triact._kernels import _numpy

BACKEND = "numpy"
_impl = _numpy
if _config.numba_requested():
    try:
        from triact._kernels import _numba
    except ImportError:  # pragma: no cover - numba is a declared dependency
        pass
    else:
        _impl = _numba
        BACKEND = "numba"

refine_colors = _impl.refine_colors
label_components = _impl.label_components
search = _impl.search


def backend(name: str):
    """Return the kernel module for ``name`` in {"numpy", "numba"}."""
    if name == "numpy":
        return _numpy
    if name == "numba":
        from triact._kernels import _numba as mod

        return mod
    raise ValueError(f"unknown backend {name!r}")
