"""Kernel selection: compiled extension when importable, numpy fallback otherwise.

Set ``QFANO_PURE_PYTHON=1`` to force the fallback.
"""
import os

from . import _pykernels

try:
    if os.environ.get("QFANO_PURE_PYTHON", "") not in ("", "0"):
        raise ImportError("pure-python backend forced")
    from . import _kernels as _compiled
except ImportError:
    _compiled = None

BACKEND = "compiled" if _compiled is not None else "python"


def kernels(backend=None):
    """Return the kernel module for ``backend`` (``None`` picks the active one)."""
    backend = backend or BACKEND
    if backend == "compiled":
        if _compiled is None:
            raise ImportError("qfano._kernels extension is not built")
        return _compiled
    if backend == "python":
        return _pykernels
    raise ValueError(f"unknown backend {backend!r}")


def available():
    return ["compiled", "python"] if _compiled is not None else ["python"]
