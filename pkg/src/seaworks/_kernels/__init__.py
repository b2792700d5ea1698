"""Hot kernels with a compiled backend and a pure-Python fallback.

The compiled extension is used when it was built and ``SEAWORKS_PURE`` is
not set; otherwise the pure-Python twins in ``_pykernels`` are used. Both
expose ``search_products`` and ``jacobi_eigh`` with identical semantics.
"""
import os

from . import _pykernels

BACKEND = "python"
_impl = _pykernels

if not os.environ.get("SEAWORKS_PURE"):
    try:
        from . import _ckernels as _impl  # noqa: F811
        BACKEND = "cython"
    except ImportError:
        _impl = _pykernels

search_products = _impl.search_products
jacobi_eigh = _impl.jacobi_eigh

__all__ = ["BACKEND", "search_products", "jacobi_eigh", "backends"]


def backends():
    """Return the available kernel modules keyed by name."""
    out = {"python": _pykernels}
    try:
        from . import _ckernels
        out["cython"] = _ckernels
    except ImportError:
        pass
    return out
