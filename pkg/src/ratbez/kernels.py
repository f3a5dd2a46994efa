"""Backend selection for the hot numerical kernels.

The compiled :mod:`ratbez._speedups` extension is used when it imports
cleanly; otherwise, or when the environment variable
``RATBEZ_PURE_PYTHON`` is set to a non-empty value, the NumPy versions in
:mod:`ratbez._purepy` are used.  Callers should always go through this
module (``kernels.decasteljau(...)``) so :func:`use_backend` takes effect.
"""
import os

from ratbez import _purepy

try:
    from ratbez import _speedups
except ImportError:  # extension not built
    _speedups = None

BACKENDS = {"python": _purepy}
if _speedups is not None:
    BACKENDS["cython"] = _speedups

BACKEND = None
decasteljau = ctable_fill = jacobi_delta = None


def use_backend(name):
    """Switch every kernel to backend ``name`` ("cython" or "python")."""
    global BACKEND, decasteljau, ctable_fill, jacobi_delta
    try:
        impl = BACKENDS[name]
    except KeyError:
        raise ValueError(f"backend {name!r} not available; have {sorted(BACKENDS)}") from None
    BACKEND = name
    decasteljau = impl.decasteljau
    ctable_fill = impl.ctable_fill
    jacobi_delta = impl.jacobi_delta


use_backend("cython" if _speedups is not None and not os.environ.get("RATBEZ_PURE_PYTHON") else "python")
