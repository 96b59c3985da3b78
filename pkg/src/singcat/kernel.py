"""Select the compiled kernels when available, else the pure-Python ones.

Set ``SINGCAT_PURE_PYTHON=1`` to force the fallback.
"""

import os

from . import _kernel_py

BACKEND = "python"
_impl = _kernel_py

if not os.environ.get("SINGCAT_PURE_PYTHON"):
    try:
        from . import _kernel as _impl  # type: ignore[no-redef]
        BACKEND = "cython"
    except ImportError:
        _impl = _kernel_py

# the compiled prime-field path multiplies in 64-bit
_MAX_C_MODULUS = 1 << 31


def reduce(f, basis, negkey, modulus, full=True):
    if modulus >= _MAX_C_MODULUS:
        return _kernel_py.reduce(f, basis, negkey, modulus, full)
    return _impl.reduce(f, basis, negkey, modulus, full)


def count_standard(bounds, leads):
    return _impl.count_standard(tuple(bounds), [tuple(l) for l in leads])


divides = _impl.divides


def set_backend(name: str) -> str:
    """Switch kernels at runtime (``"cython"`` or ``"python"``); returns the previous name."""
    global _impl, BACKEND, divides
    prev = BACKEND
    if name == "python":
        _impl = _kernel_py
    elif name == "cython":
        from . import _kernel as compiled
        _impl = compiled
    else:
        raise ValueError(f"unknown backend {name!r}")
    BACKEND = name
    divides = _impl.divides
    return prev


def available_backends():
    try:
        from . import _kernel  # noqa: F401
        return ["cython", "python"]
    except ImportError:
        return ["python"]
