"""Kernel backend selection.

The measure layer routes its inner loops through whichever kernel module is
active: the compiled extension when it was built, otherwise the numpy
fallback. ``set_backend`` exists so tests and the benchmark can force one.
"""

from . import _kernels_py

try:
    from . import _kernels  # compiled extension, optional
    _DEFAULT = _kernels
except ImportError:
    _kernels = None
    _DEFAULT = _kernels_py

active = _DEFAULT


def backend_name() -> str:
    return active.NAME


def available_backends() -> dict:
    out = {"python": _kernels_py}
    if _kernels is not None:
        out["compiled"] = _kernels
    return out


def set_backend(name: str):
    """Switch the active kernel module; returns the previous name."""
    global active
    backends = available_backends()
    if name not in backends:
        raise ValueError(f"unknown backend {name!r}; available: {sorted(backends)}")
    previous = backend_name()
    active = backends[name]
    return previous
