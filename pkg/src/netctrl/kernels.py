"""Hot-loop kernels with backend selection at import time.

The compiled ``_ckernels`` extension is used when it was built and
``NETCTRL_PURE`` is unset; otherwise the pure-Python module is used. The
64-bit arithmetic kernels fall back to Python integers on overflow, so both
backends return identical, exact results.
"""
from __future__ import annotations

import os

from netctrl import _pykernels

_py = _pykernels

if os.environ.get("NETCTRL_PURE"):
    _impl = _py
else:
    try:
        from netctrl import _ckernels as _impl
    except ImportError:  # extension not built
        _impl = _py

BACKEND = "python" if _impl is _py else "cython"


def available_backends():
    """Names of importable backends, for parity tests and benchmarks."""
    names = ["python"]
    try:
        from netctrl import _ckernels  # noqa: F401
    except ImportError:
        pass
    else:
        names.append("cython")
    return names


def backend_module(name):
    if name == "python":
        return _py
    if name == "cython":
        from netctrl import _ckernels

        return _ckernels
    raise ValueError(f"unknown backend {name!r}")


def is_connected_rows(rows, n):
    return _impl.is_connected_rows(rows, n)


def canonical_code(rows, n, distinguished=-1):
    return _impl.canonical_code(rows, n, distinguished)


def charpoly(matrix):
    try:
        return _impl.charpoly(matrix)
    except OverflowError:
        return _py.charpoly(matrix)


def int_rank(matrix):
    try:
        return _impl.int_rank(matrix)
    except OverflowError:
        return _py.int_rank(matrix)
