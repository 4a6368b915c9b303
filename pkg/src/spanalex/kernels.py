"""Kernel backend selection.

The compiled extension is used when it was built; otherwise, or when the
environment variable ``SPANALEX_PURE`` is set to a non-empty value, the
pure-Python implementations are used. Both expose the same functions.
"""
from __future__ import annotations

import os

from . import _pykernels

if os.environ.get("SPANALEX_PURE"):
    _impl = _pykernels
else:
    try:
        from . import _ckernels as _impl
    except ImportError:  # extension not built
        _impl = _pykernels

BACKEND: str = _impl.BACKEND
conv = _impl.conv
horner = _impl.horner
aberth = _impl.aberth
initial_guesses = _impl.initial_guesses


def backends():
    """All importable backends, keyed by name."""
    found = {"python": _pykernels}
    try:
        from . import _ckernels

        found["cython"] = _ckernels
    except ImportError:
        pass
    return found
