"""Execution-path selection for the hot kernels.

Compiled (numba) kernels are the default; a vectorized pure-numpy path covers
hosts without numba and doubles as a cross-check.  The choice can be forced
per call or globally through the COVCOMB_BACKEND environment variable, read
at call time so tests can flip it.
"""

from __future__ import annotations

import os

__all__ = [
    "ENV_BACKEND",
    "NUMBA",
    "NUMPY",
    "numba_available",
    "available_backends",
    "resolve_backend",
]

ENV_BACKEND = "COVCOMB_BACKEND"
NUMBA = "numba"
NUMPY = "numpy"

_numba_ok: bool | None = None


def numba_available() -> bool:
    global _numba_ok
    if _numba_ok is None:
        try:
            import numba  # noqa: F401

            _numba_ok = True
        except ImportError:
            _numba_ok = False
    return _numba_ok


def available_backends() -> tuple[str, ...]:
    return (NUMBA, NUMPY) if numba_available() else (NUMPY,)


def resolve_backend(name: str | None = None) -> str:
    """Pick the execution path: explicit argument first, then COVCOMB_BACKEND,
    then numba whenever it is importable."""
    choice = (name or os.environ.get(ENV_BACKEND) or "auto").strip().lower()
    if choice == "auto":
        return NUMBA if numba_available() else NUMPY
    if choice == NUMBA:
        if not numba_available():
            raise RuntimeError("numba backend requested but numba is not importable")
        return NUMBA
    if choice == NUMPY:
        return NUMPY
    raise ValueError(f"unknown backend {name!r}; expected 'numba', 'numpy' or 'auto'")
