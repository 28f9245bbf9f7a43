"""Kernel selection: compiled straightening core with pure-Python fallback.

Set ``KAPPALG_PURE=1`` in the environment to force the pure kernel even
when the compiled one is available (used by the benchmark and tests).
"""

import os

if os.environ.get("KAPPALG_PURE"):
    from kappalg._straighten_py import BACKEND, multiply_terms, straighten_into
else:
    try:
        from kappalg._straighten_c import BACKEND, multiply_terms, straighten_into
    except ImportError:
        from kappalg._straighten_py import BACKEND, multiply_terms, straighten_into

__all__ = ["BACKEND", "multiply_terms", "straighten_into"]


def kernel_backend() -> str:
    """Name of the active straightening kernel: "c" or "python"."""
    return BACKEND
