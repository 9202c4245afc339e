"""Search kernels: compiled when the extension is built, pure Python otherwise.

Set ``WCIFANO_PURE=1`` to force the Python kernel.  The compiled kernel
forms power sums in 64-bit and weight products in 128-bit integers, so calls
whose intermediates could overflow are routed to the Python kernel
regardless of the backend.
"""

from __future__ import annotations

import os

from ._pysearch import search_unit as python_search_unit

try:
    from ._csearch import search_unit as compiled_search_unit
except ImportError:  # extension not built
    compiled_search_unit = None

_LIMIT = 1 << 62

if compiled_search_unit is not None and not os.environ.get("WCIFANO_PURE"):
    BACKEND = "compiled"
else:
    BACKEND = "python"


def compiled_is_exact(n: int, k: int, wcap: int, maxd: int, l: int) -> bool:
    """Whether every intermediate the compiled kernel forms fits its C type."""
    N = n + k
    return (N + 1 <= 128 and (N + 1) * max(wcap, maxd) ** l < _LIMIT and maxd < (1 << 20)
            and max(wcap, maxd) ** k << n < 1 << 126)


def search_unit(n: int, k: int, top: int, dk_lo: int, dk_hi: int,
                wcap: int, maxd: int, l: int, backend: str | None = None):
    backend = backend or BACKEND
    if backend == "compiled":
        if compiled_search_unit is None:
            raise RuntimeError("compiled kernel is not available")
        if compiled_is_exact(n, k, wcap, maxd, l):
            return compiled_search_unit(n, k, top, dk_lo, dk_hi, wcap, maxd, l)
    elif backend != "python":
        raise ValueError(f"unknown backend {backend!r}")
    return python_search_unit(n, k, top, dk_lo, dk_hi, wcap, maxd, l)
