"""Kernel selection.

The compiled Cython kernel and the pure-Python fallback export the same
surface; this module picks one at import time.  Set SPAVING_PURE=1 to
force the fallback (used by the parity tests and the benchmark).
"""

import os

from . import _fallback

if os.environ.get("SPAVING_PURE"):
    kernel = _fallback
else:
    try:
        from . import _kernel as kernel  # type: ignore[no-redef]
    except ImportError:
        kernel = _fallback


def kernel_kind() -> str:
    """"cython" when the compiled kernel is active, else "python"."""
    return kernel.KERNEL_KIND
