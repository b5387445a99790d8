"""Kernel backend selection: compiled extension when available, numpy fallback.

Set ``TWINBATH_FORCE_FALLBACK=1`` to skip the extension (benchmarking or
debugging); the choice is made once at import time.
"""

from __future__ import annotations

import os

if os.environ.get("TWINBATH_FORCE_FALLBACK", "").strip() not in ("", "0"):
    from . import _kernels as _impl
else:
    try:
        from . import _kernels_cy as _impl  # type: ignore[no-redef]
    except ImportError:  # extension not built on this platform
        from . import _kernels as _impl  # type: ignore[no-redef]


def kernel_backend_name() -> str:
    """``'compiled'`` when the C extension is active, else ``'fallback'``."""
    return "compiled" if _impl.__name__.endswith("_cy") else "fallback"


def rk4_evolve(drift, diffusion, sigma0, dt, n_samples, stride):
    """Dispatch to the active kernel; see the kernel modules for semantics."""
    return _impl.rk4_evolve(drift, diffusion, sigma0, dt, n_samples, stride)
