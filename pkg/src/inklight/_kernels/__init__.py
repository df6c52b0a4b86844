"""Kernel backend selection.

The hot per-pixel loops (color transfer chains, CLAHE) exist twice: a Cython
extension (``_fast``) and a pure-numpy fallback (``_numpy_impl``). The
compiled backend is preferred when importable; set INKLIGHT_BACKEND=numpy or
INKLIGHT_BACKEND=compiled to force one (forcing an unavailable compiled
backend raises at import).

``benchmarks/bench_kernels.py`` compares the two.
"""

from __future__ import annotations

import os

_requested = os.environ.get("INKLIGHT_BACKEND", "").strip().lower()

if _requested == "numpy":
    from inklight._kernels import _numpy_impl as _impl

    BACKEND = "numpy"
elif _requested in ("", "compiled"):
    try:
        from inklight._kernels import _fast as _impl  # type: ignore[no-redef]

        BACKEND = "compiled"
    except ImportError:
        if _requested == "compiled":
            raise ImportError(
                "INKLIGHT_BACKEND=compiled but the inklight._kernels._fast "
                "extension is not built; install with the Cython extension "
                "or unset INKLIGHT_BACKEND"
            ) from None
        from inklight._kernels import _numpy_impl as _impl

        BACKEND = "numpy"
else:
    raise ValueError(f"INKLIGHT_BACKEND must be 'compiled' or 'numpy', got {_requested!r}")

srgb_decode = _impl.srgb_decode
srgb_encode = _impl.srgb_encode
srgb_to_lab = _impl.srgb_to_lab
lab_to_srgb = _impl.lab_to_srgb
clahe = _impl.clahe

__all__ = ["BACKEND", "srgb_decode", "srgb_encode", "srgb_to_lab", "lab_to_srgb", "clahe"]
