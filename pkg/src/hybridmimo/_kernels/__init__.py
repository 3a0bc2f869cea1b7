"""Kernel backend selection.

The compiled extension is preferred when present; set
``HYBRIDMIMO_KERNELS=py`` to force the pure-numpy fallback.
"""

import os

from . import _pykernels

_impl = _pykernels
BACKEND = "python"

if os.environ.get("HYBRIDMIMO_KERNELS", "").lower() not in ("py", "python"):
    try:
        from . import _cykernels as _impl  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:
        pass

quantize_phases = _impl.quantize_phases
gauss_inverse = _impl.gauss_inverse
jacobi_eigh = _impl.jacobi_eigh
best_match = _impl.best_match

__all__ = ["BACKEND", "quantize_phases", "gauss_inverse", "jacobi_eigh", "best_match"]
