"""Kernel backend selection.

The compiled ``_ckernels`` extension is used when it was built; otherwise,
or when ``QSZ_PURE_PYTHON=1`` is set, the pure-Python twin is loaded.
``BACKEND`` names the one in use.
"""
import os

if os.environ.get("QSZ_PURE_PYTHON", "") not in ("", "0"):
    from . import _pykernels as _impl
else:
    try:
        from . import _ckernels as _impl
    except ImportError:
        from . import _pykernels as _impl

BACKEND = "cython" if _impl.__name__.endswith("_ckernels") else "python"

DUAL_THRESHOLD = _impl.DUAL_THRESHOLD
theta_dual_z = _impl.theta_dual_z
direct_z = _impl.direct_z
gauss_moments = _impl.gauss_moments
insertion_sum = _impl.insertion_sum
deficit_sum = _impl.deficit_sum
barrier_root = _impl.barrier_root
path_integrals = _impl.path_integrals

__all__ = [
    "BACKEND",
    "DUAL_THRESHOLD",
    "theta_dual_z",
    "direct_z",
    "gauss_moments",
    "insertion_sum",
    "deficit_sum",
    "barrier_root",
    "path_integrals",
]
