"""Hot numerical kernels with a compiled core and a NumPy fallback.

The compiled extension (``_core``, built from Cython) is preferred when
it imported successfully; otherwise the NumPy reference backend
(``_ref``) is used.  Set the environment variable ``GSNETOPT_PURE_PYTHON``
to any non-empty value before import to force the fallback, e.g. for
benchmarking (see ``benchmarks/bench_kernels.py``).

Both backends expose the same functions with identical semantics:

- ``sgp4_grid(params, tsince_min)``
- ``j2_grid(params, dt_s)``
- ``elevation_series(sat_ecef_m, station_ecef_m, up)``
"""
from __future__ import annotations

import os

from . import _ref

BACKEND = "python"
_impl = _ref

if not os.environ.get("GSNETOPT_PURE_PYTHON"):
    try:
        from . import _core as _compiled
    except ImportError:
        _compiled = None
    if _compiled is not None:
        _impl = _compiled
        BACKEND = "compiled"

N_SGP4_PARAMS = _ref.N_SGP4_PARAMS
N_J2_PARAMS = _ref.N_J2_PARAMS

sgp4_grid = _impl.sgp4_grid
j2_grid = _impl.j2_grid
elevation_series = _impl.elevation_series


def backends() -> dict:
    """Importable backends keyed by name (used by tests and benchmarks)."""
    available = {"python": _ref}
    if _impl is not _ref:
        available["compiled"] = _impl
    return available
