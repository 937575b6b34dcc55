"""Hot numeric kernels with a selectable backend.

``CRSCORE_BACKEND`` picks the implementation at import time:

``auto`` (default)
    numba when it imports, numpy otherwise.
``numba``
    require numba; fail loudly if it is missing.
``numpy``
    pure numpy, no JIT.

``CRSCORE_THREADS`` caps the numba thread pool (``0`` or unset = numba's
default). The kernels are written so the thread count never changes results.
"""
import os

from . import _numpy

_requested = os.environ.get("CRSCORE_BACKEND", "auto").strip().lower() or "auto"
if _requested not in ("auto", "numba", "numpy"):
    raise RuntimeError(f"CRSCORE_BACKEND must be auto, numba or numpy, got {_requested!r}")

_impl = _numpy
BACKEND = "numpy"
if _requested != "numpy":
    try:
        from . import _numba
    except ImportError:
        if _requested == "numba":
            raise
    else:
        _impl = _numba
        BACKEND = "numba"
        _threads = int(os.environ.get("CRSCORE_THREADS", "0") or 0)
        if _threads < 0:
            raise RuntimeError("CRSCORE_THREADS must be >= 0")
        if _threads:
            _numba.set_threads(_threads)

uniforms = _impl.uniforms
draw_observations = _impl.draw_observations
count_outcomes = _impl.count_outcomes
neumaier_sum = _impl.neumaier_sum

__all__ = ["BACKEND", "uniforms", "draw_observations", "count_outcomes", "neumaier_sum"]
