"""Backend selection for the firing kernels.

The compiled extension is used when it was built and the net fits in 64-bit
masks; otherwise the pure-Python implementation runs.  Setting the
environment variable ``NETDECOMP_PURE_PYTHON=1`` forces the fallback.
"""

import os

from . import _kernels_py

_compiled = None
if not os.environ.get("NETDECOMP_PURE_PYTHON"):
    try:
        from . import _kernels as _compiled
    except ImportError:  # extension not built
        _compiled = None

BACKEND = "cython" if _compiled is not None else "python"

_LIMIT = 1 << 64


def _fits(masks, extra=0) -> bool:
    if len(masks.pre) > 64 or extra >= _LIMIT:
        return False
    return all(m < _LIMIT for arr in masks for m in arr)


def _impl(masks, marking, backend):
    if backend == "python" or _compiled is None or not _fits(masks, marking):
        return _kernels_py
    return _compiled


def steps(masks, marking, backend=None):
    impl = _impl(masks, marking, backend)
    return impl.steps(*masks, marking)


def explore(masks, initial, backend=None):
    impl = _impl(masks, initial, backend)
    return impl.explore(*masks, initial)
