"""Kernel selection: the compiled core when importable, numpy otherwise.

Set ``WEAKDIAM_PURE=1`` to force the fallback (used by the benchmark and
by the tests that compare both implementations).
"""
import os

from . import _pykernels

try:
    if os.environ.get("WEAKDIAM_PURE"):
        raise ImportError("pure kernels requested")
    from . import _ckernels as _impl
    COMPILED = True
except ImportError:
    _impl = _pykernels
    COMPILED = False

bfs = _impl.bfs
max_hops_among = _impl.max_hops_among
power_csr = _impl.power_csr
set_diameter = _impl.set_diameter

__all__ = ["COMPILED", "bfs", "max_hops_among", "power_csr", "set_diameter"]
