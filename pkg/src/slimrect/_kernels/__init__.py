"""Kernel selection: compiled extension if present, numpy fallback otherwise.

Set SLIMRECT_PURE=1 to force the fallback (useful for benchmarking and for
cross-checking the two implementations against each other).
"""

import os

if os.environ.get("SLIMRECT_PURE"):
    from slimrect._kernels import pure as _impl
else:
    try:
        from slimrect._kernels import _fast as _impl  # type: ignore[no-redef]
    except ImportError:
        from slimrect._kernels import pure as _impl

BACKEND = _impl.BACKEND
closure = _impl.closure
meet_join = _impl.meet_join
m3_list = _impl.m3_list
n5_list = _impl.n5_list
semimodular_bad = _impl.semimodular_bad
