"""Kernel backend selection and deterministic chunked execution.

The compiled extension (``wignerbin._core``) is preferred when importable;
otherwise the pure-numpy fallback is used.  Setting the environment variable
``WIGNERBIN_PURE_PY=1`` forces the fallback.

Work that is distributed over threads is always split into *fixed-size*
chunks, and chunk results are combined in chunk order, so the result is
independent of the worker count (chunk partials are reduced with numpy's
pairwise summation over the ordered chunk axis).
"""

import os
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import _core_py

if os.environ.get("WIGNERBIN_PURE_PY"):
    _impl = _core_py
else:
    try:
        from . import _core as _impl
    except ImportError:
        _impl = _core_py

BACKEND = _impl.BACKEND
HAVE_COMPILED = _impl.BACKEND == "compiled"

laguerre_halfexp = _impl.laguerre_halfexp
laguerre_dot = _impl.laguerre_dot
laguerre_moments = _impl.laguerre_moments
bh_rk4 = _impl.bh_rk4

pure = _core_py

CHUNK = 1 << 16


def chunk_slices(count, chunk=CHUNK):
    """Fixed partition of range(count) into contiguous chunks."""
    return [slice(i, min(i + chunk, count)) for i in range(0, count, chunk)]


def map_ordered(fn, items, threads=1):
    """Apply fn to each item, returning results in item order.

    With threads > 1 the items run on a thread pool; ordering of the result
    list (and therefore every downstream reduction) does not depend on the
    worker count or scheduling.
    """
    if threads <= 1 or len(items) <= 1:
        return [fn(it) for it in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))


def moments_chunked(xs, n_max, threads=1):
    """laguerre_moments over fixed chunks with an ordered pairwise reduction."""
    xs = np.ascontiguousarray(xs, dtype=np.float64)
    slices = chunk_slices(len(xs))
    parts = map_ordered(lambda sl: laguerre_moments(xs[sl], n_max), slices, threads)
    sums = np.sum([p[0] for p in parts], axis=0)
    sumsqs = np.sum([p[1] for p in parts], axis=0)
    totals = np.concatenate([p[2] for p in parts])
    return sums, sumsqs, totals
