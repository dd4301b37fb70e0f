"""Hot verification kernels with a compiled fast path.

The Cython extension ``_kernels`` is used when it was built; otherwise the
pure-Python ``_kernels_py`` is imported.  Set ``DRESTRICT_PURE_PYTHON=1`` to
force the fallback.
"""

from __future__ import annotations

import itertools
import os

import numpy as np

if os.environ.get("DRESTRICT_PURE_PYTHON"):
    from . import _kernels_py as _impl
else:
    try:
        from . import _kernels as _impl
    except ImportError:
        from . import _kernels_py as _impl

BACKEND = _impl.BACKEND
separation_counts = _impl.separation_counts
cff_counts = _impl.cff_counts
injective_table = _impl.injective_table

CHUNK = 8192


def chunked(iterable, size: int = CHUNK):
    """Yield lists of up to ``size`` items."""
    it = iter(iterable)
    while True:
        block = list(itertools.islice(it, size))
        if not block:
            return
        yield block


def as_pairsets(block) -> np.ndarray:
    """Pad a list of pair-tuples to a (C, L, 2) array by repeating the first pair."""
    L = max(len(ps) for ps in block)
    arr = np.empty((len(block), L, 2), dtype=np.int64)
    for c, ps in enumerate(block):
        ps = list(ps)
        arr[c, : len(ps)] = ps
        arr[c, len(ps):] = ps[0]
    return arr
