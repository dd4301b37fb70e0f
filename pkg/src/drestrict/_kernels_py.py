"""Pure-Python kernels; used when the compiled extension is unavailable.

Rows are packed into Python ints used as bitsets (bit i = row i).
"""

from __future__ import annotations

import numpy as np

BACKEND = "python"


def _collision_masks(matrix: np.ndarray):
    cols = [matrix[:, j].tolist() for j in range(matrix.shape[1])]
    cache = {}

    def mask(a: int, b: int) -> int:
        key = (a, b) if a < b else (b, a)
        got = cache.get(key)
        if got is None:
            ca, cb = cols[key[0]], cols[key[1]]
            got = 0
            for i, (x, y) in enumerate(zip(ca, cb)):
                if x == y:
                    got |= 1 << i
            cache[key] = got
        return got

    return mask


def separation_counts(matrix, pairsets):
    """Rows separating every pair of each pair-set; pairsets has shape (C, L, 2)."""
    m = matrix.shape[0]
    mask = _collision_masks(matrix)
    out = np.empty(len(pairsets), dtype=np.int64)
    for c, ps in enumerate(pairsets.tolist()):
        acc = 0
        for a, b in ps:
            acc |= mask(a, b)
        out[c] = m - acc.bit_count()
    return out


def cff_counts(tests, ones, zeros):
    """Rows with 1 on every index of ``ones[c]`` and 0 on every index of ``zeros[c]``."""
    m, n = tests.shape
    full = (1 << m) - 1
    one_mask = []
    for j in range(n):
        bits = 0
        for i, v in enumerate(tests[:, j].tolist()):
            if v:
                bits |= 1 << i
        one_mask.append(bits)
    out = np.empty(len(ones), dtype=np.int64)
    for c, (js, ks) in enumerate(zip(ones.tolist(), zeros.tolist())):
        acc = full
        for j in js:
            acc &= one_mask[j]
        for k in ks:
            acc &= ~one_mask[k]
        out[c] = (acc & full).bit_count()
    return out


def injective_table(evals, subsets):
    """Boolean (M, C): member i is injective on subset c."""
    vals = evals[:, subsets]  # (M, C, d)
    d = subsets.shape[1]
    ok = np.ones(vals.shape[:2], dtype=bool)
    for a in range(d):
        for b in range(a + 1, d):
            ok &= vals[:, :, a] != vals[:, :, b]
    return ok
