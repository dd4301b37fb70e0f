# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels; same contracts as ``_kernels_py``.

Rows are packed into uint64 words, one bitset per column pair or column.
"""

import numpy as np
cimport numpy as cnp
from libc.stdint cimport int64_t, uint64_t

cnp.import_array()

BACKEND = "cython"


cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil


def separation_counts(matrix, pairsets):
    cdef int64_t[:, :] mat = np.ascontiguousarray(matrix, dtype=np.int64)
    cdef int64_t[:, :, :] ps = np.ascontiguousarray(pairsets, dtype=np.int64)
    cdef Py_ssize_t m = mat.shape[0], n = mat.shape[1]
    cdef Py_ssize_t W = (m + 63) // 64
    cdef Py_ssize_t C = ps.shape[0], L = ps.shape[1]
    # collision masks for every ordered pair, filled for a < b
    cdef uint64_t[:, :, :] masks = np.zeros((n, n, W), dtype=np.uint64)
    cdef Py_ssize_t a, b, i, w, c, l
    for a in range(n):
        for b in range(a + 1, n):
            for i in range(m):
                if mat[i, a] == mat[i, b]:
                    masks[a, b, i >> 6] |= (<uint64_t>1) << (i & 63)
    out_arr = np.empty(C, dtype=np.int64)
    cdef int64_t[:] out = out_arr
    cdef uint64_t acc
    cdef int64_t cnt
    with nogil:
        for c in range(C):
            cnt = 0
            for w in range(W):
                acc = 0
                for l in range(L):
                    a = ps[c, l, 0]
                    b = ps[c, l, 1]
                    if a > b:
                        a, b = b, a
                    acc |= masks[a, b, w]
                cnt += __builtin_popcountll(acc)
            out[c] = m - cnt
    return out_arr


def cff_counts(tests, ones, zeros):
    cdef int64_t[:, :] t = np.ascontiguousarray(tests, dtype=np.int64)
    cdef int64_t[:, :] js = np.ascontiguousarray(ones, dtype=np.int64)
    cdef int64_t[:, :] ks = np.ascontiguousarray(zeros, dtype=np.int64)
    cdef Py_ssize_t m = t.shape[0], n = t.shape[1]
    cdef Py_ssize_t W = (m + 63) // 64
    cdef Py_ssize_t C = js.shape[0], w_ = js.shape[1], r_ = ks.shape[1]
    cdef uint64_t[:, :] one = np.zeros((n, W), dtype=np.uint64)
    cdef Py_ssize_t i, j, c, w, l
    for j in range(n):
        for i in range(m):
            if t[i, j]:
                one[j, i >> 6] |= (<uint64_t>1) << (i & 63)
    cdef uint64_t last = ~(<uint64_t>0)
    if m & 63:
        last = ((<uint64_t>1) << (m & 63)) - 1
    out_arr = np.empty(C, dtype=np.int64)
    cdef int64_t[:] out = out_arr
    cdef uint64_t acc
    cdef int64_t cnt
    with nogil:
        for c in range(C):
            cnt = 0
            for w in range(W):
                acc = last if w == W - 1 else ~(<uint64_t>0)
                for l in range(w_):
                    acc &= one[js[c, l], w]
                for l in range(r_):
                    acc &= ~one[ks[c, l], w]
                cnt += __builtin_popcountll(acc)
            out[c] = cnt
    return out_arr


def injective_table(evals, subsets):
    cdef int64_t[:, :] ev = np.ascontiguousarray(evals, dtype=np.int64)
    cdef int64_t[:, :] ss = np.ascontiguousarray(subsets, dtype=np.int64)
    cdef Py_ssize_t M = ev.shape[0], C = ss.shape[0], d = ss.shape[1]
    out_arr = np.ones((M, C), dtype=np.bool_)
    cdef cnp.npy_bool[:, :] out = out_arr
    cdef Py_ssize_t i, c, a, b
    cdef bint ok
    with nogil:
        for i in range(M):
            for c in range(C):
                ok = True
                for a in range(d):
                    for b in range(a + 1, d):
                        if ev[i, ss[c, a]] == ev[i, ss[c, b]]:
                            ok = False
                            break
                    if not ok:
                        break
                out[i, c] = ok
    return out_arr
