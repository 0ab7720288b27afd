# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled twins of the functions in ``_pykernel``; see that module for the
word encoding and packing conventions."""

import numpy as np
cimport numpy as cnp
from libc.stdint cimport uint64_t, int64_t, uint32_t

cnp.import_array()

cdef uint64_t FNV_OFFSET = 14695981039346656037ULL
cdef uint64_t FNV_PRIME = 1099511628211ULL


def free_reduce(seq):
    cdef list out = []
    cdef Py_ssize_t n = 0
    for x in seq:
        if n and out[n - 1] == -x:
            out.pop()
            n -= 1
        else:
            out.append(x)
            n += 1
    return tuple(out)


def multiply(tuple u, tuple v):
    cdef Py_ssize_t k = 0, nu = len(u), nv = len(v)
    while k < nu and k < nv and <long>u[nu - 1 - k] == -<long>v[k]:
        k += 1
    return u[: nu - k] + v[k:]


def word_hash(u):
    cdef uint64_t h = FNV_OFFSET
    cdef long x
    for x in u:
        h = (h ^ <uint32_t>x) * FNV_PRIME
    return h


cdef inline Py_ssize_t _cancel(const int64_t[:] b, Py_ssize_t lb,
                               const int64_t[:] m, Py_ssize_t lm) nogil:
    cdef Py_ssize_t k = 0
    while k < lb and k < lm and m[k] == -b[lb - 1 - k]:
        k += 1
    return k


cdef inline uint64_t _hash_product(uint64_t* pre, Py_ssize_t lb, Py_ssize_t k,
                                   const int64_t[:] m, Py_ssize_t lm) nogil:
    cdef uint64_t h = pre[lb - k]
    cdef Py_ssize_t t
    for t in range(k, lm):
        h = (h ^ <uint32_t>m[t]) * FNV_PRIME
    return h


cdef inline bint _contains(const uint64_t[:] arr, uint64_t h) nogil:
    cdef Py_ssize_t lo = 0, hi = arr.shape[0], mid
    while lo < hi:
        mid = (lo + hi) >> 1
        if arr[mid] < h:
            lo = mid + 1
        else:
            hi = mid
    return lo < arr.shape[0] and arr[lo] == h


def product_hashes(const int64_t[:, :] bases, const int64_t[:] blen,
                   const int64_t[:, :] moves, const int64_t[:] mlen, long cap):
    cdef Py_ssize_t nb = blen.shape[0], nm = mlen.shape[0]
    cdef Py_ssize_t i, j, t, lb, lm, k, count = 0
    cdef cnp.ndarray[cnp.uint64_t, ndim=1] out = np.empty(max(nb * nm, 1), dtype=np.uint64)
    cdef uint64_t[:] ov = out
    cdef uint64_t[:] pre = np.empty(bases.shape[1] + 1, dtype=np.uint64)
    cdef uint64_t h
    with nogil:
        for i in range(nb):
            lb = blen[i]
            h = FNV_OFFSET
            pre[0] = h
            for t in range(lb):
                h = (h ^ <uint32_t>bases[i, t]) * FNV_PRIME
                pre[t + 1] = h
            for j in range(nm):
                lm = mlen[j]
                k = _cancel(bases[i], lb, moves[j], lm)
                if lb + lm - 2 * k > cap:
                    continue
                ov[count] = _hash_product(&pre[0], lb, k, moves[j], lm)
                count += 1
    return out[:count].copy(), nb * nm


def hits_in(const int64_t[:, :] bases, const int64_t[:] blen,
            const int64_t[:, :] moves, const int64_t[:] mlen, long cap,
            const uint64_t[:] sorted_hashes, long limit=-1):
    cdef Py_ssize_t nb = blen.shape[0], nm = mlen.shape[0]
    cdef Py_ssize_t i, j, t, lb, lm, k
    cdef uint64_t[:] pre = np.empty(bases.shape[1] + 1, dtype=np.uint64)
    cdef uint64_t h
    cdef list hits = []
    if sorted_hashes.shape[0] == 0:
        return hits
    for i in range(nb):
        lb = blen[i]
        h = FNV_OFFSET
        pre[0] = h
        for t in range(lb):
            h = (h ^ <uint32_t>bases[i, t]) * FNV_PRIME
            pre[t + 1] = h
        for j in range(nm):
            lm = mlen[j]
            k = _cancel(bases[i], lb, moves[j], lm)
            if lb + lm - 2 * k > cap:
                continue
            h = _hash_product(&pre[0], lb, k, moves[j], lm)
            if _contains(sorted_hashes, h):
                hits.append((i, j))
                if 0 <= limit <= len(hits):
                    return hits
    return hits


def product_lengths(b, const int64_t[:, :] moves, const int64_t[:] mlen):
    cdef cnp.ndarray[cnp.int64_t, ndim=1] barr = np.asarray(tuple(b), dtype=np.int64).reshape(-1)
    cdef const int64_t[:] bv = barr
    cdef Py_ssize_t lb = barr.shape[0], nm = mlen.shape[0], j, k
    cdef cnp.ndarray[cnp.int64_t, ndim=1] out = np.empty(nm, dtype=np.int64)
    cdef int64_t[:] ov = out
    for j in range(nm):
        k = _cancel(bv, lb, moves[j], mlen[j])
        ov[j] = lb + mlen[j] - 2 * k
    return out
