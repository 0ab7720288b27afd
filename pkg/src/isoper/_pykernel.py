"""Pure-Python/numpy implementations of the hot free-group kernels.

Words are tuples of nonzero ints: generator ``i`` (1-based) is ``+i`` and its
inverse ``-i``.  Packed word tables are 2-D int64 arrays padded with zeros plus
a length vector.  The compiled module ``_ckernel`` mirrors every function here
with identical results, including the 64-bit word hashes.
"""

import numpy as np

FNV_OFFSET = 14695981039346656037
FNV_PRIME = 1099511628211
_MASK64 = (1 << 64) - 1
_MASK32 = 0xFFFFFFFF

_U_PRIME = np.uint64(FNV_PRIME)


def free_reduce(seq):
    out = []
    for x in seq:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def multiply(u, v):
    k = 0
    nu, nv = len(u), len(v)
    while k < nu and k < nv and u[nu - 1 - k] == -v[k]:
        k += 1
    return tuple(u[: nu - k]) + tuple(v[k:])


def word_hash(u):
    h = FNV_OFFSET
    for x in u:
        h = ((h ^ (x & _MASK32)) * FNV_PRIME) & _MASK64
    return h


def _prefix_hashes(b):
    out = np.empty(len(b) + 1, dtype=np.uint64)
    h = FNV_OFFSET
    out[0] = h
    for i, x in enumerate(b):
        h = ((h ^ (x & _MASK32)) * FNV_PRIME) & _MASK64
        out[i + 1] = h
    return out


def _row_products(b, moves, mlen):
    """Lengths and hashes of reduce(b * m) for every packed move m."""
    lb = len(b)
    nmoves, width = moves.shape
    k = np.zeros(nmoves, dtype=np.int64)
    alive = np.ones(nmoves, dtype=bool)
    for t in range(min(lb, width)):
        alive &= (moves[:, t] == -b[lb - 1 - t]) & (t < mlen)
        if not alive.any():
            break
        k += alive
    lengths = lb + mlen - 2 * k
    pre = _prefix_hashes(b)
    h = pre[lb - k]
    with np.errstate(over="ignore"):
        for t in range(width):
            active = (t >= k) & (t < mlen)
            if not active.any():
                continue
            mixed = (h ^ (moves[:, t] & _MASK32).astype(np.uint64)) * _U_PRIME
            h = np.where(active, mixed, h)
    return lengths, h


def product_hashes(bases, blen, moves, mlen, cap):
    """Hashes of all reduced products base*move whose length is <= cap.

    Returns ``(hashes, generated)`` where ``generated`` counts every product
    formed, kept or not.
    """
    chunks = []
    for i in range(len(blen)):
        b = tuple(int(x) for x in bases[i, : blen[i]])
        lengths, h = _row_products(b, moves, mlen)
        chunks.append(h[lengths <= cap])
    generated = len(blen) * len(mlen)
    if not chunks:
        return np.empty(0, dtype=np.uint64), generated
    return np.concatenate(chunks), generated


def hits_in(bases, blen, moves, mlen, cap, sorted_hashes, limit=-1):
    """Index pairs (i, j) whose product hash lies in ``sorted_hashes``."""
    hits = []
    if len(sorted_hashes) == 0:
        return hits
    for i in range(len(blen)):
        b = tuple(int(x) for x in bases[i, : blen[i]])
        lengths, h = _row_products(b, moves, mlen)
        pos = np.searchsorted(sorted_hashes, h)
        pos[pos >= len(sorted_hashes)] = 0
        found = (sorted_hashes[pos] == h) & (lengths <= cap)
        for j in np.flatnonzero(found):
            hits.append((i, int(j)))
            if 0 <= limit <= len(hits):
                return hits
    return hits


def product_lengths(b, moves, mlen):
    lengths, _ = _row_products(tuple(b), moves, mlen)
    return lengths
