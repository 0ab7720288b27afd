"""Backend selection for the free-group hot loops.

The compiled extension ``isoper._ckernel`` is used when it imports; otherwise
(or when ``ISOPER_PURE_PYTHON`` is set to a non-empty value) the numpy
implementation in ``isoper._pykernel`` takes over.  Both produce identical
results; only speed differs.
"""

import os

import numpy as np

from . import _pykernel

BACKEND = "python"
_impl = _pykernel

if not os.environ.get("ISOPER_PURE_PYTHON"):
    try:
        from . import _ckernel as _impl  # noqa: F811

        BACKEND = "cython"
    except ImportError:  # pragma: no cover - depends on the build
        _impl = _pykernel

free_reduce = _impl.free_reduce
multiply = _impl.multiply
word_hash = _impl.word_hash


def use_backend(name):
    """Switch backends at runtime ("cython" or "python"); used by benchmarks."""
    global _impl, BACKEND, free_reduce, multiply, word_hash
    if name == "python":
        _impl = _pykernel
    elif name == "cython":
        from . import _ckernel

        _impl = _ckernel
    else:
        raise ValueError(f"unknown backend {name!r}")
    BACKEND = name
    free_reduce = _impl.free_reduce
    multiply = _impl.multiply
    word_hash = _impl.word_hash


def compiled_available():
    try:
        from . import _ckernel  # noqa: F401
    except ImportError:
        return False
    return True


def inverse(u):
    return tuple(-x for x in reversed(u))


class WordPack:
    """A list of words packed into a zero-padded int64 matrix."""

    __slots__ = ("words", "array", "lengths")

    def __init__(self, words):
        self.words = list(words)
        width = max((len(w) for w in self.words), default=0)
        self.array = np.zeros((len(self.words), max(width, 1)), dtype=np.int64)
        self.lengths = np.zeros(len(self.words), dtype=np.int64)
        for i, w in enumerate(self.words):
            self.array[i, : len(w)] = w
            self.lengths[i] = len(w)

    def __len__(self):
        return len(self.words)


def product_hashes(bases, moves, cap):
    """Sorted unique hashes of reduce(b*m) over all pairs with length <= cap.

    Returns ``(hashes, generated)``.
    """
    if not len(bases) or not len(moves):
        return np.empty(0, dtype=np.uint64), 0
    h, generated = _impl.product_hashes(bases.array, bases.lengths, moves.array, moves.lengths, cap)
    return np.unique(h), generated


def hits_in(bases, moves, cap, sorted_hashes, limit=-1):
    if not len(bases) or not len(moves):
        return []
    return _impl.hits_in(bases.array, bases.lengths, moves.array, moves.lengths, cap, sorted_hashes, limit)


def product_lengths(b, moves):
    if not len(moves):
        return np.empty(0, dtype=np.int64)
    return _impl.product_lengths(b, moves.array, moves.lengths)


def hashes_of(words):
    return np.unique(np.fromiter((word_hash(w) for w in words), dtype=np.uint64))
