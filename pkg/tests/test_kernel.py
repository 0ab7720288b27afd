"""Both kernel backends must agree exactly."""

import numpy as np
import pytest
from hypothesis import given, strategies as st

from isoper import _pykernel, kernel
from isoper.kernel import WordPack

from oracles import naive_reduce

codes = st.lists(st.sampled_from([1, -1, 2, -2, 3, -3]), max_size=16)

backends = ["python"] + (["cython"] if kernel.compiled_available() else [])


@pytest.fixture(params=backends)
def backend(request):
    old = kernel.BACKEND
    kernel.use_backend(request.param)
    yield request.param
    kernel.use_backend(old)


def test_selected_backend_is_reported():
    assert kernel.BACKEND in ("python", "cython")


@given(codes)
def test_free_reduce(cs):
    for name in backends:
        kernel.use_backend(name)
        assert kernel.free_reduce(tuple(cs)) == naive_reduce(cs)
    kernel.use_backend(backends[-1])


@given(codes, codes)
def test_multiply(x, y):
    x, y = naive_reduce(x), naive_reduce(y)
    for name in backends:
        kernel.use_backend(name)
        assert kernel.multiply(x, y) == naive_reduce(x + y)
    kernel.use_backend(backends[-1])


def _pack_inputs(seed):
    rng = np.random.default_rng(seed)
    def rand_word():
        w = []
        for _ in range(rng.integers(0, 7)):
            c = int(rng.choice([1, -1, 2, -2]))
            if w and w[-1] == -c:
                continue
            w.append(c)
        return tuple(w)
    return [rand_word() for _ in range(30)], [rand_word() for _ in range(20)]


@pytest.mark.parametrize("seed", range(5))
def test_batch_kernels_agree(seed):
    bases, moves = _pack_inputs(seed)
    B, M = WordPack(bases), WordPack(moves)
    results = {}
    for name in backends:
        kernel.use_backend(name)
        hashes, generated = kernel.product_hashes(B, M, 8)
        lengths = np.asarray(kernel.product_lengths(bases[0], M))
        results[name] = (np.asarray(hashes).tolist(), int(generated), lengths.tolist())
    kernel.use_backend(backends[-1])
    first = results[backends[0]]
    for name in backends[1:]:
        assert results[name] == first
    # lengths against the reference
    assert first[2] == [len(naive_reduce(bases[0] + m)) for m in moves]


@pytest.mark.parametrize("seed", range(3))
def test_hits_in_agree(seed):
    bases, moves = _pack_inputs(seed)
    B, M = WordPack(bases), WordPack(moves)
    target = kernel.product_hashes(B, M, 8)[0][:15]
    counts = []
    for name in backends:
        kernel.use_backend(name)
        counts.append(len(kernel.hits_in(B, M, 8, target)))
    kernel.use_backend(backends[-1])
    assert len(set(counts)) == 1 and counts[0] >= 1


def test_python_fallback_module_importable():
    assert _pykernel.free_reduce((1, -1, 2)) == (2,)
