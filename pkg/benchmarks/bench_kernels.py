"""Compare the compiled and pure-Python kernels.

    python3 benchmarks/bench_kernels.py [--repeat 3]

Micro benchmarks on the batch kernels, then an end-to-end area search, run
under each available backend.  Outputs are checked for equality as well.
"""

import argparse
import random
import time

import numpy as np

from isoper import kernel
from isoper.dehn import AreaSearcher, SearchBudget, catalog_presentation
from isoper.kernel import WordPack


def random_words(rng, count, max_len, rank=2):
    out = []
    letters = [c for i in range(1, rank + 1) for c in (i, -i)]
    for _ in range(count):
        w = []
        for _ in range(rng.randint(0, max_len)):
            c = rng.choice(letters)
            if w and w[-1] == -c:
                w.pop()
            else:
                w.append(c)
        out.append(tuple(w))
    return out


def timed(fn, repeat):
    best = float("inf")
    result = None
    for _ in range(repeat):
        t = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - t)
    return best, result


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    rng = random.Random(0)
    bases = WordPack(random_words(rng, 2000, 10))
    moves = WordPack(random_words(rng, 400, 8))
    seqs = [tuple(rng.choice([1, -1, 2, -2]) for _ in range(30)) for _ in range(20000)]
    P = catalog_presentation("z2")
    hard = P.alphabet.parse("a^3 b^2 a^-3 b^-2").codes

    backends = ["python"] + (["cython"] if kernel.compiled_available() else [])
    results = {}
    for name in backends:
        kernel.use_backend(name)
        rows = {}
        rows["product_hashes"] = timed(lambda: kernel.product_hashes(bases, moves, 12), args.repeat)
        rows["free_reduce"] = timed(lambda: [kernel.free_reduce(s) for s in seqs], args.repeat)
        budget = SearchBudget(max_conjugator_length=4, max_intermediate_length=16)
        rows["area_search"] = timed(lambda: AreaSearcher(P, budget).search(hard).count, 1)
        results[name] = rows

    print(f"{'benchmark':<16}" + "".join(f"{b:>12}" for b in backends) + ("     speedup" if len(backends) > 1 else ""))
    for key in results[backends[0]]:
        times = [results[b][key][0] for b in backends]
        line = f"{key:<16}" + "".join(f"{t:>11.3f}s" for t in times)
        if len(times) > 1:
            line += f"{times[0] / times[1]:>11.1f}x"
        print(line)
    if len(backends) > 1:
        a, b = results["python"], results["cython"]
        same = (np.array_equal(a["product_hashes"][1][0], b["product_hashes"][1][0])
                and a["free_reduce"][1] == b["free_reduce"][1] and a["area_search"][1] == b["area_search"][1])
        print("outputs identical:", same)
    else:
        print("compiled kernel not built; only the fallback was timed")


if __name__ == "__main__":
    main()
