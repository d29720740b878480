"""Compare the compiled and pure-Python multiplication kernels.

Run: python3 benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import random
import timeit

from k3isogeny import _pykernels

try:
    from k3isogeny import _ckernels
except ImportError:
    _ckernels = None


def dense_case(rng, n, bits):
    return [rng.getrandbits(bits) - (1 << (bits - 1)) for _ in range(n)]


def sparse_case(rng, terms, nvars, maxdeg, bits):
    out = {}
    while len(out) < terms:
        e = tuple(rng.randrange(maxdeg + 1) for _ in range(nvars))
        out[e] = rng.getrandbits(bits) + 1
    return out


def bench(label, fn, args, repeat):
    best = min(timeit.repeat(lambda: fn(*args), number=1, repeat=repeat))
    return label, best


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    opts = ap.parse_args()
    rng = random.Random(0)
    cases = [
        ("conv 64x64, 64-bit", "conv", (dense_case(rng, 64, 64), dense_case(rng, 64, 64))),
        ("conv 256x256, 128-bit", "conv", (dense_case(rng, 256, 128), dense_case(rng, 256, 128))),
        ("sparse 200x200 terms, 4 vars", "sparse_mul",
         (sparse_case(rng, 200, 4, 6, 32), sparse_case(rng, 200, 4, 6, 32))),
        ("sparse 600x600 terms, 6 vars", "sparse_mul",
         (sparse_case(rng, 600, 6, 4, 32), sparse_case(rng, 600, 6, 4, 32))),
    ]
    print(f"{'case':34s} {'python (ms)':>12s} {'cython (ms)':>12s} {'speedup':>8s}")
    for label, name, args in cases:
        py = getattr(_pykernels, name)
        _, t_py = bench(label, py, args, opts.repeat)
        if _ckernels is None:
            print(f"{label:34s} {t_py * 1e3:12.3f} {'n/a':>12s} {'n/a':>8s}")
            continue
        cy = getattr(_ckernels, name)
        assert cy(*args) == py(*args), f"backends disagree on {label}"
        _, t_cy = bench(label, cy, args, opts.repeat)
        print(f"{label:34s} {t_py * 1e3:12.3f} {t_cy * 1e3:12.3f} {t_py / t_cy:7.2f}x")


if __name__ == "__main__":
    main()
