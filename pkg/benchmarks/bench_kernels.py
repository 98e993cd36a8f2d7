"""Compare the compiled kernels with the pure-Python fallback.

    python benchmarks/bench_kernels.py [--repeat 3]
"""

import argparse
import time
from fractions import Fraction

import numpy as np

from cantorbase.kernels import _fallback
from cantorbase.numberfield import make_field
from cantorbase.transducer import BaseAlphabet, build
from cantorbase.words import thue_morse

try:
    from cantorbase.kernels import _core
except ImportError:
    _core = None


def cases():
    T180 = build(BaseAlphabet(make_field([0, 1]), [2, 3]), Fraction(932, 3885))
    K = make_field([-1, -3, -3, 1])
    g = K.gen
    T127 = build(BaseAlphabet(K, [g ** 2, g ** 3]), 1, "quasi")
    rng = np.random.default_rng(0)
    Q = 400
    nxt = rng.integers(0, Q, size=(Q, 3), dtype=np.int64)
    out = rng.integers(0, 2, size=(Q, 3), dtype=np.int64)
    letters = np.array(thue_morse(0, 1).raw_stream(200_000), dtype=np.int64)
    ph_letter = np.array([[0, 1], [1, 0], [0, 0]], dtype=np.int64)
    ph_next = np.array([[1, 2], [0, 0], [0, 0]], dtype=np.int64)
    ph_deg = np.array([2, 1, 1], dtype=np.int64)
    return [
        ("feed 200k letters (180 states)", "feed", (T180.nxt, T180.out, 0, letters)),
        ("pair closure, all anchors (127)", "all_anchors", (T127.nxt, T127.out)),
        ("pair closure, all anchors (180)", "all_anchors", (T180.nxt, T180.out)),
        ("scc (random 400 x 3)", "scc", (nxt,)),
        ("product reach (180 states)", "product_reach", (T180.nxt, 0, ph_letter, ph_next, ph_deg)),
    ]


def kernel(mod, name):
    if name == "all_anchors":
        return lambda nxt, out: [mod.pair_distances(nxt, out, a) for a in range(nxt.shape[0])]
    return getattr(mod, name)


def best_of(fn, args, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if _core is None:
        print("compiled kernels are not built; only the fallback is timed")
    print(f"{'kernel':34s} {'python (s)':>11s} {'cython (s)':>11s} {'speedup':>8s}")
    for label, name, fargs in cases():
        tp = best_of(kernel(_fallback, name), fargs, args.repeat)
        if _core is None:
            print(f"{label:34s} {tp:11.4f} {'-':>11s} {'-':>8s}")
            continue
        tc = best_of(kernel(_core, name), fargs, args.repeat)
        print(f"{label:34s} {tp:11.4f} {tc:11.4f} {tp / tc:7.1f}x")


if __name__ == "__main__":
    main()
