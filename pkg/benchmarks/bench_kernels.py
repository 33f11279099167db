"""Compiled kernels against the pure-Python fallback.

    python benchmarks/bench_kernels.py [--repeat N]

Workloads come from the operator corpus (ALD, words of length <= 3,
addresses <= 2), so the timings reflect what the searches actually do.
"""

import argparse
import random
import timeit

from geomon import _kernels_py
from geomon.laws import builtin_family
from geomon.operators import invert
from geomon.suite import operator_corpus

try:
    from geomon import _kernels
except ImportError:
    _kernels = None


def workloads(seed=0):
    ops = [f for f in operator_corpus(builtin_family("ALD"), 3, 2) if not f.empty]
    rng = random.Random(seed)
    pairs = [(f, invert(f)) for f in rng.sample(ops, 2000)]
    pairs += [(rng.choice(ops), rng.choice(ops)) for _ in range(2000)]
    gens = list(range(-30, 0)) + list(range(1, 31))
    words = [tuple(rng.choice(gens) for _ in range(rng.randint(10, 60))) for _ in range(2000)]
    # half of the words are w·w^-1 so reduction has real work to do
    words += [w + tuple(-x for x in reversed(w)) for w in words[:1000]]
    return pairs, words


def bench(impl, pairs, words, repeat):
    def compose_all():
        for f, g in pairs:
            dv, ds = f.bounds
            impl.compose_seeds(f.dom, f.img, g.dom, g.img, dv, ds)

    def rename_all():
        for f, _ in pairs:
            impl.canonical_rename((f.dom, f.img))

    def reduce_all():
        for w in words:
            impl.free_reduce(w)

    out = {}
    for name, fn in (("compose_seeds", compose_all), ("canonical_rename", rename_all),
                     ("free_reduce", reduce_all)):
        out[name] = min(timeit.repeat(fn, number=1, repeat=repeat))
    return out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    pairs, words = workloads()
    py = bench(_kernels_py, pairs, words, args.repeat)
    if _kernels is None:
        print("compiled extension not built; python timings only")
        for k, v in py.items():
            print(f"{k:18s} python {v * 1e3:8.2f} ms")
        return
    cy = bench(_kernels, pairs, words, args.repeat)
    # both backends must agree before their speed means anything
    for f, g in pairs[:500]:
        dv, ds = f.bounds
        a = _kernels.compose_seeds(f.dom, f.img, g.dom, g.img, dv, ds)
        b = _kernels_py.compose_seeds(f.dom, f.img, g.dom, g.img, dv, ds)
        assert a == b, (f, g)
    print(f"{'kernel':18s} {'python':>10s} {'cython':>10s} {'speedup':>8s}")
    for k in py:
        print(f"{k:18s} {py[k] * 1e3:8.2f}ms {cy[k] * 1e3:8.2f}ms {py[k] / cy[k]:7.1f}x")


if __name__ == "__main__":
    main()
