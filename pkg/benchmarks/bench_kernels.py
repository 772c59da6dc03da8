"""Compare the compiled and pure-Python kernel backends.

    python3 benchmarks/bench_kernels.py [--repeat N] [--end-to-end]

Each kernel runs on identical inputs under both backends; outputs are
checked for equality before timings are reported.
"""

import argparse
import os
import subprocess
import sys
import timeit

import numpy as np

from cdlat import _pykernels
from cdlat import constructions as cons
from cdlat.extension import extend
from cdlat.groups import as_group

try:
    from cdlat import _ckernels
except ImportError:  # extension not built
    _ckernels = None


def flat(pres):
    n = pres.ngens
    pow_ptr, pow_let = [0], []
    for i in range(n):
        pow_let += pres._letters(pres.power_word(i))
        pow_ptr.append(len(pow_let))
    conj_ptr, conj_let = [0], []
    for i in range(n):
        for j in range(n):
            if i < j:
                conj_let += pres._letters(pres.conjugation_word(i, j))
            conj_ptr.append(len(conj_let))
    return pres.relative_orders, pow_ptr, pow_let, conj_ptr, conj_let


def bench_collect(mod, pres, words):
    col = mod.Collector(*flat(pres))
    start = [0] * pres.ngens

    def run():
        return [col.collect(start, w) for w in words]
    return run


def bench_closure(mod, G, gen_sets):
    table = G.table
    start = np.zeros(G.order, dtype=np.uint8)
    start[0] = 1

    def run():
        return [np.asarray(mod.table_closure(table, g, start)) for g in gen_sets]
    return run


def bench_centralizer(mod, G, elements):
    letters = [G.letters(int(x)) for x in elements]

    def run():
        return [np.asarray(mod.centralizer_mask(G._right, G._left, w)) for w in letters]
    return run


def same(a, b):
    return all(np.array_equal(np.asarray(x), np.asarray(y)) for x, y in zip(a, b))


def end_to_end():
    code = ("import time; from cdlat import cd_lattice, constructions as c;"
            "t = time.perf_counter(); cd_lattice(c.build_l2n(3)); print(time.perf_counter() - t)")
    out = {}
    for label, env in (("cython", {}), ("python", {"CDLAT_PURE_PYTHON": "1"})):
        res = subprocess.run([sys.executable, "-c", code], env={**os.environ, **env},
                             capture_output=True, text=True, check=True)
        out[label] = float(res.stdout)
    return out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--end-to-end", action="store_true", help="also time cd_lattice(l2n(3)) per backend")
    args = ap.parse_args()
    if _ckernels is None:
        sys.exit("compiled extension not available; build it with pip install -e .")

    rng = np.random.default_rng(0)
    pres = cons.build_l2n(3)
    words = [rng.integers(0, pres.ngens, 40).tolist() for _ in range(2000)]
    G = as_group(pres)
    gen_sets = [rng.integers(1, G.order, 2).tolist() for _ in range(200)]
    big = as_group(extend(cons.build_l1n(2)).G)
    elements = rng.integers(1, big.order, 100)

    cases = [
        ("collect 2000 words of length 40, l2n(3)", bench_collect, (pres, words)),
        ("closure of 200 two-generator subgroups, l2n(3)", bench_closure, (G, gen_sets)),
        ("100 element centralizers, order 2^16", bench_centralizer, (big, elements)),
    ]
    print(f"{'kernel':52s} {'cython':>10s} {'python':>10s} {'speedup':>8s}")
    for label, factory, inputs in cases:
        fc, fp = factory(_ckernels, *inputs), factory(_pykernels, *inputs)
        if not same(fc(), fp()):
            sys.exit(f"backends disagree on: {label}")
        tc = min(timeit.repeat(fc, number=1, repeat=args.repeat))
        tp = min(timeit.repeat(fp, number=1, repeat=args.repeat))
        print(f"{label:52s} {tc:9.4f}s {tp:9.4f}s {tp / tc:7.1f}x")
    if args.end_to_end:
        t = end_to_end()
        print(f"{'cd_lattice(l2n(3)) end to end':52s} {t['cython']:9.2f}s {t['python']:9.2f}s "
              f"{t['python'] / t['cython']:7.1f}x")


if __name__ == "__main__":
    main()
