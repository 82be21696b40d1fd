"""Time the imagelab enumeration kernels under both backends.

    python benchmarks/bench_imagelab.py [--repeat 5]

Each backend module is imported directly, so one process measures both
regardless of NCALG_DISABLE_NUMBA.
"""
import argparse
import time

import numpy as np

from ncalg.freealg import parse_poly, standard_poly
from ncalg.imagelab import _numpy, parse_ring
from ncalg.imagelab.lab import _flatten, substitutions


def _backends():
    out = {"numpy": _numpy}
    try:
        from ncalg.imagelab import _numba
        out["numba"] = _numba
    except ImportError:
        pass
    return out


def _best(fn, repeat):
    fn()  # warm-up, includes jit compilation
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()

    cases = []
    R3 = parse_ring("2x2@3")
    f = standard_poly(3, R3.field)
    cases.append(("eval S3 on 2x2@3", R3, f))
    R2 = parse_ring("2x2@2")
    g = parse_poly("x1*x2*x3 + x3*x1 + x2^3", R2.field)
    cases.append(("eval cubic on 2x2@2", R2, g))

    backends = _backends()
    print(f"{'case':28s} " + " ".join(f"{b:>10s}" for b in backends))
    for name, R, poly in cases:
        subs = substitutions(R, poly.nvars, allow_sampling=False)
        c, ptr, w = _flatten(poly)
        row, ref = [], None
        for mod in backends.values():
            run = lambda m=mod: m.eval_poly(subs.var_vals, c, ptr, w, R.mul, R.add, R.scale, R.one)
            res = run()
            ref = res if ref is None else ref
            assert np.array_equal(ref, res), "backends disagree"
            row.append(_best(run, args.repeat))
        print(f"{name:28s} " + " ".join(f"{t * 1e3:8.2f}ms" for t in row))

    rng = np.random.default_rng(0)
    word_vals = rng.integers(0, 16, size=(15, 256)).astype(np.uint8)
    row, ref = [], None
    for mod in backends.values():
        res = mod.sweep_xor_images(word_vals)
        ref = res if ref is None else ref
        assert np.array_equal(ref, res), "backends disagree"
        row.append(_best(lambda m=mod: m.sweep_xor_images(word_vals), args.repeat))
    print(f"{'xor sweep 2^15 x 256':28s} " + " ".join(f"{t * 1e3:8.2f}ms" for t in row))


if __name__ == "__main__":
    main()
