"""Time the numba kernels against their numpy fallbacks.

    python benchmarks/bench_kernels.py [--repeat 5]

Each kernel is run once before timing so JIT compilation is excluded.
"""

import argparse
import time

import numpy as np

from dfdomains import _kernels
from dfdomains.io import fixture_path, load_json
from dfdomains.modular import parse_cycles, perm_group_order


def best_of(fn, repeat):
    fn()  # warm-up, compiles the numba path
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def bench_containment(n, repeat):
    rng = np.random.default_rng(0)
    centers = rng.uniform(-1, 1, n)
    radii = rng.uniform(1e-4, 0.05, n)
    out = {}
    for flag in (False, True):
        out[flag] = best_of(lambda: _kernels.contained_mask(centers, radii, use_numba=flag), repeat)
    return out


def coset_generators():
    data = load_json(fixture_path("g_intersection.json"))["coset_permutations"]
    return [parse_cycles(data[k], data["degree"]) for k in ("L", "R")]


def bench_group_order(gens, repeat):
    out = {}
    saved = _kernels.USE_NUMBA
    try:
        for flag in (False, True):
            _kernels.USE_NUMBA = flag
            out[flag] = best_of(lambda: perm_group_order(gens), repeat)
    finally:
        _kernels.USE_NUMBA = saved
    return out


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()
    if not _kernels.NUMBA_AVAILABLE:
        raise SystemExit("numba is not installed; nothing to compare")
    rows = [(f"contained_mask n={n}", bench_containment(n, args.repeat)) for n in (200, 2000, 8000)]
    rows.append(("perm_group_order degree=24", bench_group_order(coset_generators(), args.repeat)))
    print(f"{'kernel':<32}{'numpy [ms]':>12}{'numba [ms]':>12}{'speed-up':>10}")
    for name, t in rows:
        print(f"{name:<32}{t[False] * 1e3:>12.2f}{t[True] * 1e3:>12.2f}{t[False] / t[True]:>9.1f}x")


if __name__ == "__main__":
    main()
