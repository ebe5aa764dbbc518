"""Benchmark the compiled search kernel against the pure-Python fallback.

Both backends run the same decode batch; besides timing, the script checks
that the results agree bit for bit.

Usage: python benchmarks/bench_decode.py [--lattice GluedE6E6] [--samples 2000]
"""

import argparse
import time

import numpy as np

from gluequant import _se_fallback, catalog
from gluequant.cvp import DecoderContext

try:
    from gluequant import _se_kernel
except ImportError:
    _se_kernel = None


def run(backend, upper, targets):
    k = targets.shape[0]
    dists = np.empty(k)
    coords = np.empty((k, upper.shape[0]), dtype=np.int64)
    t0 = time.perf_counter()
    backend.decode_batch_coords_raw(upper, targets, dists, coords)
    return time.perf_counter() - t0, dists, coords


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--lattice", default="GluedE6E6")
    ap.add_argument("--samples", type=int, default=2000)
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args()

    lattice = catalog.resolve_spec(args.lattice)
    ctx = DecoderContext(lattice)
    rng = np.random.Generator(np.random.Philox(key=np.array([args.seed, 0], np.uint64)))
    targets = np.ascontiguousarray(rng.random((args.samples, lattice.dimension)))

    print(f"lattice={args.lattice} (n={lattice.dimension})  samples={args.samples}")
    t_py, d_py, w_py = run(_se_fallback, ctx.upper, targets)
    print(f"  python   : {t_py:8.3f}s  {args.samples / t_py:12.0f} decodes/s")
    if _se_kernel is None:
        print("  compiled : not built (pip install -e . --no-build-isolation)")
        return
    t_c, d_c, w_c = run(_se_kernel, ctx.upper, targets)
    print(f"  compiled : {t_c:8.3f}s  {args.samples / t_c:12.0f} decodes/s")
    print(f"  speedup  : {t_py / t_c:8.1f}x")
    same = np.array_equal(d_py, d_c) and np.array_equal(w_py, w_c)
    print(f"  bit-identical results: {same}")
    if not same:
        raise SystemExit("backend results diverge")


if __name__ == "__main__":
    main()
