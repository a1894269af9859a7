#!/usr/bin/env python3
"""Benchmark the closure kernels: compiled extension vs pure Python.

Builds synthetic stores with deep subsumption chains and bulk role
assertions (the shape that makes the fixpoint expensive), then times both
kernel implementations on identical integer-encoded inputs.

Usage:
    python benchmarks/bench_closure.py [--scale N] [--repeat K]
"""

from __future__ import annotations

import argparse
import random
import time

from rdfsupd import _closure_py

try:
    from rdfsupd import _closure_native
except ImportError:
    _closure_native = None


def make_instance(n_classes: int, n_props: int, n_inds: int, n_roles: int,
                  seed: int = 0):
    """Chain-heavy TBox plus random role assertions, integer-encoded.

    Term ids: classes [0, n_classes), properties [n_classes, +n_props),
    individuals afterwards.
    """
    rng = random.Random(seed)
    cls0, prop0, ind0 = 0, n_classes, n_classes + n_props
    sc = [(cls0 + i, cls0 + i + 1) for i in range(n_classes - 1)]
    sp = [(prop0 + i, prop0 + i + 1) for i in range(n_props - 1)]
    dom = [(prop0 + i, cls0 + (i % n_classes)) for i in range(n_props)]
    rng_ax = [(prop0 + i, cls0 + ((i + 1) % n_classes)) for i in range(n_props)]
    roles = [
        (
            ind0 + rng.randrange(n_inds),
            prop0 + rng.randrange(n_props),
            ind0 + rng.randrange(n_inds),
        )
        for _ in range(n_roles)
    ]
    classes = [(ind0 + rng.randrange(n_inds), cls0 + rng.randrange(n_classes))
               for _ in range(n_roles // 4)]
    return sc, sp, dom, rng_ax, classes, roles


def bench(impl, instance, repeat: int) -> tuple[float, int]:
    sc, sp, dom, rng_ax, classes, roles = instance
    best = float("inf")
    derived = 0
    for _ in range(repeat):
        t0 = time.perf_counter()
        cls_out, role_out = impl.abox_closure(sc, sp, dom, rng_ax, classes, roles)
        impl.transitive_closure(sc + sp)
        best = min(best, time.perf_counter() - t0)
        derived = len(cls_out) + len(role_out)
    return best, derived


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--scale", type=int, default=3,
                        help="number of size steps (default 3)")
    parser.add_argument("--repeat", type=int, default=3,
                        help="timing repetitions, best-of (default 3)")
    args = parser.parse_args()

    print(f"{'size':>22}  {'facts out':>9}  {'python':>10}  {'native':>10}  "
          f"{'speedup':>7}")
    for step in range(args.scale):
        factor = 4 ** step
        instance = make_instance(
            n_classes=20 * factor, n_props=10, n_inds=50 * factor,
            n_roles=2000 * factor, seed=step,
        )
        py_time, derived = bench(_closure_py, instance, args.repeat)
        label = f"{20 * factor}c/{50 * factor}i/{2000 * factor}r"
        if _closure_native is None:
            print(f"{label:>22}  {derived:>9}  {py_time:>9.4f}s  "
                  f"{'(not built)':>10}  {'-':>7}")
            continue
        nat_time, nat_derived = bench(_closure_native, instance, args.repeat)
        assert nat_derived == derived, "backends disagree"
        print(f"{label:>22}  {derived:>9}  {py_time:>9.4f}s  {nat_time:>9.4f}s  "
              f"{py_time / nat_time:>6.1f}x")
    if _closure_native is None:
        print("\ncompiled kernel not built; run "
              "`pip install -e . --no-build-isolation` with Cython available")


if __name__ == "__main__":
    main()
