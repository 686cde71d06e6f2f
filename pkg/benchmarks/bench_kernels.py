"""Compare the compiled and pure-Python propagation kernels.

Builds a chain of interleaved add/mul/min constraints, runs the worklist
fixpoint from the same starting bounds under both kernels, checks the
results agree, and reports wall time per kernel.

Usage: python benchmarks/bench_kernels.py [vars] [repeats]
"""

import sys
import time

import numpy as np

from tcnsolve import _core_py
from tcnsolve.decompose import TcnNetwork, TcnOp, TernaryConstraint
from tcnsolve.intervals import DomainStore, itv
from tcnsolve.propagation import FlatNetwork

try:
    from tcnsolve import _core
except ImportError:
    _core = None


def build_chain(n):
    d = DomainStore()
    cons = []
    d.declare("v0", itv(0, 3))
    ops = [TcnOp.ADD, TcnOp.MIN, TcnOp.MAX, TcnOp.ADD]
    for i in range(1, n):
        d.declare(f"v{i}", itv(-1000, 1000))
        cons.append(
            TernaryConstraint(f"v{i}", ops[i % 4], f"v{i-1}", f"v{max(0, i-2)}")
        )
    return TcnNetwork(d, cons, ())


def run(kernel, flat, repeats):
    best = float("inf")
    out = None
    for _ in range(repeats):
        lo, hi = flat.bounds()
        t0 = time.perf_counter()
        st = kernel.run_fixpoint(
            flat.ops, flat.xs, flat.ys, flat.zs,
            flat.wstart, flat.wlist, lo, hi, flat.max_revisions,
        )
        best = min(best, time.perf_counter() - t0)
        out = (st, lo, hi)
    return best, out


def main():
    n = int(sys.argv[1]) if len(sys.argv) > 1 else 20000
    repeats = int(sys.argv[2]) if len(sys.argv) > 2 else 3
    flat = FlatNetwork(build_chain(n))
    t_py, out_py = run(_core_py, flat, repeats)
    print(f"pure python: {t_py * 1000:9.2f} ms  ({n} vars, status {out_py[0]})")
    if _core is None:
        print("compiled kernel not available")
        return
    t_c, out_c = run(_core, flat, repeats)
    same = (
        out_py[0] == out_c[0]
        and np.array_equal(out_py[1], out_c[1])
        and np.array_equal(out_py[2], out_c[2])
    )
    print(f"compiled:    {t_c * 1000:9.2f} ms  (status {out_c[0]})")
    print(f"speedup:     {t_py / t_c:9.1f}x   results identical: {same}")


if __name__ == "__main__":
    main()
