"""Bounds-consistency propagation: per-constraint revision and fixpoints.

Two layers:

* a store-level API (`propagate_one`, `fixpoint`) working on DomainStore and
  TernaryConstraint values, convenient for preprocessing and tests, with a
  pluggable worklist schedule;
* a flat array form (`FlatNetwork`) whose fixpoint runs inside the selected
  kernel; search uses this one.
"""

from __future__ import annotations

import random
from collections import deque
from typing import Iterable, List, Sequence, Set, Tuple

import numpy as np

from . import kernel
from .decompose import TcnNetwork, TernaryConstraint
from .intervals import DomainStore, Itv, is_empty, itv

#: Revision budget multiplier guarding against unbounded shrink chains on
#: infinite domains (e.g. x = x + 1 over [0, inf]); sound to stop early.
DEFAULT_REVISION_FACTOR = 4096


def propagate_one(
    c: TernaryConstraint, d: DomainStore
) -> Tuple[DomainStore, Set[str]]:
    """Apply one revision of c; returns the new store and the changed ids."""
    dx, dy, dz = d[c.x], d[c.y], d[c.z]
    res = kernel.revise(
        int(c.op), dx.lo, dx.hi, dy.lo, dy.hi, dz.lo, dz.hi
    )
    d2 = d.copy()
    changed: Set[str] = set()
    for var, nl, nh in ((c.x, res[0], res[1]), (c.y, res[2], res[3]), (c.z, res[4], res[5])):
        cur = d2[var]
        new = itv(max(cur.lo, nl), min(cur.hi, nh)) if not is_empty(cur) else cur
        if nl > nh:
            new = itv(1, 0)
        if new != cur:
            d2.set(var, new)
            changed.add(var)
    return d2, changed


def fixpoint(
    d: DomainStore,
    constraints: Sequence[TernaryConstraint],
    schedule: str = "fifo",
    rng: random.Random = None,
    max_revisions: int = None,
) -> DomainStore:
    """Greatest fixpoint of all propagators below d (store-level engine).

    The schedule ("fifo", "lifo", "random") only affects the iteration
    order, never the result; the random schedule needs an `rng`.  An
    inconsistent store comes back in canonical form (every domain empty),
    so failure too is schedule-independent.
    """
    if schedule not in ("fifo", "lifo", "random"):
        raise ValueError(f"unknown schedule {schedule!r}")
    d = d.copy()
    n = len(constraints)
    if max_revisions is None:
        max_revisions = max(1000, DEFAULT_REVISION_FACTOR * max(n, 1))
    watchers = {}
    for i, c in enumerate(constraints):
        for v in (c.x, c.y, c.z):
            watchers.setdefault(v, []).append(i)
    pending = deque(range(n))
    in_queue = [True] * n
    if schedule == "random" and rng is None:
        rng = random.Random(0)
    revs = 0
    while pending:
        if revs >= max_revisions:
            break
        if schedule == "fifo":
            ci = pending.popleft()
        elif schedule == "lifo":
            ci = pending.pop()
        elif schedule == "random":
            k = rng.randrange(len(pending))
            pending[k], pending[-1] = pending[-1], pending[k]
            ci = pending.pop()
        else:
            raise ValueError(f"unknown schedule {schedule!r}")
        in_queue[ci] = False
        revs += 1
        d, changed = propagate_one(constraints[ci], d)
        if any(is_empty(d[v]) for v in changed):
            for v in d:
                d.set(v, itv(1, 0))
            break
        for v in changed:
            for cj in watchers.get(v, ()):
                if not in_queue[cj]:
                    in_queue[cj] = True
                    pending.append(cj)
    return d


class FlatNetwork:
    """Array form of a TCN for the kernel fixpoint: indices, ops, watchers."""

    def __init__(self, net: TcnNetwork):
        self.vars: List[str] = list(net.domains)
        self.index = {x: i for i, x in enumerate(self.vars)}
        n = len(net.constraints)
        m = len(self.vars)
        self.ops = np.empty(n, dtype=np.int32)
        self.xs = np.empty(n, dtype=np.int32)
        self.ys = np.empty(n, dtype=np.int32)
        self.zs = np.empty(n, dtype=np.int32)
        counts = np.zeros(m + 1, dtype=np.int32)
        for i, c in enumerate(net.constraints):
            self.ops[i] = int(c.op)
            self.xs[i] = self.index[c.x]
            self.ys[i] = self.index[c.y]
            self.zs[i] = self.index[c.z]
            for vi in (self.xs[i], self.ys[i], self.zs[i]):
                counts[vi + 1] += 1
        self.wstart = np.cumsum(counts).astype(np.int32)
        self.wlist = np.empty(int(self.wstart[-1]), dtype=np.int32)
        fill = self.wstart[:-1].copy()
        for i in range(n):
            for vi in (self.xs[i], self.ys[i], self.zs[i]):
                self.wlist[fill[vi]] = i
                fill[vi] += 1
        self.lo0 = np.empty(m, dtype=np.int64)
        self.hi0 = np.empty(m, dtype=np.int64)
        for i, x in enumerate(self.vars):
            iv = net.domains[x]
            self.lo0[i] = iv.lo
            self.hi0[i] = iv.hi
        self.max_revisions = max(1000, DEFAULT_REVISION_FACTOR * max(n, 1))

    def bounds(self) -> Tuple[np.ndarray, np.ndarray]:
        return self.lo0.copy(), self.hi0.copy()

    def propagate(self, lo: np.ndarray, hi: np.ndarray) -> int:
        """Kernel fixpoint in place; 0 = fixpoint, 1 = empty, 2 = budget."""
        return kernel.run_fixpoint(
            self.ops, self.xs, self.ys, self.zs,
            self.wstart, self.wlist, lo, hi, self.max_revisions,
        )

    def store(self, lo: np.ndarray, hi: np.ndarray) -> DomainStore:
        d = DomainStore()
        for i, x in enumerate(self.vars):
            d.declare(x, itv(int(lo[i]), int(hi[i])))
        return d


def root_fixpoint(net: TcnNetwork, schedule: str = "fifo") -> DomainStore:
    """Store-level fixpoint of a whole network from its declared domains."""
    return fixpoint(net.domains, net.constraints, schedule=schedule)
