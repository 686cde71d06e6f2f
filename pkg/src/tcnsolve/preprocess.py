"""Greatest-fixpoint simplification of a ternary constraint network.

The inner loop alternates root propagation, the algebraic rewrite table,
common subexpression elimination and class-wise domain merging until the
store and the partition stop moving.  Entailment elimination, renaming to
class representatives and useless-variable elimination then run exactly
once.

Three rewrite arms deliberately deviate from the obvious reading and were
settled by exhaustive enumeration (each arm is audited that way in the
tests):

* ``x = (x = 1)`` is satisfied by both 0 and 1, so x is clamped to [0,1]
  and the constraint dropped (not forced to 1);
* the modulus self-patterns ``x = x mod x`` (no solution at all) and
  ``0 = x mod x`` (equivalent to x != 0, kept unless a sign is known);
* ``x = (1 <= x)`` is a tautology only once x is within [0,1].
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from .decompose import (
    COMMUTATIVE,
    TcnNetwork,
    TernaryConstraint,
    TcnOp,
    constant_name,
    op_value,
)
from .equivalence import Partition, dom_E
from .intervals import (
    EMPTY,
    DomainStore,
    Itv,
    is_empty,
    is_finite,
    is_singleton,
    itv,
    singleton,
)
from .propagation import fixpoint


@dataclass
class Substitution:
    """Representative map plus the domains of dropped variables."""

    mapping: Dict[str, str]
    eliminated: Dict[str, Itv]
    original_vars: Tuple[str, ...]

    def __call__(self, x: str) -> str:
        return self.mapping.get(x, x)


@dataclass
class PreprocessReport:
    iterations: int = 0
    removed_simplified: int = 0
    removed_cse: int = 0
    removed_entailed: int = 0
    vars_eliminated: int = 0
    #: (stage, a, b) in event order; stage is "simplify" or "cse".
    merge_events: List[Tuple[str, str, str]] = field(default_factory=list)
    #: (old constraint, new constraint) pairs, in event order.
    rewrite_events: List[Tuple[TernaryConstraint, TernaryConstraint]] = field(
        default_factory=list
    )
    elapsed: float = 0.0


def nf(part: Partition, d: DomainStore, c: TernaryConstraint) -> TernaryConstraint:
    """Normal form: operand ordering, constant to the right, rep renaming."""
    y, z = c.y, c.z
    if c.op in COMMUTATIVE:
        if d.ordinal(y) > d.ordinal(z):
            y, z = z, y
        dy = dom_E(part, d, y)
        if is_singleton(dy):
            y, z = z, y
    return TernaryConstraint(
        part.representative(c.x),
        c.op,
        part.representative(y),
        part.representative(z),
    )


def _ensure_const(d: DomainStore, part: Partition, k: int) -> str:
    name = constant_name(k)
    if name not in d:
        d.declare(name, singleton(k))
    part.add(name)
    return name


def _const_val(part: Partition, d: DomainStore, v: str) -> Optional[int]:
    i = dom_E(part, d, v)
    if not is_empty(i) and i.lo == i.hi and is_finite(i):
        return i.lo
    return None


def simplify(
    d: DomainStore,
    constraints: List[TernaryConstraint],
    part: Partition,
    report: PreprocessReport,
) -> List[TernaryConstraint]:
    """One pass of the rewrite table over every constraint (in order)."""

    def merge(a, b):
        if part.merge(a, b):
            report.merge_events.append(("simplify", a, b))

    out: List[TernaryConstraint] = []
    for c0 in constraints:
        c = nf(part, d, c0)
        x, op, y, z = c.x, c.op, c.y, c.z
        ky = _const_val(part, d, y)
        kz = _const_val(part, d, z)
        kx = _const_val(part, d, x)
        drop = True  # most arms drop the constraint

        if op == TcnOp.ADD:
            if x == y or x == z:
                other = z if x == y else y
                d.update(other, singleton(0))
            elif kz == 0:
                merge(x, y)
            elif y == z:
                two = _ensure_const(d, part, 2)
                new = TernaryConstraint(x, TcnOp.MUL, y, two)
                report.rewrite_events.append((c, new))
                out.append(new)
                continue
            else:
                drop = False
        elif op == TcnOp.MUL:
            if x == y and x == z:
                d.update(x, itv(0, 1))
            elif x == y and kz is not None:
                if kz != 1:
                    d.update(x, singleton(0))
            elif kx is not None and y == z:
                r = math.isqrt(kx) if kx >= 0 else -1
                if r >= 0 and r * r == kx:
                    d.update(y, itv(-r, r))
                    drop = False
                else:
                    d.update(y, EMPTY)
            elif kz == 1:
                merge(x, y)
            else:
                drop = False
        elif op == TcnOp.DIV:
            if x == y and x == z:
                d.update(x, singleton(1))
            elif ky == 1 and z == x:
                d.update(x, itv(-1, 1))
                drop = False
            elif ky == 0 and z == x:
                d.update(x, EMPTY)
            elif kx is not None and y == z:
                if kx != 1:
                    d.update(y, EMPTY)
                else:
                    drop = False
            elif kz == 1:
                merge(x, y)
            else:
                drop = False
        elif op == TcnOp.MOD:
            if x == y and x == z:
                # needs x = x mod x = 0 yet a nonzero divisor: unsatisfiable
                d.update(x, EMPTY)
            elif kx == 0 and y == z:
                # equivalent to y != 0
                dy = dom_E(part, d, y)
                if dy.lo > 0 or dy.hi < 0 or is_empty(dy):
                    pass  # already excluded
                elif dy.lo == 0:
                    d.update(y, itv(1, dy.hi))
                elif dy.hi == 0:
                    d.update(y, itv(dy.lo, -1))
                else:
                    drop = False  # zero strictly inside; keep the constraint
            elif y == x and kz is not None:
                if kz == 0:
                    d.update(x, EMPTY)
                else:
                    d.update(x, itv(0, abs(kz) - 1))
            elif ky is not None and z == x:
                d.update(x, EMPTY)
            else:
                drop = False
        elif op in (TcnOp.MIN, TcnOp.MAX):
            if y == z and x != y:
                merge(x, y)
            elif y == z and x == y:
                pass  # x = min(x,x): tautology
            elif x == y or x == z:
                other = z if x == y else y
                one = _ensure_const(d, part, 1)
                if op == TcnOp.MIN:
                    new = TernaryConstraint(one, TcnOp.LE, x, other)
                else:
                    new = TernaryConstraint(one, TcnOp.LE, other, x)
                report.rewrite_events.append((c, new))
                out.append(new)
                continue
            else:
                drop = False
        elif op == TcnOp.EQ:
            if kx == 1 and y != z:
                merge(y, z)
            elif y == z:
                d.update(x, singleton(1))
            elif x == y and kz is not None:
                if kz == 0:
                    d.update(x, EMPTY)
                elif kz == 1:
                    d.update(x, itv(0, 1))
                else:
                    d.update(x, singleton(0))
            else:
                drop = False
        elif op == TcnOp.LE:
            if y == z:
                d.update(x, singleton(1))
            elif x == y and kz is not None:
                if kz == 0:
                    d.update(x, EMPTY)
                elif kz > 0:
                    d.update(x, singleton(1))
                else:
                    d.update(x, singleton(0))
            elif ky is not None and z == x:
                if ky == 1:
                    dx = dom_E(part, d, x)
                    if not (0 <= dx.lo and dx.hi <= 1):
                        d.update(x, itv(0, 1))
                elif ky < 1:
                    d.update(x, singleton(1))
                else:
                    d.update(x, singleton(0))
            else:
                drop = False
        else:
            drop = False

        if drop:
            report.removed_simplified += 1
        else:
            out.append(c)
    return out


def icse(
    d: DomainStore,
    constraints: List[TernaryConstraint],
    part: Partition,
    report: PreprocessReport,
) -> Tuple[List[TernaryConstraint], bool]:
    """One hashed pass of common subexpression elimination.

    Constraints with the same operator and (up to commutativity) the same
    operand classes collapse to one; their result classes merge.
    """
    seen: Dict[tuple, TernaryConstraint] = {}
    out: List[TernaryConstraint] = []
    changed = False
    for c in constraints:
        ry = part.representative(c.y)
        rz = part.representative(c.z)
        if c.op in COMMUTATIVE and d.ordinal(ry) > d.ordinal(rz):
            key = (int(c.op), rz, ry)
        else:
            key = (int(c.op), ry, rz)
        kept = seen.get(key)
        if kept is None:
            seen[key] = c
            out.append(c)
        else:
            if part.merge(c.x, kept.x):
                report.merge_events.append(("cse", c.x, kept.x))
            report.removed_cse += 1
            changed = True
    return out, changed


def is_entailed(d: DomainStore, c: TernaryConstraint) -> bool:
    """Sound, conservative check that every assignment within d satisfies c.

    Returns False whenever the store has an empty domain (the caller deals
    with the vacuous case).
    """
    if d.has_empty():
        return False
    dx, dy, dz = d[c.x], d[c.y], d[c.z]
    if is_singleton(dx) and is_singleton(dy) and is_singleton(dz):
        v = op_value(c.op, dy.lo, dz.lo)
        return v is not None and v == dx.lo
    if c.op == TcnOp.LE:
        if dx == singleton(1) and dy.hi <= dz.lo:
            return True
        if dx == singleton(0) and dy.lo > dz.hi:
            return True
    elif c.op == TcnOp.EQ:
        if dx == singleton(0) and (dy.lo > dz.hi or dz.lo > dy.hi):
            return True
        if dx == singleton(1) and is_singleton(dy) and dy == dz:
            return True
    return False


MAX_OUTER_ITERATIONS = 1000


def preprocess(
    net: TcnNetwork,
) -> Tuple[TcnNetwork, Substitution, PreprocessReport]:
    """Run the whole pipeline; the input network is not modified."""
    t0 = time.perf_counter()
    d = net.domains.copy()
    constraints = list(net.constraints)
    part = Partition.init(d)
    report = PreprocessReport()

    while True:
        snapshot = dict(d.items())
        classes_before = part.classes_count
        d = fixpoint(d, constraints)
        constraints = simplify(d, constraints, part, report)
        while True:
            constraints, moved = icse(d, constraints, part, report)
            if not moved:
                break
        for x in d:
            d.set(x, dom_E(part, d, x))
        report.iterations += 1
        if (
            dict(d.items()) == snapshot
            and part.classes_count == classes_before
        ) or report.iterations >= MAX_OUTER_ITERATIONS:
            break

    # entailed constraint elimination (vacuously all of them on a failed net)
    if d.has_empty():
        report.removed_entailed += len(constraints)
        constraints = []
    else:
        kept = [c for c in constraints if not is_entailed(d, c)]
        report.removed_entailed += len(constraints) - len(kept)
        constraints = kept

    # rename through the representatives
    mapping = {x: part.representative(x) for x in d}
    constraints = [
        TernaryConstraint(mapping[c.x], c.op, mapping[c.y], mapping[c.z])
        for c in constraints
    ]

    # useless variable elimination
    used = set()
    for c in constraints:
        used.update((c.x, c.y, c.z))
    if d.has_empty():
        # a failed store is canonically all-empty; the original variables'
        # representatives are enough to witness the failure
        originals = {mapping[x] for x in net.original_vars}
        keep = [x for x in d if x in used or x in originals]
    else:
        keep = [x for x in d if x in used or is_empty(d[x])]
    eliminated = {x: d[x] for x in d if x not in set(keep)}
    report.vars_eliminated = len(eliminated)
    d2 = d.restricted(keep)
    if d.has_empty():
        # emptiness may sit on any class; make the failure canonical so the
        # kept variables witness it regardless of where it was detected
        for x in d2:
            d2.set(x, itv(1, 0))

    sub = Substitution(mapping, eliminated, net.original_vars)
    out = TcnNetwork(
        d2, constraints, tuple(x for x in net.original_vars if x in d2)
    )
    report.elapsed = time.perf_counter() - t0
    return out, sub, report
