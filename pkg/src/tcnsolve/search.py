"""Depth-first branch-and-bound over ternary constraint networks.

The search works on the flat array form. Every node copies the bound
arrays (pass-by-value at branch points), propagates to a fixpoint, and
either records an assignment, fails, or splits the smallest non-singleton
domain. Minimization tightens the objective upper bound to one below the
incumbent at every node.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

import numpy as np

from .decompose import Builder, TcnNetwork, TcnOp, TernaryConstraint, tcn
from .errors import NothingToSplit, UnboundedVariable
from .intervals import (
    NEG_INF,
    POS_INF,
    DomainStore,
    is_empty,
    is_finite,
    is_singleton,
    itv,
    lub_size,
    values,
)
from .model import SourceNetwork
from .preprocess import Substitution, preprocess
from .propagation import FlatNetwork


@dataclass
class SearchStats:
    nodes: int = 0
    fails: int = 0
    peak_depth: int = 0
    elapsed: float = 0.0


@dataclass
class SolveResult:
    status: str  # OPTIMAL | SAT | UNSAT | UNKNOWN
    best: Optional[Dict[str, int]] = None
    objective: Optional[int] = None
    stats: SearchStats = field(default_factory=SearchStats)
    solutions: List[Dict[str, int]] = field(default_factory=list)


def split(d: DomainStore) -> List[DomainStore]:
    """Two children covering d: smallest non-singleton domain, halved.

    Ties break toward the earliest-declared variable; the lower half
    comes first.
    """
    best = None
    best_size = None
    for x, i in d.items():
        if is_empty(i) or is_singleton(i):
            continue
        if not is_finite(i):
            raise UnboundedVariable(x)
        sz = lub_size(i)
        if best is None or sz < best_size:
            best, best_size = x, sz
    if best is None:
        raise NothingToSplit("all domains are singletons")
    i = d[best]
    mid = (i.lo + i.hi) // 2
    left, right = d.copy(), d.copy()
    left.set(best, itv(i.lo, mid))
    right.set(best, itv(mid + 1, i.hi))
    return [left, right]


def _pick_value(lo: int, hi: int) -> int:
    """A representative member of a (possibly infinite) nonempty interval."""
    if lo > NEG_INF:
        return lo
    if hi < POS_INF:
        return hi
    return 0


def project_solution(
    solution: Dict[str, int], sub: Optional[Substitution], original_vars
) -> Dict[str, int]:
    """Map a solved store back to original-variable values."""
    out: Dict[str, int] = {}
    for x in original_vars:
        r = sub(x) if sub is not None else x
        if r in solution:
            out[x] = solution[r]
        elif sub is not None and r in sub.eliminated:
            i = sub.eliminated[r]
            out[x] = _pick_value(i.lo, i.hi)
        else:
            out[x] = 0
    return out


def expand_solutions(
    base: List[Dict[str, int]], sub: Optional[Substitution], original_vars
) -> List[Dict[str, int]]:
    """All projections of `base`, enumerating eliminated finite domains."""
    if sub is None:
        return [dict((x, s[x]) for x in original_vars) for s in base]
    free = []
    for x in original_vars:
        r = sub(x)
        if r in sub.eliminated and r not in free:
            free.append(r)
    for r in free:
        if not is_finite(sub.eliminated[r]):
            raise UnboundedVariable(r)
    out: List[Dict[str, int]] = []
    seen = set()
    for s in base:
        for combo in itertools.product(*(values(sub.eliminated[r]) for r in free)):
            full = dict(s)
            full.update(zip(free, combo))
            proj = {}
            for x in original_vars:
                r = sub(x)
                proj[x] = full[r] if r in full else 0
            key = tuple(sorted(proj.items()))
            if key not in seen:
                seen.add(key)
                out.append(proj)
    return out


def _with_negated(net: TcnNetwork, z: str) -> Tuple[TcnNetwork, str]:
    """Network extended with z' such that 0 = z' + z; returns (net', z')."""
    d = net.domains.copy()
    b = Builder(d)
    zero = b.extend_const(0)
    zp = b.fresh()
    d.declare(zp, itv(NEG_INF, POS_INF))
    cons = list(net.constraints)
    cons.append(TernaryConstraint(zero, TcnOp.ADD, zp, z))
    return TcnNetwork(d, cons, net.original_vars), zp


def solve(
    net: TcnNetwork,
    objective=("satisfy", None),
    sub: Optional[Substitution] = None,
    all_solutions: bool = False,
    timeout: Optional[float] = None,
) -> SolveResult:
    """Search the network; solutions come back over the original variables."""
    t0 = time.perf_counter()
    sense, obj_var = objective
    original_vars = (
        sub.original_vars if sub is not None else net.original_vars or tuple(net.domains)
    )
    stats = SearchStats()

    def done(status, best=None, objv=None, sols=()):
        stats.elapsed = time.perf_counter() - t0
        return SolveResult(status, best, objv, stats, list(sols))

    fixed_obj = None
    negate_obj = False
    if sense in ("minimize", "maximize") and obj_var is not None:
        r = sub(obj_var) if sub is not None else obj_var
        if r not in net.domains:
            # objective variable was unconstrained and eliminated
            i = sub.eliminated[r]
            if (sense == "minimize" and i.lo <= NEG_INF) or (
                sense == "maximize" and i.hi >= POS_INF
            ):
                raise UnboundedVariable(obj_var)
            fixed_obj = i.lo if sense == "minimize" else i.hi
            sense = "satisfy"
        elif sense == "maximize":
            net, r = _with_negated(net, r)
            sense = "minimize"
            negate_obj = True
        obj_var_net = None if fixed_obj is not None else r
    else:
        sense = "satisfy"
        obj_var_net = None

    flat = FlatNetwork(net)
    lo, hi = flat.bounds()
    if bool((lo > hi).any()):
        return done("UNSAT")

    obj_i = flat.index[obj_var_net] if sense == "minimize" else None
    scope = set()
    for c in net.constraints:
        scope.update((c.x, c.y, c.z))
    if obj_var_net is not None:
        scope.add(obj_var_net)

    deadline = None if timeout is None else t0 + timeout
    best_val = None
    best_sol: Optional[Dict[str, int]] = None
    base_solutions: List[Dict[str, int]] = []
    stack = [(lo, hi, 0)]
    gated = False
    status = None

    while stack:
        if deadline is not None and time.perf_counter() >= deadline:
            status = "UNKNOWN"
            break
        lo, hi, depth = stack.pop()
        if obj_i is not None and best_val is not None:
            hi[obj_i] = min(hi[obj_i], best_val - 1)
            if lo[obj_i] > hi[obj_i]:
                continue
        stats.nodes += 1
        stats.peak_depth = max(stats.peak_depth, depth)
        st = flat.propagate(lo, hi)
        if st == 1 or bool((lo > hi).any()):
            stats.fails += 1
            continue
        if not gated:
            gated = True
            for v in scope:
                i = flat.index[v]
                if lo[i] <= NEG_INF or hi[i] >= POS_INF:
                    raise UnboundedVariable(v)
            if all_solutions:
                bad = (lo <= NEG_INF) | (hi >= POS_INF)
                if bool(bad.any()):
                    raise UnboundedVariable(flat.vars[int(np.argmax(bad))])
        # decision variables: every finite-domain variable
        decide = (lo > NEG_INF) & (hi < POS_INF)
        open_ = decide & (lo < hi)
        if not bool(open_.any()):
            asn = {
                flat.vars[i]: int(lo[i]) if decide[i] else _pick_value(int(lo[i]), int(hi[i]))
                for i in range(len(flat.vars))
            }
            if sense == "minimize":
                best_val = asn[obj_var_net]
                best_sol = asn
                continue
            base_solutions.append(asn)
            if not all_solutions:
                status = "SAT"
                break
            continue
        widths = np.where(open_, hi - lo, np.iinfo(np.int64).max)
        v = int(np.argmin(widths))
        mid = (int(lo[v]) + int(hi[v])) // 2
        llo, lhi = lo.copy(), hi.copy()
        rlo, rhi = lo.copy(), hi.copy()
        lhi[v] = mid
        rlo[v] = mid + 1
        stack.append((rlo, rhi, depth + 1))
        stack.append((llo, lhi, depth + 1))

    def objv():
        v = best_sol[obj_var_net]
        return -v if negate_obj else v

    if status == "UNKNOWN":
        if best_sol is not None:
            proj = project_solution(best_sol, sub, original_vars)
            return done("UNKNOWN", proj, objv(), [proj])
        return done("UNKNOWN")
    if sense == "minimize":
        if best_sol is None:
            return done("UNSAT")
        proj = project_solution(best_sol, sub, original_vars)
        return done("OPTIMAL", proj, objv(), [proj])
    if not base_solutions:
        return done("UNSAT")
    sat_status = "OPTIMAL" if fixed_obj is not None else "SAT"
    if all_solutions:
        sols = expand_solutions(base_solutions, sub, original_vars)
        return done(sat_status, sols[0], fixed_obj, sols)
    proj = project_solution(base_solutions[0], sub, original_vars)
    return done(sat_status, proj, fixed_obj, [proj])


def solve_model(
    src: SourceNetwork,
    use_preprocess: bool = True,
    all_solutions: bool = False,
    timeout: Optional[float] = None,
) -> Tuple[SolveResult, TcnNetwork, Optional[Substitution]]:
    """Compile, optionally preprocess, and search a source network."""
    net = tcn(src)
    sub = None
    if use_preprocess:
        net, sub, _ = preprocess(net)
    res = solve(
        net,
        src.objective,
        sub=sub,
        all_solutions=all_solutions,
        timeout=timeout,
    )
    return res, net, sub
