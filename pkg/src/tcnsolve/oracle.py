"""Brute-force enumeration of solution sets: the reference the solver is
checked against.

Enumeration is the obvious cross product over finite domains. Networks
produced by decomposition carry auxiliary variables with infinite domains;
those are never enumerated. Instead each is derived functionally from a
constraint once its other operands are known (for x = y + z any two of the
three determine the third), and the derivation closure is iterated until
every variable has a value.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

from . import model as M
from .decompose import TcnNetwork, TcnOp, op_value, tcn_satisfies
from .errors import TooLarge, UnboundedVariable
from .intervals import contains, is_empty, is_finite, is_singleton, lub_size, values
from .model import SourceNetwork

DEFAULT_CAP = 10**7

Assignment = Dict[str, int]


@dataclass(frozen=True)
class SolutionSet:
    """Duplicate-free, canonically ordered list of total assignments."""

    variables: Tuple[str, ...]
    rows: Tuple[Tuple[int, ...], ...]

    @classmethod
    def from_assignments(
        cls, variables: Sequence[str], asns: Iterable[Assignment]
    ) -> "SolutionSet":
        variables = tuple(variables)
        rows = sorted({tuple(a[x] for x in variables) for a in asns})
        return cls(variables, tuple(rows))

    def __len__(self) -> int:
        return len(self.rows)

    def assignments(self) -> List[Assignment]:
        return [dict(zip(self.variables, r)) for r in self.rows]

    def restrict(self, variables: Sequence[str]) -> "SolutionSet":
        """Projection with dedup (the restriction A|_Y)."""
        idx = [self.variables.index(x) for x in variables]
        rows = sorted({tuple(r[i] for i in idx) for r in self.rows})
        return SolutionSet(tuple(variables), tuple(rows))


def _derive(op: TcnOp, x, y, z):
    """Fill in one missing slot of x = y op z, if it is determined.

    Returns a (slot, value) pair with slot in {"x", "y", "z"}, or None.
    """
    if x is None and y is not None and z is not None:
        v = op_value(op, y, z)
        return None if v is None else ("x", v)
    if op == TcnOp.ADD:
        if y is None and x is not None and z is not None:
            return ("y", x - z)
        if z is None and x is not None and y is not None:
            return ("z", x - y)
    return None


def _closure(net: TcnNetwork, asn: Dict[str, Optional[int]], missing: set) -> None:
    """Fill derivable slots of asn in place until no constraint fires."""
    progress = True
    while missing and progress:
        progress = False
        for c in net.constraints:
            got = _derive(c.op, asn.get(c.x), asn.get(c.y), asn.get(c.z))
            if got is None:
                continue
            slot, v = got
            var = {"x": c.x, "y": c.y, "z": c.z}[slot]
            if asn[var] is None:
                asn[var] = v
                missing.discard(var)
                progress = True


def _blocked_by_zero_divisor(net: TcnNetwork, asn) -> bool:
    """True when some undetermined result slot has an undefined op value."""
    for c in net.constraints:
        if asn.get(c.x) is None and asn.get(c.y) is not None:
            z = asn.get(c.z)
            if z is not None and op_value(c.op, asn[c.y], z) is None:
                return True
    return False


def _enumerate_tcn(net: TcnNetwork, cap: int) -> SolutionSet:
    d = net.domains
    names = list(d)
    if any(is_empty(i) for _, i in d.items()):
        return SolutionSet(tuple(names), ())
    # enumerate the declared base variables; derive the auxiliaries
    base = [x for x in (net.original_vars or names) if x in d]
    base += [x for x in names if x not in set(base) and is_singleton(d[x])]
    for x in base:
        if not is_finite(d[x]):
            raise UnboundedVariable(x)
    total = 1
    for x in base:
        total *= lub_size(d[x])
        if total > cap:
            raise TooLarge(f"cross product exceeds {cap}")

    sols: List[Assignment] = []
    budget = cap

    def finish(asn: Dict[str, Optional[int]], missing: set):
        nonlocal budget
        _closure(net, asn, missing)
        free_finite = [x for x in sorted(missing) if is_finite(d[x])]
        if free_finite:
            sub = 1
            for x in free_finite:
                sub *= lub_size(d[x])
            budget -= sub
            if budget < 0:
                raise TooLarge(f"cross product exceeds {cap}")
            rest = missing.difference(free_finite)
            for combo in itertools.product(*(values(d[x]) for x in free_finite)):
                a2 = dict(asn)
                a2.update(zip(free_finite, combo))
                finish(a2, set(rest))
            return
        if missing:
            if _blocked_by_zero_divisor(net, asn):
                return  # no extension can satisfy the blocked constraint
            raise UnboundedVariable(sorted(missing)[0])
        if any(not contains(d[x], asn[x]) for x in names):
            return
        if all(tcn_satisfies(asn, c) for c in net.constraints):
            sols.append(dict(asn))

    derived = [x for x in names if x not in set(base)]
    for combo in itertools.product(*(values(d[x]) for x in base)):
        asn: Dict[str, Optional[int]] = dict(zip(base, combo))
        for x in derived:
            asn[x] = None
        finish(asn, set(derived))
    return SolutionSet.from_assignments(tuple(names), sols)


def _enumerate_source(net: SourceNetwork, cap: int) -> SolutionSet:
    d = net.domains
    if any(is_empty(i) for _, i in d.items()):
        return SolutionSet(tuple(d), ())
    for x in d:
        if not is_finite(d[x]):
            raise UnboundedVariable(x)
    total = 1
    for x in d:
        total *= lub_size(d[x])
        if total > cap:
            raise TooLarge(f"cross product exceeds {cap}")
    names = list(d)
    sols = []
    for combo in itertools.product(*(values(d[x]) for x in names)):
        asn = dict(zip(names, combo))
        if all(M.satisfies(asn, c) for c in net.constraints):
            sols.append(asn)
    return SolutionSet.from_assignments(tuple(names), sols)


def enumerate_solutions(
    net: Union[SourceNetwork, TcnNetwork],
    variables: Optional[Sequence[str]] = None,
    cap: int = DEFAULT_CAP,
) -> SolutionSet:
    """Exact sol(d, C), optionally projected to `variables`."""
    if isinstance(net, TcnNetwork):
        s = _enumerate_tcn(net, cap)
    else:
        s = _enumerate_source(net, cap)
    if variables is not None:
        s = s.restrict(variables)
    return s


@dataclass
class Verdict:
    set_equal: bool
    count_equal: bool
    counterexample: Optional[Assignment] = None


def check_equivalence(
    a: Union[SourceNetwork, TcnNetwork],
    b: Union[SourceNetwork, TcnNetwork],
    project_to: Sequence[str],
    cap: int = DEFAULT_CAP,
) -> Verdict:
    """Compare full solution counts and projected solution sets of a and b."""
    sa = enumerate_solutions(a, cap=cap)
    sb = enumerate_solutions(b, cap=cap)
    count_equal = len(sa) == len(sb)
    pa = sa.restrict(project_to)
    pb = sb.restrict(project_to)
    set_equal = pa.rows == pb.rows
    witness = None
    if not set_equal:
        diff = set(pa.rows).symmetric_difference(pb.rows)
        row = sorted(diff)[0]
        witness = dict(zip(project_to, row))
    return Verdict(set_equal, count_equal, witness)
