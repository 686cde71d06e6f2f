"""Source-level expression AST and the input constraint network.

The reference evaluator here defines the meaning of every construct; the
brute-force oracle and every equivalence test are built on it.  Arithmetic is
truncated integer division and Euclidean modulus.  Division or modulus by
zero makes the whole enclosing constraint unsatisfied (relational semantics):
`eval` returns the in-band UNDEFINED marker, which propagates to the root,
and `satisfies` treats it as false.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import FrozenSet, Mapping, Optional, Tuple, Union

from .errors import EmptySet
from .intervals import DomainStore, Itv, itv

ARITH_OPS = ("+", "-", "*", "/", "mod", "min", "max")
CMP_OPS = ("=", "!=", "<=", "<", ">=", ">")


@dataclass(frozen=True)
class Var:
    id: str


@dataclass(frozen=True)
class Const:
    k: int


@dataclass(frozen=True)
class Neg:
    t: "Expr"


@dataclass(frozen=True)
class Abs:
    t: "Expr"


@dataclass(frozen=True)
class Member:
    t: "Expr"
    s: FrozenSet[int]

    def __post_init__(self):
        if not self.s:
            raise EmptySet("membership set must be non-empty")


@dataclass(frozen=True)
class Bin:
    op: str  # one of + - * / mod min max
    a: "Expr"
    b: "Expr"


@dataclass(frozen=True)
class Cmp:
    op: str  # one of = != <= < >= >
    a: "Expr"
    b: "Expr"


@dataclass(frozen=True)
class Not:
    t: "Expr"


@dataclass(frozen=True)
class And:
    a: "Expr"
    b: "Expr"


@dataclass(frozen=True)
class Or:
    a: "Expr"
    b: "Expr"


@dataclass(frozen=True)
class Implies:
    a: "Expr"
    b: "Expr"


@dataclass(frozen=True)
class Iff:
    a: "Expr"
    b: "Expr"


@dataclass(frozen=True)
class Xor:
    a: "Expr"
    b: "Expr"


Expr = Union[Var, Const, Neg, Abs, Member, Bin, Cmp, Not, And, Or, Implies, Iff, Xor]

SATISFY = ("satisfy", None)


@dataclass
class SourceNetwork:
    domains: DomainStore
    constraints: list  # list[Expr], each Boolean-valued at top level
    objective: Tuple[str, Optional[str]] = SATISFY

    @property
    def variables(self) -> Tuple[str, ...]:
        return tuple(self.domains)


def scope(t: Expr) -> FrozenSet[str]:
    """The set of variable ids occurring in t."""
    if isinstance(t, Var):
        return frozenset((t.id,))
    if isinstance(t, Const):
        return frozenset()
    if isinstance(t, (Neg, Abs, Not)):
        return scope(t.t)
    if isinstance(t, Member):
        return scope(t.t)
    if isinstance(t, (Bin, Cmp, And, Or, Implies, Iff, Xor)):
        return scope(t.a) | scope(t.b)
    raise TypeError(f"not an expression: {t!r}")


def itvs(s) -> list:
    """Decompose a finite integer set into maximal disjoint intervals.

    The result is ascending, pairwise disjoint, with no two intervals
    adjacent, and its union is exactly the input set.
    """
    vals = sorted(set(s))
    if not vals:
        raise EmptySet("itvs of the empty set")
    out = []
    lo = hi = vals[0]
    for v in vals[1:]:
        if v == hi + 1:
            hi = v
        else:
            out.append(itv(lo, hi))
            lo = hi = v
    out.append(itv(lo, hi))
    return out


def tdiv(a: int, b: int) -> int:
    """Integer division truncating toward zero."""
    q = a // b
    if q < 0 and q * b != a:
        q += 1
    return q


def emod(a: int, b: int) -> int:
    """Euclidean modulus: result is in [0, |b| - 1]."""
    return a % abs(b)


class _Undefined:
    __slots__ = ()

    def __repr__(self):
        return "UNDEFINED"


#: In-band marker for a division/modulus by zero somewhere under the node.
UNDEFINED = _Undefined()


def eval_expr(asn: Mapping[str, int], t: Expr):
    """Evaluate t under a total assignment; Boolean nodes yield 1/0.

    Returns an int or UNDEFINED.  UNDEFINED is strict: it propagates through
    every node, so an assignment hitting a zero divisor anywhere in a
    constraint never satisfies that constraint.
    """
    if isinstance(t, Var):
        return asn[t.id]
    if isinstance(t, Const):
        return t.k
    if isinstance(t, Neg):
        v = eval_expr(asn, t.t)
        return UNDEFINED if v is UNDEFINED else -v
    if isinstance(t, Abs):
        v = eval_expr(asn, t.t)
        return UNDEFINED if v is UNDEFINED else abs(v)
    if isinstance(t, Member):
        v = eval_expr(asn, t.t)
        if v is UNDEFINED:
            return UNDEFINED
        return 1 if v in t.s else 0
    if isinstance(t, Bin):
        a = eval_expr(asn, t.a)
        b = eval_expr(asn, t.b)
        if a is UNDEFINED or b is UNDEFINED:
            return UNDEFINED
        if t.op == "+":
            return a + b
        if t.op == "-":
            return a - b
        if t.op == "*":
            return a * b
        if t.op == "/":
            return UNDEFINED if b == 0 else tdiv(a, b)
        if t.op == "mod":
            return UNDEFINED if b == 0 else emod(a, b)
        if t.op == "min":
            return min(a, b)
        if t.op == "max":
            return max(a, b)
        raise ValueError(f"unknown arithmetic op {t.op!r}")
    if isinstance(t, Cmp):
        a = eval_expr(asn, t.a)
        b = eval_expr(asn, t.b)
        if a is UNDEFINED or b is UNDEFINED:
            return UNDEFINED
        if t.op == "=":
            return int(a == b)
        if t.op == "!=":
            return int(a != b)
        if t.op == "<=":
            return int(a <= b)
        if t.op == "<":
            return int(a < b)
        if t.op == ">=":
            return int(a >= b)
        if t.op == ">":
            return int(a > b)
        raise ValueError(f"unknown comparison {t.op!r}")
    if isinstance(t, Not):
        v = eval_expr(asn, t.t)
        return UNDEFINED if v is UNDEFINED else int(v == 0)
    if isinstance(t, (And, Or, Implies, Iff, Xor)):
        a = eval_expr(asn, t.a)
        b = eval_expr(asn, t.b)
        if a is UNDEFINED or b is UNDEFINED:
            return UNDEFINED
        ta, tb = a != 0, b != 0
        if isinstance(t, And):
            return int(ta and tb)
        if isinstance(t, Or):
            return int(ta or tb)
        if isinstance(t, Implies):
            return int((not ta) or tb)
        if isinstance(t, Iff):
            return int(ta == tb)
        return int(ta != tb)
    raise TypeError(f"not an expression: {t!r}")


def satisfies(asn: Mapping[str, int], c: Expr) -> bool:
    """True iff the assignment satisfies the top-level constraint c."""
    v = eval_expr(asn, c)
    return v is not UNDEFINED and v != 0
