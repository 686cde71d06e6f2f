"""Lowering of a source network into a ternary constraint network.

Every constraint of the output has the shape ``x = y (.) z`` with the
operator drawn from {add, mul, div, mod, min, max, eq, le}.  The rewriting
introduces auxiliary variables (``__aux_<n>``) and one shared variable per
distinct constant (``__CONSTANT_5``, ``__CONSTANT_m1`` for -5 and -1 style
naming of negatives).  Conjunction lowers to min, disjunction to max, and
equivalence to a reified equality; operands in Boolean context are first
squeezed into [0,1] by reifying ``t != 0`` unless their domain already fits.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import List, NamedTuple, Tuple

from .errors import DuplicateVariable
from .intervals import (
    POS_INF,
    DomainStore,
    Itv,
    itv,
    render,
    singleton,
    TOP,
)
from . import model as M


class TcnOp(enum.IntEnum):
    ADD = 0
    MUL = 1
    DIV = 2
    MOD = 3
    MIN = 4
    MAX = 5
    EQ = 6
    LE = 7

    @property
    def token(self) -> str:
        return _TOKENS[self]


_TOKENS = {
    TcnOp.ADD: "add",
    TcnOp.MUL: "mul",
    TcnOp.DIV: "div",
    TcnOp.MOD: "mod",
    TcnOp.MIN: "min",
    TcnOp.MAX: "max",
    TcnOp.EQ: "eq",
    TcnOp.LE: "le",
}

TOKEN_TO_OP = {tok: op for op, tok in _TOKENS.items()}

#: Commutative operators (nf ordering and CSE matching rely on this set).
COMMUTATIVE = frozenset((TcnOp.ADD, TcnOp.MUL, TcnOp.MIN, TcnOp.MAX, TcnOp.EQ))

#: Operators whose result variable is Boolean.
BOOLEAN_RESULT = frozenset((TcnOp.EQ, TcnOp.LE))

BOOL = itv(0, 1)


class TernaryConstraint(NamedTuple):
    """Reads as ``x = y op z``."""

    x: str
    op: TcnOp
    y: str
    z: str

    def render(self) -> str:
        return f"con {self.x} = {self.y} {self.op.token} {self.z};"


@dataclass
class TcnNetwork:
    domains: DomainStore
    constraints: List[TernaryConstraint]
    original_vars: Tuple[str, ...] = ()


def constant_name(k: int) -> str:
    return f"__CONSTANT_m{-k}" if k < 0 else f"__CONSTANT_{k}"


class Builder:
    """Stateful rewriting context: a store plus a fresh-name counter."""

    def __init__(self, domains: DomainStore):
        self.d = domains
        self.counter = 0

    def fresh(self) -> str:
        while True:
            name = f"__aux_{self.counter}"
            self.counter += 1
            if name not in self.d:
                return name

    def extend(self, name: str = None, interval: Itv = TOP) -> str:
        if name is None:
            name = self.fresh()
        elif name in self.d:
            raise DuplicateVariable(name)
        self.d.declare(name, interval)
        return name

    def extend_bool(self) -> str:
        return self.extend(interval=BOOL)

    def extend_const(self, k: int) -> str:
        name = constant_name(k)
        if name not in self.d:
            self.d.declare(name, singleton(k))
        return name

    def update(self, x: str, interval: Itv) -> None:
        self.d.update(x, interval)


# Expression shorthands used by the recursive rewriting below.
def _ge(a, b):
    return M.Cmp(">=", a, b)


def _le(a, b):
    return M.Cmp("<=", a, b)


_BIN_OPS = {
    "+": TcnOp.ADD,
    "*": TcnOp.MUL,
    "/": TcnOp.DIV,
    "mod": TcnOp.MOD,
    "min": TcnOp.MIN,
    "max": TcnOp.MAX,
}

_CMP_OPS = {"=": TcnOp.EQ, "<=": TcnOp.LE}


def tc(
    b: Builder, t: M.Expr, out: List[TernaryConstraint], enforced: bool = True
) -> str:
    """Rewrite t, appending ternary constraints; returns the result variable.

    `enforced` is true only where t's truth is guaranteed by the context
    (a top-level constraint, or a conjunct of an enforced conjunction).  The
    membership hull update is applied only then: it is implied by a
    membership that must hold, but would cut solutions from a reified one.
    """
    if isinstance(t, M.Var):
        return t.id
    if isinstance(t, M.Const):
        return b.extend_const(t.k)
    if isinstance(t, M.Neg):
        return tc(b, M.Bin("-", M.Const(0), t.t), out, False)
    if isinstance(t, M.Member):
        x = tc(b, t.t, out, False)
        parts = M.itvs(t.s)
        if enforced:
            b.update(x, itv(parts[0].lo, parts[-1].hi))
        disj = None
        for p in parts:
            conj = M.And(_ge(M.Var(x), M.Const(p.lo)), _le(M.Var(x), M.Const(p.hi)))
            disj = conj if disj is None else M.Or(disj, conj)
        return tc(b, disj, out, enforced)
    if isinstance(t, M.Abs):
        x = tc(b, t.t, out, False)
        y = tc(b, M.Bin("-", M.Const(0), M.Var(x)), out, False)
        z = tc(b, M.Bin("max", M.Var(x), M.Var(y)), out, False)
        b.update(z, itv(0, POS_INF))
        return z
    if isinstance(t, M.Bin):
        if t.op == "-":
            # y = t1, z = t2, fresh x: the relation is y = x + z.
            x = b.extend()
            y = tc(b, t.a, out, False)
            z = tc(b, t.b, out, False)
            out.append(TernaryConstraint(y, TcnOp.ADD, x, z))
            return x
        op = _BIN_OPS[t.op]
        x = b.extend()
        y = tc(b, t.a, out, False)
        z = tc(b, t.b, out, False)
        out.append(TernaryConstraint(x, op, y, z))
        return x
    if isinstance(t, M.Cmp):
        if t.op in _CMP_OPS:
            op = _CMP_OPS[t.op]
            x = b.extend_bool()
            y = tc(b, t.a, out, False)
            z = tc(b, t.b, out, False)
            out.append(TernaryConstraint(x, op, y, z))
            return x
        if t.op == ">=":
            return tc(b, _le(t.b, t.a), out, enforced)
        if t.op == ">":
            return tc(b, _le(t.b, M.Bin("-", t.a, M.Const(1))), out, enforced)
        if t.op == "<":
            return tc(b, _le(t.a, M.Bin("-", t.b, M.Const(1))), out, enforced)
        if t.op == "!=":
            zero = b.extend_const(0)
            return tc(b, M.Iff(M.Var(zero), M.Cmp("=", t.a, t.b)), out, False)
        raise ValueError(f"unknown comparison {t.op!r}")
    if isinstance(t, M.Not):
        return tc(b, M.Cmp("=", t.t, M.Const(0)), out, False)
    if isinstance(t, M.Implies):
        return tc(b, M.Or(M.Not(t.a), t.b), out, enforced)
    if isinstance(t, (M.And, M.Or, M.Iff)):
        bb = b.extend_bool()
        sub = enforced and isinstance(t, M.And)
        b1 = booleanize(b, t.a, out, sub)
        b2 = booleanize(b, t.b, out, sub)
        if isinstance(t, M.And):
            out.append(TernaryConstraint(bb, TcnOp.MIN, b1, b2))
        elif isinstance(t, M.Or):
            out.append(TernaryConstraint(bb, TcnOp.MAX, b1, b2))
        else:
            out.append(TernaryConstraint(bb, TcnOp.EQ, b1, b2))
        return bb
    if isinstance(t, M.Xor):
        b1 = booleanize(b, t.a, out, False)
        b2 = booleanize(b, t.b, out, False)
        return tc(b, M.Cmp("!=", M.Var(b1), M.Var(b2)), out, False)
    raise TypeError(f"not an expression: {t!r}")


def booleanize(
    b: Builder, t: M.Expr, out: List[TernaryConstraint], enforced: bool = False
) -> str:
    """Result variable of t, coerced into [0,1] when not already Boolean."""
    x = tc(b, t, out, enforced)
    dom = b.d[x]
    if 0 <= dom.lo and dom.hi <= 1:
        return x
    return tc(b, M.Cmp("!=", M.Var(x), M.Const(0)), out, False)


def tcn(net: M.SourceNetwork) -> TcnNetwork:
    """Decompose the whole network; top-level reifications are fixed to 1."""
    b = Builder(net.domains.copy())
    out: List[TernaryConstraint] = []
    for c in net.constraints:
        x = tc(b, c, out)
        b.update(x, singleton(1))
    return TcnNetwork(b.d, out, tuple(net.domains))


def op_value(op: TcnOp, a: int, b: int):
    """Value of ``a op b``, or None when undefined (zero divisor)."""
    if op == TcnOp.ADD:
        return a + b
    if op == TcnOp.MUL:
        return a * b
    if op == TcnOp.DIV:
        return None if b == 0 else M.tdiv(a, b)
    if op == TcnOp.MOD:
        return None if b == 0 else M.emod(a, b)
    if op == TcnOp.MIN:
        return min(a, b)
    if op == TcnOp.MAX:
        return max(a, b)
    if op == TcnOp.EQ:
        return int(a == b)
    if op == TcnOp.LE:
        return int(a <= b)
    raise ValueError(op)


def tcn_satisfies(asn, c: TernaryConstraint) -> bool:
    """Assignment satisfies x = y op z (zero divisor never satisfies)."""
    v = op_value(c.op, asn[c.y], asn[c.z])
    return v is not None and v == asn[c.x]


# -- dump format ------------------------------------------------------

DUMP_HEADER = "tcn-v1"


def dump_tcn(net: TcnNetwork) -> str:
    lines = [DUMP_HEADER]
    for x, i in net.domains.items():
        lines.append(f"var {x} in {render(i)};")
    for c in net.constraints:
        lines.append(c.render())
    return "\n".join(lines) + "\n"


def parse_tcn(text: str) -> TcnNetwork:
    """Read a dump back; tolerant only of the exact format we emit."""
    from .intervals import parse_interval

    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines or lines[0] != DUMP_HEADER:
        raise ValueError("missing tcn-v1 header")
    d = DomainStore()
    cons: List[TernaryConstraint] = []
    for ln in lines[1:]:
        if ln.startswith("var "):
            body = ln[4:].rstrip(";")
            name, _, rng = body.partition(" in ")
            d.declare(name.strip(), parse_interval(rng))
        elif ln.startswith("con "):
            body = ln[4:].rstrip(";")
            lhs, _, rhs = body.partition(" = ")
            y, tok, z = rhs.split()
            cons.append(TernaryConstraint(lhs.strip(), TOKEN_TO_OP[tok], y, z))
        else:
            raise ValueError(f"unrecognized dump line: {ln!r}")
    return TcnNetwork(d, cons, tuple(x for x in d if not x.startswith("__")))
