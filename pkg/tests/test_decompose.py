import pytest

from tcnsolve import model as M
from tcnsolve.decompose import (
    BOOLEAN_RESULT,
    COMMUTATIVE,
    Builder,
    TcnNetwork,
    TcnOp,
    TernaryConstraint,
    constant_name,
    dump_tcn,
    op_value,
    parse_tcn,
    tc,
    tcn,
    tcn_satisfies,
)
from tcnsolve.intervals import DomainStore, POS_INF, TOP, itv
from tcnsolve.model import SourceNetwork
from tcnsolve.oracle import check_equivalence, enumerate_solutions


def mk(domains):
    return Builder(DomainStore(domains))


def test_op_codes_and_tokens():
    assert [int(o) for o in TcnOp] == list(range(8))
    assert [o.token for o in TcnOp] == [
        "add", "mul", "div", "mod", "min", "max", "eq", "le",
    ]
    assert COMMUTATIVE == {TcnOp.ADD, TcnOp.MUL, TcnOp.MIN, TcnOp.MAX, TcnOp.EQ}
    assert BOOLEAN_RESULT == {TcnOp.EQ, TcnOp.LE}


def test_constant_names():
    assert constant_name(5) == "__CONSTANT_5"
    assert constant_name(-1) == "__CONSTANT_m1"
    b = mk([])
    assert b.extend_const(5) == b.extend_const(5)
    assert b.d["__CONSTANT_5"] == itv(5, 5)


def test_fresh_skips_collisions():
    b = mk([("__aux_0", itv(0, 1))])
    assert b.fresh() == "__aux_1"


def test_binary_emits_result_before_operands():
    b = mk([("x", itv(0, 5)), ("y", itv(0, 5))])
    out = []
    r = tc(b, M.Bin("+", M.Var("x"), M.Var("y")), out)
    assert out == [TernaryConstraint(r, TcnOp.ADD, "x", "y")]
    # the result variable is declared before recursing into operands
    assert b.d.ordinal(r) == 2


def test_subtraction_encoding():
    b = mk([("x", itv(0, 5)), ("y", itv(0, 5))])
    out = []
    r = tc(b, M.Bin("-", M.Var("x"), M.Var("y")), out)
    assert out == [TernaryConstraint("x", TcnOp.ADD, r, "y")]


def test_comparison_result_is_boolean():
    b = mk([("x", itv(0, 5)), ("y", itv(0, 5))])
    out = []
    r = tc(b, M.Cmp("<=", M.Var("x"), M.Var("y")), out)
    assert b.d[r] == itv(0, 1)
    assert out == [TernaryConstraint(r, TcnOp.LE, "x", "y")]


def test_neq_uses_zero_iff():
    b = mk([("x", itv(0, 5)), ("y", itv(0, 5))])
    out = []
    r = tc(b, M.Cmp("!=", M.Var("x"), M.Var("y")), out)
    assert "__CONSTANT_0" in b.d
    eqs = [c for c in out if c.op == TcnOp.EQ]
    assert len(eqs) == 2  # inner x = y, outer 0 <-> (x = y)
    assert any(c.y == "__CONSTANT_0" or c.z == "__CONSTANT_0" for c in eqs)
    assert b.d[r] == itv(0, 1)


def test_strict_inequality_shift():
    src = SourceNetwork(
        DomainStore([("x", itv(0, 3)), ("y", itv(0, 3))]),
        [M.Cmp("<", M.Var("x"), M.Var("y"))],
    )
    net = tcn(src)
    ops = sorted(c.op for c in net.constraints)
    assert ops == [TcnOp.ADD, TcnOp.LE]
    v = check_equivalence(src, net, ["x", "y"])
    assert v.set_equal and v.count_equal


def test_abs_range():
    src = SourceNetwork(
        DomainStore([("x", itv(-3, 2)), ("z", itv(-9, 9))]),
        [M.Cmp("=", M.Var("z"), M.Abs(M.Var("x")))],
    )
    sols = enumerate_solutions(src, ["z"])
    assert sorted(r[0] for r in sols.rows) == [0, 1, 2, 3]
    v = check_equivalence(src, tcn(src), ["x", "z"])
    assert v.set_equal and v.count_equal


def test_membership_hull_only_when_enforced():
    # enforced: hull narrows the domain
    b = mk([("x", itv(-8, 8))])
    tc(b, M.Member(M.Var("x"), frozenset({1, 2, 3, 5})), [], enforced=True)
    assert b.d["x"] == itv(1, 5)
    # reified: the domain must stay untouched
    b2 = mk([("x", itv(-8, 8))])
    tc(b2, M.Member(M.Var("x"), frozenset({1, 2, 3, 5})), [], enforced=False)
    assert b2.d["x"] == itv(-8, 8)


def test_negated_membership_keeps_outside_solutions():
    src = SourceNetwork(
        DomainStore([("x", itv(0, 9))]),
        [M.Not(M.Member(M.Var("x"), frozenset({2, 3})))],
    )
    v = check_equivalence(src, tcn(src), ["x"])
    assert v.set_equal and v.count_equal


def test_logic_encodings():
    d = DomainStore([("p", itv(0, 1)), ("q", itv(0, 1))])
    for expr, ops in [
        (M.And(M.Var("p"), M.Var("q")), [TcnOp.MIN]),
        (M.Or(M.Var("p"), M.Var("q")), [TcnOp.MAX]),
        (M.Iff(M.Var("p"), M.Var("q")), [TcnOp.EQ]),
    ]:
        net = tcn(SourceNetwork(d, [expr]))
        assert [c.op for c in net.constraints] == ops
        v = check_equivalence(SourceNetwork(d, [expr]), net, ["p", "q"])
        assert v.set_equal and v.count_equal


def test_booleanize_passthrough():
    # already-Boolean operands get no extra reification machinery
    d = DomainStore([("p", itv(0, 1)), ("q", itv(0, 1))])
    net = tcn(SourceNetwork(d, [M.And(M.Var("p"), M.Var("q"))]))
    assert len(net.constraints) == 1
    # a wide operand needs the x != 0 coercion
    d2 = DomainStore([("p", itv(0, 5)), ("q", itv(0, 1))])
    net2 = tcn(SourceNetwork(d2, [M.And(M.Var("p"), M.Var("q"))]))
    assert len(net2.constraints) > 1
    v = check_equivalence(
        SourceNetwork(d2, [M.And(M.Var("p"), M.Var("q"))]), net2, ["p", "q"]
    )
    assert v.set_equal and v.count_equal


def test_top_level_reification_fixed_true():
    src = SourceNetwork(
        DomainStore([("x", itv(0, 3)), ("y", itv(0, 3))]),
        [M.Cmp("<=", M.Var("x"), M.Var("y"))],
    )
    net = tcn(src)
    (c,) = net.constraints
    assert net.domains[c.x] == itv(1, 1)
    assert net.original_vars == ("x", "y")


def test_op_value_table():
    assert op_value(TcnOp.ADD, 2, 3) == 5
    assert op_value(TcnOp.MUL, -2, 3) == -6
    assert op_value(TcnOp.DIV, -7, 2) == -3
    assert op_value(TcnOp.DIV, 7, 0) is None
    assert op_value(TcnOp.MOD, -7, 3) == 2
    assert op_value(TcnOp.MOD, 4, 0) is None
    assert op_value(TcnOp.MIN, 2, -1) == -1
    assert op_value(TcnOp.MAX, 2, -1) == 2
    assert op_value(TcnOp.EQ, 4, 4) == 1
    assert op_value(TcnOp.LE, 5, 4) == 0


def test_tcn_satisfies():
    c = TernaryConstraint("a", TcnOp.DIV, "b", "c")
    assert tcn_satisfies({"a": -3, "b": -7, "c": 2}, c)
    assert not tcn_satisfies({"a": 0, "b": 1, "c": 0}, c)


def test_dump_roundtrip():
    d = DomainStore([("x", itv(0, 5)), ("y", TOP), ("z", itv(3, POS_INF))])
    net = TcnNetwork(d, [TernaryConstraint("x", TcnOp.MUL, "y", "z")], ("x",))
    text = dump_tcn(net)
    assert text.splitlines()[0] == "tcn-v1"
    back = parse_tcn(text)
    assert list(back.domains.items()) == list(d.items())
    assert back.constraints == net.constraints
    assert dump_tcn(back) == text


def test_dump_deterministic():
    src = SourceNetwork(
        DomainStore([("x", itv(0, 3))]),
        [M.Cmp("<", M.Var("x"), M.Const(2))],
    )
    assert dump_tcn(tcn(src)) == dump_tcn(tcn(src))


def test_mutated_network_caught_by_oracle():
    src = SourceNetwork(
        DomainStore([("x", itv(0, 3)), ("y", itv(0, 3))]),
        [M.Cmp("=", M.Var("x"), M.Bin("+", M.Var("y"), M.Const(1)))],
    )
    net = tcn(src)
    i = next(i for i, c in enumerate(net.constraints) if c.op == TcnOp.ADD)
    bad = list(net.constraints)
    bad[i] = bad[i]._replace(op=TcnOp.MUL)
    v = check_equivalence(src, TcnNetwork(net.domains, bad, net.original_vars), ["x", "y"])
    assert not v.set_equal
    assert v.counterexample is not None
