import pytest

from tcnsolve import model as M
from tcnsolve.errors import ModelParseError
from tcnsolve.frontend import parse_model, render_model, unary_domain_fold
from tcnsolve.intervals import NEG_INF, POS_INF, TOP, itv


def parse1(text):
    net = parse_model(text)
    assert len(net.constraints) >= 1
    return net.constraints[0]


def test_declarations():
    net = parse_model("var x in -3..7;\nvar y;\nsolve satisfy;")
    assert net.domains["x"] == itv(-3, 7)
    assert net.domains["y"] == TOP
    assert net.objective == ("satisfy", None)


def test_set_domain_hull_plus_membership():
    net = parse_model("var x in {1,2,3,5}; solve satisfy;")
    assert net.domains["x"] == itv(1, 5)
    assert net.constraints == [M.Member(M.Var("x"), frozenset({1, 2, 3, 5}))]
    # contiguous sets need no membership constraint
    net2 = parse_model("var x in {1,2,3}; solve satisfy;")
    assert net2.domains["x"] == itv(1, 3)
    assert net2.constraints == []


def test_objectives():
    assert parse_model("var x in 0..1; solve minimize x;").objective == ("minimize", "x")
    assert parse_model("var x in 0..1; solve maximize x;").objective == ("maximize", "x")


def test_precedence_arithmetic():
    c = parse1("var x in 0..9; constraint x + 2 * 3 = 7; solve satisfy;")
    assert c == M.Cmp(
        "=", M.Bin("+", M.Var("x"), M.Bin("*", M.Const(2), M.Const(3))), M.Const(7)
    )


def test_precedence_logic():
    c = parse1("var p in 0..1; var q in 0..1; var r in 0..1; "
               "constraint p = 1 /\\ q = 1 \\/ r = 1; solve satisfy;")
    # /\ binds tighter than \/
    assert isinstance(c, M.Or)
    assert isinstance(c.a, M.And)


def test_unary_minus_and_calls():
    c = parse1("var x in -5..5; constraint abs(min(-x, 2)) >= 1; solve satisfy;")
    assert c == M.Cmp(
        ">=", M.Abs(M.Bin("min", M.Neg(M.Var("x")), M.Const(2))), M.Const(1)
    )


def test_membership_expression():
    c = parse1("var x in 0..9; constraint x + 1 in {2, 4}; solve satisfy;")
    assert c == M.Member(M.Bin("+", M.Var("x"), M.Const(1)), frozenset({2, 4}))


def test_comments_ignored():
    net = parse_model("% header\nvar x in 0..1; % tail\nsolve satisfy;\n")
    assert list(net.domains) == ["x"]


def test_parse_errors_carry_positions():
    with pytest.raises(ModelParseError) as e:
        parse_model("var x in 0..1;\nconstraint x + ;\nsolve satisfy;")
    diags = e.value.diagnostics
    assert any(d.line == 2 for d in diags)


def test_duplicate_and_reserved_names():
    with pytest.raises(ModelParseError):
        parse_model("var x in 0..1; var x in 0..2; solve satisfy;")
    with pytest.raises(ModelParseError):
        parse_model("var __CONSTANT_1 in 0..1; solve satisfy;")


def test_unknown_variable_rejected():
    with pytest.raises(ModelParseError):
        parse_model("var x in 0..1; constraint y = 1; solve satisfy;")


def test_empty_set_rejected():
    with pytest.raises(ModelParseError):
        parse_model("var x in 0..5; constraint x in {}; solve satisfy;")


def test_oversized_constant_rejected():
    with pytest.raises(ModelParseError):
        parse_model(f"var x in 0..{1 << 60}; solve satisfy;")


def test_render_parse_roundtrip():
    text = (
        "var x in 0..5; var y in -2..2; var z;\n"
        "constraint x + y * 2 <= 9;\n"
        "constraint x in {0, 2, 5} -> not (y = 0);\n"
        "constraint z >= 0;\n"
        "solve minimize y;"
    )
    net = parse_model(text)
    net2 = parse_model(render_model(net))
    assert list(net2.domains.items()) == list(net.domains.items())
    assert net2.constraints == net.constraints
    assert net2.objective == net.objective


def test_unary_domain_fold():
    net = parse_model(
        "var x; var y in 0..9;\n"
        "constraint x >= 2; constraint x <= 8; constraint 4 <= y;\n"
        "constraint y + x > 0;\n"
        "solve satisfy;"
    )
    folded = unary_domain_fold(net)
    assert folded.domains["x"] == itv(2, 8)
    assert folded.domains["y"] == itv(4, 9)
    assert len(folded.constraints) == 1
