import pytest
from hypothesis import given
from hypothesis import strategies as st

from tcnsolve import model as M
from tcnsolve.errors import EmptySet
from tcnsolve.intervals import itv


def test_itvs_examples():
    assert M.itvs({1, 2, 3, 5}) == [itv(1, 3), itv(5, 5)]
    parts = M.itvs({-2, -1, 0, 4, 6, 7})
    assert parts == [itv(-2, 0), itv(4, 4), itv(6, 7)]
    # decomposition covers exactly the input set
    for v in range(-3, 9):
        assert (v in {-2, -1, 0, 4, 6, 7}) == any(
            p.lo <= v <= p.hi for p in parts
        )
    assert M.itvs({4}) == [itv(4, 4)]
    with pytest.raises(EmptySet):
        M.itvs(set())


@given(st.sets(st.integers(-30, 30), min_size=1, max_size=12))
def test_itvs_properties(s):
    parts = M.itvs(s)
    # ascending, disjoint, non-adjacent
    for a, b in zip(parts, parts[1:]):
        assert a.hi + 1 < b.lo
    assert set().union(*(range(p.lo, p.hi + 1) for p in parts)) == s


def test_truncated_division():
    assert M.tdiv(7, 2) == 3
    assert M.tdiv(-7, 2) == -3
    assert M.tdiv(7, -2) == -3
    assert M.tdiv(-7, -2) == 3


def test_euclidean_modulus():
    assert M.emod(7, 3) == 1
    assert M.emod(-7, 3) == 2
    assert M.emod(7, -3) == 1
    assert M.emod(-7, -3) == 2
    for a in range(-9, 10):
        for b in list(range(-4, 0)) + list(range(1, 5)):
            r = M.emod(a, b)
            assert 0 <= r < abs(b)


def test_eval_arithmetic():
    asn = {"x": 5, "y": -2}
    e = M.Bin("+", M.Var("x"), M.Bin("*", M.Var("y"), M.Const(3)))
    assert M.eval_expr(asn, e) == -1
    assert M.eval_expr(asn, M.Neg(M.Var("x"))) == -5
    assert M.eval_expr(asn, M.Abs(M.Var("y"))) == 2
    assert M.eval_expr(asn, M.Bin("min", M.Var("x"), M.Var("y"))) == -2
    assert M.eval_expr(asn, M.Bin("max", M.Var("x"), M.Var("y"))) == 5


def test_eval_booleans_yield_01():
    asn = {"x": 5, "y": -2}
    assert M.eval_expr(asn, M.Cmp("<", M.Var("y"), M.Var("x"))) == 1
    assert M.eval_expr(asn, M.Cmp("=", M.Var("x"), M.Var("y"))) == 0
    assert M.eval_expr(asn, M.Not(M.Var("y"))) == 0
    assert M.eval_expr(asn, M.And(M.Var("x"), M.Var("y"))) == 1
    assert M.eval_expr(asn, M.Xor(M.Var("x"), M.Const(0))) == 1
    assert M.eval_expr(asn, M.Member(M.Var("x"), frozenset({1, 5}))) == 1
    assert M.eval_expr(asn, M.Member(M.Var("y"), frozenset({1, 5}))) == 0


def test_undefined_is_strict():
    asn = {"x": 3, "z": 0}
    div = M.Bin("/", M.Var("x"), M.Var("z"))
    assert M.eval_expr(asn, div) is M.UNDEFINED
    # strictness: UNDEFINED swallows every surrounding node
    assert M.eval_expr(asn, M.Cmp("=", div, div)) is M.UNDEFINED
    assert M.eval_expr(asn, M.Or(M.Cmp(">", M.Var("x"), M.Const(0)), div)) is M.UNDEFINED
    assert M.eval_expr(asn, M.Not(M.Bin("mod", M.Var("x"), M.Var("z")))) is M.UNDEFINED
    assert not M.satisfies(asn, M.Cmp("=", div, div))


def test_scope():
    e = M.Implies(
        M.Cmp("<", M.Var("a"), M.Const(2)),
        M.Member(M.Bin("+", M.Var("b"), M.Var("a")), frozenset({0})),
    )
    assert M.scope(e) == frozenset({"a", "b"})
