"""Shared fixtures: the randomized source-network corpus and model corpus."""

import random
from pathlib import Path

import pytest

from tcnsolve import model as M
from tcnsolve.frontend import parse_model
from tcnsolve.intervals import DomainStore, itv

CORPUS_DIR = Path(__file__).resolve().parent.parent / "corpus"


def random_arith(rng: random.Random, names, depth: int) -> M.Expr:
    if depth <= 0 or rng.random() < 0.3:
        if rng.random() < 0.6:
            return M.Var(rng.choice(names))
        return M.Const(rng.randint(-3, 3))
    kind = rng.randrange(9)
    if kind == 0:
        return M.Neg(random_arith(rng, names, depth - 1))
    if kind == 1:
        return M.Abs(random_arith(rng, names, depth - 1))
    if kind == 2:
        k = rng.randint(1, 3)
        s = frozenset(rng.randint(-3, 3) for _ in range(k))
        return M.Member(random_arith(rng, names, depth - 1), s)
    op = rng.choice(["+", "-", "*", "/", "mod", "min", "max"])
    return M.Bin(
        op,
        random_arith(rng, names, depth - 1),
        random_arith(rng, names, depth - 1),
    )


def random_bool(rng: random.Random, names, depth: int) -> M.Expr:
    kind = rng.randrange(8)
    if kind < 3 or depth <= 1:
        op = rng.choice(["=", "!=", "<=", "<", ">=", ">"])
        return M.Cmp(
            op,
            random_arith(rng, names, depth - 1),
            random_arith(rng, names, depth - 1),
        )
    if kind == 3:
        k = rng.randint(1, 3)
        s = frozenset(rng.randint(-3, 3) for _ in range(k))
        return M.Member(random_arith(rng, names, depth - 1), s)
    if kind == 4:
        return M.Not(random_bool(rng, names, depth - 1))
    cls = rng.choice([M.And, M.Or, M.Implies, M.Iff, M.Xor])
    return cls(
        random_bool(rng, names, depth - 1),
        random_bool(rng, names, depth - 1),
    )


def random_network(rng: random.Random) -> M.SourceNetwork:
    """One random source network: <=4 vars in [-3,3], <=3 constraints."""
    nvars = rng.randint(1, 4)
    names = [f"v{i}" for i in range(nvars)]
    d = DomainStore()
    for x in names:
        lo = rng.randint(-3, 3)
        hi = rng.randint(lo, 3)
        d.declare(x, itv(lo, hi))
    ncons = rng.randint(0, 3)
    cons = [random_bool(rng, names, 3) for _ in range(ncons)]
    return M.SourceNetwork(d, cons)


def make_corpus(n: int, seed: int = 20240817):
    rng = random.Random(seed)
    return [random_network(rng) for _ in range(n)]


@pytest.fixture(scope="session")
def fuzz_corpus():
    return make_corpus(1000)


@pytest.fixture(scope="session")
def corpus_models():
    out = []
    for path in sorted(CORPUS_DIR.glob("*.mod")):
        out.append((path.name, parse_model(path.read_text())))
    assert out, "bundled model corpus is missing"
    return out
