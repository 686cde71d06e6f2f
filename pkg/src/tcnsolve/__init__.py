"""tcnsolve: compile integer constraint models to ternary constraint
networks, simplify them, and solve by interval propagation with
branch-and-bound."""

from . import kernel
from .decompose import TcnNetwork, TcnOp, TernaryConstraint, dump_tcn, parse_tcn, tcn
from .errors import (
    DuplicateVariable,
    EmptySet,
    ModelParseError,
    NothingToSplit,
    TcnError,
    TooLarge,
    UnboundedVariable,
    UnknownVariable,
)
from .frontend import parse_model, render_model
from .intervals import EMPTY, NEG_INF, POS_INF, TOP, DomainStore, Itv, itv
from .model import SourceNetwork
from .oracle import SolutionSet, check_equivalence, enumerate_solutions
from .preprocess import PreprocessReport, Substitution, preprocess
from .propagation import FlatNetwork, fixpoint, propagate_one, root_fixpoint
from .search import SolveResult, solve, solve_model, split

__version__ = "0.1.0"

__all__ = [
    "DomainStore", "Itv", "itv", "EMPTY", "TOP", "NEG_INF", "POS_INF",
    "SourceNetwork", "parse_model", "render_model",
    "TcnNetwork", "TcnOp", "TernaryConstraint", "tcn", "dump_tcn", "parse_tcn",
    "preprocess", "PreprocessReport", "Substitution",
    "fixpoint", "propagate_one", "root_fixpoint", "FlatNetwork",
    "solve", "solve_model", "split", "SolveResult",
    "enumerate_solutions", "check_equivalence", "SolutionSet",
    "TcnError", "EmptySet", "DuplicateVariable", "UnknownVariable",
    "NothingToSplit", "UnboundedVariable", "TooLarge", "ModelParseError",
    "kernel",
]
