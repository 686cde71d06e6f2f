"""Parser and renderer for the textual modeling language.

Grammar (UTF-8, `;`-terminated items, `%` line comments):

    var <id> in <int>..<int>;    var <id> in {<int>,...};    var <id>;
    constraint <expr>;
    solve satisfy;    solve minimize <id>;    solve maximize <id>;

Expression operators, tightest first: unary `-`; `* / mod`; `+ -`;
comparisons `= != <= < >= >` and `in {...}`; `not`; `/\\`; `\\/`;
`-> <-> xor`.  `min(a,b)`, `max(a,b)`, `abs(a)` are builtin calls.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import ModelParseError
from .intervals import NEG_INF, POS_INF, TOP, DomainStore, itv
from .model import (
    Abs,
    And,
    Bin,
    Cmp,
    Const,
    Expr,
    Iff,
    Implies,
    Member,
    Neg,
    Not,
    Or,
    SourceNetwork,
    Var,
    Xor,
    itvs,
    scope,
)

RESERVED_PREFIX = "__CONSTANT_"

# Constants beyond this magnitude would endanger saturating 64-bit kernels.
MAX_CONSTANT = 1 << 48


@dataclass
class ParseDiagnostic:
    line: int
    column: int
    message: str
    severity: str = "ERROR"

    def __str__(self):
        return f"{self.line}:{self.column}: {self.severity.lower()}: {self.message}"


_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+|%[^\n]*)
  | (?P<num>\d+)
  | (?P<id>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<op><->|->|\.\.|!=|<=|>=|/\\|\\/|[=<>+\-*/(){},;])
    """,
    re.VERBOSE,
)

_KEYWORDS = {
    "var",
    "constraint",
    "solve",
    "satisfy",
    "minimize",
    "maximize",
    "in",
    "not",
    "xor",
    "mod",
    "min",
    "max",
    "abs",
}


@dataclass
class _Tok:
    kind: str  # num | id | op | kw | eof
    text: str
    line: int
    col: int


def _tokenize(text):
    toks = []
    line, col = 1, 1
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m or m.end() == pos:
            raise ModelParseError(
                [ParseDiagnostic(line, col, f"unexpected character {text[pos]!r}")]
            )
        lexeme = m.group(0)
        if m.lastgroup == "num":
            toks.append(_Tok("num", lexeme, line, col))
        elif m.lastgroup == "id":
            kind = "kw" if lexeme in _KEYWORDS else "id"
            toks.append(_Tok(kind, lexeme, line, col))
        elif m.lastgroup == "op":
            toks.append(_Tok("op", lexeme, line, col))
        nl = lexeme.count("\n")
        if nl:
            line += nl
            col = len(lexeme) - lexeme.rfind("\n")
        else:
            col += len(lexeme)
        pos = m.end()
    toks.append(_Tok("eof", "", line, col))
    return toks


class _Parser:
    def __init__(self, text):
        self.toks = _tokenize(text)
        self.pos = 0
        self.diags = []
        self.domains = DomainStore()
        self.constraints = []
        self.objective = ("satisfy", None)
        self.saw_solve = False

    # -- token helpers ------------------------------------------------

    @property
    def cur(self):
        return self.toks[self.pos]

    def advance(self):
        tok = self.toks[self.pos]
        if tok.kind != "eof":
            self.pos += 1
        return tok

    def at(self, text):
        return self.cur.text == text and self.cur.kind in ("op", "kw")

    def accept(self, text):
        if self.at(text):
            return self.advance()
        return None

    def expect(self, text):
        if not self.at(text):
            self.fail(f"expected {text!r}, found {self.cur.text!r}")
        return self.advance()

    def fail(self, message, tok=None):
        tok = tok or self.cur
        raise ModelParseError(
            self.diags + [ParseDiagnostic(tok.line, tok.col, message)]
        )

    def error(self, message, tok=None):
        tok = tok or self.cur
        self.diags.append(ParseDiagnostic(tok.line, tok.col, message))

    # -- items --------------------------------------------------------

    def parse(self):
        while self.cur.kind != "eof":
            if self.accept("var"):
                self.item_var()
            elif self.accept("constraint"):
                self.item_constraint()
            elif self.accept("solve"):
                self.item_solve()
            else:
                self.fail(f"expected an item, found {self.cur.text!r}")
            self.expect(";")
        self.finish_checks()
        if self.diags:
            raise ModelParseError(self.diags)
        return SourceNetwork(self.domains, self.constraints, self.objective)

    def item_var(self):
        tok = self.cur
        if tok.kind != "id":
            self.fail("expected a variable name")
        name = self.advance().text
        if name.startswith(RESERVED_PREFIX):
            self.error(f"variable name {name!r} uses the reserved prefix", tok)
        if name in self.domains:
            self.error(f"duplicate declaration of {name!r}", tok)
            name = None
        if self.accept("in"):
            if self.at("{"):
                values = self.set_literal()
                if name is not None and values:
                    parts = itvs(values)
                    self.domains.declare(name, itv(parts[0].lo, parts[-1].hi))
                    if len(parts) > 1:
                        self.constraints.append(
                            Member(Var(name), frozenset(values))
                        )
            else:
                lo = self.signed_int()
                self.expect("..")
                hi = self.signed_int()
                if name is not None:
                    self.domains.declare(name, itv(lo, hi))
        elif name is not None:
            self.domains.declare(name, TOP)

    def item_constraint(self):
        self.constraints.append(self.expr())

    def item_solve(self):
        if self.saw_solve:
            self.error("duplicate solve item")
        self.saw_solve = True
        if self.accept("satisfy"):
            self.objective = ("satisfy", None)
            return
        for mode in ("minimize", "maximize"):
            if self.accept(mode):
                tok = self.cur
                if tok.kind != "id":
                    self.fail("expected a variable name after solve objective")
                self.objective = (mode, self.advance().text)
                return
        self.fail("expected satisfy, minimize or maximize")

    def finish_checks(self):
        for c in self.constraints:
            for x in sorted(scope(c)):
                if x not in self.domains:
                    self.error(f"undeclared variable {x!r}")
        mode, ovar = self.objective
        if ovar is not None and ovar not in self.domains:
            self.error(f"undeclared objective variable {ovar!r}")

    # -- literals -----------------------------------------------------

    def signed_int(self):
        neg = bool(self.accept("-"))
        tok = self.cur
        if tok.kind != "num":
            self.fail("expected an integer")
        self.advance()
        k = int(tok.text)
        if k > MAX_CONSTANT:
            self.error(f"constant {tok.text} exceeds the supported magnitude", tok)
            k = MAX_CONSTANT
        return -k if neg else k

    def set_literal(self):
        tok = self.expect("{")
        values = set()
        if self.accept("}"):
            self.error("empty set literal", tok)
            return values
        values.add(self.signed_int())
        while self.accept(","):
            values.add(self.signed_int())
        self.expect("}")
        return values

    # -- expressions --------------------------------------------------

    def expr(self) -> Expr:
        a = self.expr_or()
        while True:
            if self.accept("->"):
                a = Implies(a, self.expr_or())
            elif self.accept("<->"):
                a = Iff(a, self.expr_or())
            elif self.accept("xor"):
                a = Xor(a, self.expr_or())
            else:
                return a

    def expr_or(self) -> Expr:
        a = self.expr_and()
        while self.accept("\\/"):
            a = Or(a, self.expr_and())
        return a

    def expr_and(self) -> Expr:
        a = self.expr_not()
        while self.accept("/\\"):
            a = And(a, self.expr_not())
        return a

    def expr_not(self) -> Expr:
        if self.accept("not"):
            return Not(self.expr_not())
        return self.expr_cmp()

    def expr_cmp(self) -> Expr:
        a = self.expr_add()
        for op in ("=", "!=", "<=", "<", ">=", ">"):
            if self.accept(op):
                return Cmp(op, a, self.expr_add())
        if self.accept("in"):
            tok = self.cur
            values = self.set_literal()
            if not values:
                return a  # diagnosed already
            return Member(a, frozenset(values))
        return a

    def expr_add(self) -> Expr:
        a = self.expr_mul()
        while True:
            if self.accept("+"):
                a = Bin("+", a, self.expr_mul())
            elif self.accept("-"):
                a = Bin("-", a, self.expr_mul())
            else:
                return a

    def expr_mul(self) -> Expr:
        a = self.expr_unary()
        while True:
            if self.accept("*"):
                a = Bin("*", a, self.expr_unary())
            elif self.accept("/"):
                a = Bin("/", a, self.expr_unary())
            elif self.accept("mod"):
                a = Bin("mod", a, self.expr_unary())
            else:
                return a

    def expr_unary(self) -> Expr:
        if self.accept("-"):
            return Neg(self.expr_unary())
        return self.primary()

    def primary(self) -> Expr:
        tok = self.cur
        if tok.kind == "num":
            self.advance()
            k = int(tok.text)
            if k > MAX_CONSTANT:
                self.error(f"constant {tok.text} exceeds the supported magnitude", tok)
                k = MAX_CONSTANT
            return Const(k)
        if tok.kind == "id":
            self.advance()
            if tok.text.startswith(RESERVED_PREFIX):
                self.error(f"variable name {tok.text!r} uses the reserved prefix", tok)
            return Var(tok.text)
        for name, arity in (("min", 2), ("max", 2), ("abs", 1)):
            if self.accept(name):
                self.expect("(")
                a = self.expr()
                if arity == 2:
                    self.expect(",")
                    b = self.expr()
                    self.expect(")")
                    return Bin(name, a, b)
                self.expect(")")
                return Abs(a)
        if self.accept("("):
            a = self.expr()
            self.expect(")")
            return a
        self.fail(f"expected an expression, found {tok.text!r}")


def parse_model(text: str) -> SourceNetwork:
    """Parse a model; raises ModelParseError carrying all diagnostics."""
    return _Parser(text).parse()


def unary_domain_fold(net: SourceNetwork) -> SourceNetwork:
    """Fold top-level `x = k`, `x <= k`, `x >= k` (and mirrored) into domains.

    Matching is purely syntactic on the exact shapes; everything else is left
    alone.  The store is updated by intersection, so `x = 12` against [0,9]
    leaves an empty domain rather than an error.
    """
    d = net.domains.copy()
    kept = []
    for c in net.constraints:
        folded = False
        if isinstance(c, Cmp) and c.op in ("=", "<=", ">="):
            a, b = c.a, c.b
            x = k = None
            op = c.op
            if isinstance(a, Var) and isinstance(b, Const):
                x, k = a.id, b.k
            elif isinstance(a, Const) and isinstance(b, Var):
                x, k = b.id, a.k
                op = {"=": "=", "<=": ">=", ">=": "<="}[op]
            if x is not None:
                if op == "=":
                    d.update(x, itv(k, k))
                elif op == "<=":
                    d.update(x, itv(NEG_INF, k))
                else:
                    d.update(x, itv(k, POS_INF))
                folded = True
        if not folded:
            kept.append(c)
    return SourceNetwork(d, kept, net.objective)


# -- rendering --------------------------------------------------------


def render_expr(t: Expr) -> str:
    """Render with full parenthesization; reparses to the same structure."""
    if isinstance(t, Var):
        return t.id
    if isinstance(t, Const):
        return str(t.k) if t.k >= 0 else f"(-{-t.k})"
    if isinstance(t, Neg):
        return f"(-{render_expr(t.t)})"
    if isinstance(t, Abs):
        return f"abs({render_expr(t.t)})"
    if isinstance(t, Member):
        inner = ",".join(str(v) for v in sorted(t.s))
        return f"({render_expr(t.t)} in {{{inner}}})"
    if isinstance(t, Bin):
        if t.op in ("min", "max"):
            return f"{t.op}({render_expr(t.a)},{render_expr(t.b)})"
        return f"({render_expr(t.a)} {t.op} {render_expr(t.b)})"
    if isinstance(t, Cmp):
        return f"({render_expr(t.a)} {t.op} {render_expr(t.b)})"
    if isinstance(t, Not):
        return f"(not {render_expr(t.t)})"
    if isinstance(t, And):
        return f"({render_expr(t.a)} /\\ {render_expr(t.b)})"
    if isinstance(t, Or):
        return f"({render_expr(t.a)} \\/ {render_expr(t.b)})"
    if isinstance(t, Implies):
        return f"({render_expr(t.a)} -> {render_expr(t.b)})"
    if isinstance(t, Iff):
        return f"({render_expr(t.a)} <-> {render_expr(t.b)})"
    if isinstance(t, Xor):
        return f"({render_expr(t.a)} xor {render_expr(t.b)})"
    raise TypeError(f"not an expression: {t!r}")


def render_model(net: SourceNetwork) -> str:
    from .intervals import NEG_INF as NI, POS_INF as PI, is_empty

    lines = []
    for x, i in net.domains.items():
        if i.lo == NI and i.hi == PI:
            lines.append(f"var {x};")
        elif is_empty(i):
            # no surface syntax for an empty domain; pin with a contradiction
            lines.append(f"var {x} in 0..0;")
            lines.append(f"constraint {x} = 1;")
        elif i.lo == NI:
            lines.append(f"var {x};")
            lines.append(f"constraint {x} <= {i.hi};")
        elif i.hi == PI:
            lines.append(f"var {x};")
            lines.append(f"constraint {x} >= {i.lo};")
        else:
            lines.append(f"var {x} in {i.lo}..{i.hi};")
    for c in net.constraints:
        lines.append(f"constraint {render_expr(c)};")
    mode, ovar = net.objective
    lines.append(f"solve {mode};" if ovar is None else f"solve {mode} {ovar};")
    return "\n".join(lines) + "\n"
