"""Quantifier-free formula DSL over the fragment.

Grammar (one variable, n):

    formula := or_f ("->" formula)?
    or_f    := and_f ("|" and_f)*
    and_f   := unary ("&" unary)*
    unary   := "!" unary | "(" formula ")" | atom
    atom    := term ("=" | "<=") term | term "in" NAME
    term    := factor (("+" | "-") factor)*
    factor  := power ("*" power)*
    power   := primary ("^" NAT)?
    primary := "n" | NAT | NAME "(" term ")" | "(" term ")"

Terms are integer valued; a named function applied to a term clamps
negative arguments to 0, which keeps every term total and exactly
analyzable.  The truth set of a formula is computed by structural
recursion into the EpSet algebra; star evaluation at a hyper-point
composes each term with the point's representative and asks the ambient
handle about the resulting index sets.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Union

from .epsets import EpSet
from .eqp import EqpFunction, ZPiecewise, compose, preimage
from .polys import Poly


class ParseError(ValueError):
    """Formula text does not match the grammar."""


class UnboundVariableError(ValueError):
    """An identifier is neither the variable n nor a known symbol."""


# -- AST ----------------------------------------------------------------------


@dataclass(frozen=True)
class Var:
    pass


@dataclass(frozen=True)
class Const:
    value: int


@dataclass(frozen=True)
class Apply:
    name: str
    arg: "Term"


@dataclass(frozen=True)
class BinOp:
    op: str  # "+" | "-" | "*"
    left: "Term"
    right: "Term"


@dataclass(frozen=True)
class Power:
    base: "Term"
    exponent: int


Term = Union[Var, Const, Apply, BinOp, Power]


@dataclass(frozen=True)
class Atom:
    kind: str  # "eq" | "le" | "in"
    left: Term
    right: Term | None = None
    set_name: str | None = None


@dataclass(frozen=True)
class Not:
    body: "Formula"


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Implies:
    left: "Formula"
    right: "Formula"


Formula = Union[Atom, Not, And, Or, Implies]


@dataclass
class FormulaEnv:
    functions: dict[str, EqpFunction]
    sets: dict[str, EpSet]

    @staticmethod
    def empty() -> FormulaEnv:
        return FormulaEnv({}, {})

    @staticmethod
    def with_defaults() -> FormulaEnv:
        return FormulaEnv(
            functions={"id": EqpFunction.identity(),
                       "succ": EqpFunction.from_poly(Poly.of(1, 1)),
                       "sq": EqpFunction.from_poly(Poly.of(0, 0, 1)),
                       "double": EqpFunction.from_poly(Poly.of(0, 2))},
            sets={"evens": EpSet.evens(), "odds": EpSet.odds(), "all": EpSet.naturals()},
        )


# -- tokenizer -----------------------------------------------------------------


_SYMBOLS = ("->", "<=", "(", ")", "+", "-", "*", "^", "=", "!", "&", "|")


def _tokenize(text: str) -> list[tuple[str, object, int]]:
    tokens = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            tokens.append(("nat", int(text[i:j]), i))
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < len(text) and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(("ident", text[i:j], i))
            i = j
            continue
        for sym in _SYMBOLS:
            if text.startswith(sym, i):
                tokens.append(("sym", sym, i))
                i += len(sym)
                break
        else:
            raise ParseError(f"unexpected character {ch!r} at {i}")
    tokens.append(("end", None, len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str) -> None:
        self.text = text
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self) -> tuple[str, object, int]:
        return self.tokens[self.pos]

    def take(self) -> tuple[str, object, int]:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect_sym(self, sym: str) -> None:
        kind, val, where = self.take()
        if kind != "sym" or val != sym:
            raise ParseError(f"expected {sym!r} at {where} in {self.text!r}")

    def formula(self) -> Formula:
        left = self.or_f()
        kind, val, _ = self.peek()
        if kind == "sym" and val == "->":
            self.take()
            return Implies(left, self.formula())
        return left

    def or_f(self) -> Formula:
        out = self.and_f()
        while True:
            kind, val, _ = self.peek()
            if kind == "sym" and val == "|":
                self.take()
                out = Or(out, self.and_f())
            else:
                return out

    def and_f(self) -> Formula:
        out = self.unary()
        while True:
            kind, val, _ = self.peek()
            if kind == "sym" and val == "&":
                self.take()
                out = And(out, self.unary())
            else:
                return out

    def unary(self) -> Formula:
        kind, val, _ = self.peek()
        if kind == "sym" and val == "!":
            self.take()
            return Not(self.unary())
        if kind == "sym" and val == "(":
            # could open a formula group or a parenthesized term; try the
            # formula reading first and fall back on the atom path
            saved = self.pos
            try:
                self.take()
                inner = self.formula()
                self.expect_sym(")")
                nxt = self.peek()
                if nxt[0] == "sym" and nxt[1] in ("=", "<="):
                    raise ParseError("parenthesized term, not formula")
                if nxt[0] == "ident" and nxt[1] == "in":
                    raise ParseError("parenthesized term, not formula")
                if nxt[0] == "sym" and nxt[1] in ("+", "-", "*", "^"):
                    raise ParseError("parenthesized term, not formula")
                return inner
            except ParseError:
                self.pos = saved
        return self.atom()

    def atom(self) -> Atom:
        left = self.term()
        kind, val, where = self.take()
        if kind == "sym" and val == "=":
            return Atom("eq", left, right=self.term())
        if kind == "sym" and val == "<=":
            return Atom("le", left, right=self.term())
        if kind == "ident" and val == "in":
            kind2, name, where2 = self.take()
            if kind2 != "ident":
                raise ParseError(f"expected set name at {where2}")
            return Atom("in", left, set_name=name)
        raise ParseError(f"expected '=', '<=' or 'in' at {where} in {self.text!r}")

    def term(self) -> Term:
        out = self.factor()
        while True:
            kind, val, _ = self.peek()
            if kind == "sym" and val in ("+", "-"):
                self.take()
                out = BinOp(val, out, self.factor())
            else:
                return out

    def factor(self) -> Term:
        out = self.power()
        while True:
            kind, val, _ = self.peek()
            if kind == "sym" and val == "*":
                self.take()
                out = BinOp("*", out, self.power())
            else:
                return out

    def power(self) -> Term:
        base = self.primary()
        kind, val, _ = self.peek()
        if kind == "sym" and val == "^":
            self.take()
            kind2, k, where = self.take()
            if kind2 != "nat":
                raise ParseError(f"expected exponent at {where}")
            return Power(base, k)
        return base

    def primary(self) -> Term:
        kind, val, where = self.take()
        if kind == "nat":
            return Const(val)
        if kind == "ident":
            if val == "n":
                return Var()
            nxt = self.peek()
            if nxt[0] == "sym" and nxt[1] == "(":
                self.take()
                arg = self.term()
                self.expect_sym(")")
                return Apply(val, arg)
            raise UnboundVariableError(
                f"identifier {val!r} at {where} is not the variable n "
                "(function symbols need an argument list)")
        if kind == "sym" and val == "(":
            inner = self.term()
            self.expect_sym(")")
            return inner
        raise ParseError(f"unexpected token {val!r} at {where} in {self.text!r}")


def parse_formula(text: str) -> Formula:
    parser = _Parser(text)
    out = parser.formula()
    kind, val, where = parser.peek()
    if kind != "end":
        raise ParseError(f"trailing input {val!r} at {where} in {text!r}")
    return out


def format_formula(phi: Formula) -> str:
    if isinstance(phi, Atom):
        if phi.kind == "eq":
            return f"{format_term(phi.left)} = {format_term(phi.right)}"
        if phi.kind == "le":
            return f"{format_term(phi.left)} <= {format_term(phi.right)}"
        return f"{format_term(phi.left)} in {phi.set_name}"
    if isinstance(phi, Not):
        return f"!({format_formula(phi.body)})"
    if isinstance(phi, And):
        return f"({format_formula(phi.left)}) & ({format_formula(phi.right)})"
    if isinstance(phi, Or):
        return f"({format_formula(phi.left)}) | ({format_formula(phi.right)})"
    return f"({format_formula(phi.left)}) -> ({format_formula(phi.right)})"


def format_term(t: Term) -> str:
    if isinstance(t, Var):
        return "n"
    if isinstance(t, Const):
        return str(t.value)
    if isinstance(t, Apply):
        return f"{t.name}({format_term(t.arg)})"
    if isinstance(t, BinOp):
        return f"({format_term(t.left)} {t.op} {format_term(t.right)})"
    return f"({format_term(t.base)})^{t.exponent}"


# -- semantics -----------------------------------------------------------------


def term_value(t: Term, env: FormulaEnv, var: ZPiecewise) -> ZPiecewise:
    """The term as an integer-valued piecewise map of the substituted
    variable; function application clamps negatives to 0."""
    if isinstance(t, Var):
        return var
    if isinstance(t, Const):
        return ZPiecewise.constant(t.value)
    if isinstance(t, Apply):
        f = env.functions.get(t.name)
        if f is None:
            raise UnboundVariableError(f"unknown function {t.name!r}")
        inner = term_value(t.arg, env, var).clamp_nonneg()
        return ZPiecewise.from_eqp(compose(f, inner))
    if isinstance(t, BinOp):
        a = term_value(t.left, env, var)
        b = term_value(t.right, env, var)
        if t.op == "+":
            return a + b
        if t.op == "-":
            return a - b
        return a * b
    return term_value(t.base, env, var).power(t.exponent)


def _atom_index_set(atom: Atom, env: FormulaEnv, var: ZPiecewise) -> EpSet:
    left = term_value(atom.left, env, var)
    if atom.kind == "eq":
        return (left - term_value(atom.right, env, var)).zero_set()
    if atom.kind == "le":
        neg, zero, _pos = (left - term_value(atom.right, env, var)).sign_sets()
        return neg.union(zero)
    target = env.sets.get(atom.set_name)
    if target is None:
        raise UnboundVariableError(f"unknown set {atom.set_name!r}")
    return left.in_set(target)


def truth_set(phi: Formula, env: FormulaEnv) -> EpSet:
    """{x : phi(x)} by structural recursion into the EpSet algebra."""
    var = ZPiecewise.variable()

    def go(node: Formula) -> EpSet:
        if isinstance(node, Atom):
            return _atom_index_set(node, env, var)
        if isinstance(node, Not):
            return go(node.body).complement()
        if isinstance(node, And):
            return go(node.left).intersection(go(node.right))
        if isinstance(node, Or):
            return go(node.left).union(go(node.right))
        return go(node.left).complement().union(go(node.right))

    return go(phi)


def star_eval(phi: Formula, env: FormulaEnv, point) -> bool:
    """Evaluate at a hyper-point: atoms become index sets along the
    representative, judged by the ambient handle; connectives act on
    truth values."""
    var = ZPiecewise.from_eqp(point.rep)
    ambient = point.ctx.ambient

    def go(node: Formula) -> bool:
        if isinstance(node, Atom):
            return ambient.member(_atom_index_set(node, env, var))
        if isinstance(node, Not):
            return not go(node.body)
        if isinstance(node, And):
            return go(node.left) and go(node.right)
        if isinstance(node, Or):
            return go(node.left) or go(node.right)
        return (not go(node.left)) or go(node.right)

    return go(phi)


@dataclass(frozen=True)
class PointVerdict:
    star_value: bool
    member_value: bool

    @property
    def agree(self) -> bool:
        return self.star_value == self.member_value


@dataclass(frozen=True)
class TransferReport:
    truth_set: EpSet
    point_verdicts: tuple[PointVerdict, ...]
    closure_standard: bool
    counterexample: int | None
    counterexample_star_value: bool | None

    @property
    def los_ok(self) -> bool:
        return all(v.agree for v in self.point_verdicts)

    @property
    def closure_agrees(self) -> bool:
        if self.closure_standard:
            return all(v.star_value for v in self.point_verdicts)
        return self.counterexample_star_value is False


def transfer_check(phi: Formula, points: Sequence, env: FormulaEnv) -> TransferReport:
    """Check that star evaluation matches membership in the star of the
    truth set at every supplied point, and settle the universal closure on
    both sides, exhibiting the least standard counterexample when the
    truth set is proper."""
    ts = truth_set(phi, env)
    verdicts = []
    for xi in points:
        sv = star_eval(phi, env, xi)
        mv = xi.ctx.ambient.member(preimage(xi.rep, ts))
        verdicts.append(PointVerdict(sv, mv))
    closure = ts == EpSet.naturals()
    counterexample = None
    counter_star = None
    if not closure:
        counterexample = ts.least_nonmember()
        if points:
            ctx = points[0].ctx
        else:
            from .ultra import UltrafilterHandle
            from .extension import Context
            ctx = Context(UltrafilterHandle.profinite_int(0))
        counter_star = star_eval(phi, env, ctx.standard(counterexample))
    return TransferReport(ts, tuple(verdicts), closure, counterexample, counter_star)


__all__ = [
    "ParseError", "UnboundVariableError",
    "Var", "Const", "Apply", "BinOp", "Power", "Term",
    "Atom", "Not", "And", "Or", "Implies", "Formula",
    "FormulaEnv", "parse_formula", "format_formula", "format_term",
    "term_value", "truth_set", "star_eval",
    "PointVerdict", "TransferReport", "transfer_check",
]
