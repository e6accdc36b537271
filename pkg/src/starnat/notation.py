"""Textual literals for sets, functions, and oracle specifications.

Set literals:

    "all" | "empty" | "evens" | "odds"
    "mult K"                          multiples of K
    "cofinite {a,b,...}"              complement of a finite set
    "{a,b,...}"                       finite set
    "{r1,r2 mod m}"                   union of residue classes
    "{r1 mod m | except +a,-b}"       classes with prefix corrections

Function literals:

    POLY                              e.g. "n^2", "2*n+3", "(1/2)*n^2+(1/2)*n"
    "{r mod m -> POLY; ...}"          branch dispatch on n mod m
    "[v0,v1,...] BODY"                prefix override for n < len(values)

Polynomial expressions use the variable n, integer or rational literals
(1/2), +, -, *, ^ and parentheses; juxtaposition like "3n" multiplies.

Oracle specifications:

    "principal:K" | "profinite:int:C" | "profinite:lazy:seed=S:avoid=on|off"
"""

from __future__ import annotations

from fractions import Fraction

from .epsets import EpSet
from .eqp import EqpFunction
from .polys import Poly
from .ultra import UltrafilterHandle


class NotationError(ValueError):
    """Literal does not match its grammar."""


# -- set literals ----------------------------------------------------------------


def _parse_nat_list(body: str) -> list[int]:
    body = body.strip()
    if not body:
        return []
    out = []
    for part in body.split(","):
        part = part.strip()
        if not part.isdigit():
            raise NotationError(f"expected a natural, got {part!r}")
        out.append(int(part))
    return out


def parse_epset(text: str) -> EpSet:
    text = text.strip()
    if text == "all":
        return EpSet.naturals()
    if text == "empty":
        return EpSet.empty()
    if text == "evens":
        return EpSet.evens()
    if text == "odds":
        return EpSet.odds()
    if text.startswith("mult"):
        rest = text[4:].strip()
        if not rest.isdigit() or int(rest) < 1:
            raise NotationError(f"mult needs a positive modulus: {text!r}")
        return EpSet.multiples(int(rest))
    if text.startswith("cofinite"):
        rest = text[8:].strip()
        if not (rest.startswith("{") and rest.endswith("}")):
            raise NotationError(f"cofinite needs a braced list: {text!r}")
        return EpSet.cofinite_excluding(_parse_nat_list(rest[1:-1]))
    if not (text.startswith("{") and text.endswith("}")):
        raise NotationError(f"unrecognized set literal {text!r}")
    body = text[1:-1]
    except_part = None
    if "|" in body:
        body, tail = body.split("|", 1)
        tail = tail.strip()
        if not tail.startswith("except"):
            raise NotationError(f"expected 'except' after '|' in {text!r}")
        except_part = tail[6:].strip()
    body = body.strip()
    if "mod" in body:
        res_text, mod_text = body.split("mod", 1)
        mod_text = mod_text.strip()
        if not mod_text.isdigit() or int(mod_text) < 1:
            raise NotationError(f"bad modulus in {text!r}")
        base = EpSet.residue_classes(_parse_nat_list(res_text), int(mod_text))
    else:
        base = EpSet.finite(_parse_nat_list(body))
    if except_part is not None:
        for chunk in except_part.split(","):
            chunk = chunk.strip()
            if len(chunk) < 2 or chunk[0] not in "+-" or not chunk[1:].isdigit():
                raise NotationError(f"bad exception {chunk!r} in {text!r}")
            point = EpSet.singleton(int(chunk[1:]))
            base = base.union(point) if chunk[0] == "+" else base.difference(point)
    return base


def format_epset(s: EpSet) -> str:
    cls = s.classify()
    if cls.kind == "empty":
        return "empty"
    if cls.kind == "finite":
        return "{" + ",".join(str(x) for x in cls.elements) + "}"
    if s == EpSet.naturals():
        return "all"
    if cls.kind == "cofinite":
        return "cofinite {" + ",".join(str(x) for x in cls.elements) + "}"
    residues = ",".join(str(r) for r in sorted(s.residues))
    exceptions = []
    for x in range(s.prefix_length):
        tail_says = x % s.modulus in s.residues
        if s.member(x) and not tail_says:
            exceptions.append(f"+{x}")
        elif tail_says and not s.member(x):
            exceptions.append(f"-{x}")
    if exceptions:
        return f"{{{residues} mod {s.modulus} | except {','.join(exceptions)}}}"
    return f"{{{residues} mod {s.modulus}}}"


# -- polynomial expressions --------------------------------------------------------


class _PolyParser:
    def __init__(self, text: str) -> None:
        self.text = text
        self.pos = 0

    def error(self, message: str) -> NotationError:
        return NotationError(f"{message} at {self.pos} in {self.text!r}")

    def skip(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expr(self) -> Poly:
        out = self.factor()
        while True:
            ch = self.peek()
            if ch == "+":
                self.pos += 1
                out = out + self.factor()
            elif ch == "-":
                self.pos += 1
                out = out - self.factor()
            else:
                return out

    def factor(self) -> Poly:
        out = self.power()
        while True:
            ch = self.peek()
            if ch == "*":
                self.pos += 1
                out = out * self.power()
            elif ch == "/":
                self.pos += 1
                divisor = self.power()
                if not divisor.is_constant or divisor.constant_value == 0:
                    raise self.error("can only divide by a nonzero constant")
                out = out.scale(Fraction(1) / divisor.constant_value)
            elif ch == "n" or ch == "(":
                out = out * self.power()  # juxtaposition: 3n, 2(n+1)
            else:
                return out

    def power(self) -> Poly:
        base = self.primary()
        if self.peek() == "^":
            self.pos += 1
            ch = self.peek()
            start = self.pos
            while self.pos < len(self.text) and self.text[self.pos].isdigit():
                self.pos += 1
            if self.pos == start:
                raise self.error("expected exponent")
            return base.power(int(self.text[start:self.pos]))
        return base

    def primary(self) -> Poly:
        ch = self.peek()
        if ch == "(":
            self.pos += 1
            inner = self.expr()
            if self.peek() != ")":
                raise self.error("expected ')'")
            self.pos += 1
            return inner
        if ch == "n":
            self.pos += 1
            return Poly.x()
        if ch.isdigit():
            start = self.pos
            while self.pos < len(self.text) and self.text[self.pos].isdigit():
                self.pos += 1
            return Poly.constant(int(self.text[start:self.pos]))
        raise self.error(f"unexpected {ch!r}")


def parse_poly(text: str) -> Poly:
    parser = _PolyParser(text)
    out = parser.expr()
    parser.skip()
    if parser.pos != len(text):
        raise NotationError(f"trailing input at {parser.pos} in {text!r}")
    return out


def format_poly(p: Poly) -> str:
    if p.is_zero:
        return "0"
    parts = []
    for i in range(p.degree, -1, -1):
        c = p.coeffs[i]
        if c == 0:
            continue
        if i == 0:
            parts.append(_coeff_text(c))
        else:
            var = "n" if i == 1 else f"n^{i}"
            if c == 1:
                parts.append(var)
            elif c == -1:
                parts.append(f"-{var}")
            else:
                parts.append(f"{_coeff_text(c)}*{var}")
    out = parts[0]
    for part in parts[1:]:
        out += part if part.startswith("-") else "+" + part
    return out


def _coeff_text(c: Fraction) -> str:
    if c.denominator == 1:
        return str(c.numerator)
    if c.numerator < 0:
        return f"-({-c.numerator}/{c.denominator})"
    return f"({c.numerator}/{c.denominator})"


# -- function literals ----------------------------------------------------------


def parse_eqp(text: str) -> EqpFunction:
    text = text.strip()
    prefix: list[int] = []
    if text.startswith("["):
        close = text.index("]")
        prefix = _parse_nat_list(text[1:close])
        text = text[close + 1:].strip()
    if text.startswith("{"):
        if not text.endswith("}"):
            raise NotationError(f"unterminated branch block in {text!r}")
        clauses = [c.strip() for c in text[1:-1].split(";") if c.strip()]
        branch_map: dict[int, Poly] = {}
        modulus = None
        for clause in clauses:
            if "->" not in clause:
                raise NotationError(f"branch clause needs '->': {clause!r}")
            head, body = clause.split("->", 1)
            head_parts = head.split("mod")
            if len(head_parts) != 2:
                raise NotationError(f"branch head needs 'r mod m': {head!r}")
            r = int(head_parts[0].strip())
            m = int(head_parts[1].strip())
            if modulus is None:
                modulus = m
            elif modulus != m:
                raise NotationError("all branches must share one modulus")
            branch_map[r % m] = parse_poly(body.strip())
        if modulus is None:
            raise NotationError("empty branch block")
        missing = [r for r in range(modulus) if r not in branch_map]
        if missing:
            raise NotationError(f"missing branches for residues {missing}")
        branches = [branch_map[r] for r in range(modulus)]
    else:
        modulus = 1
        branches = [parse_poly(text)]
    return EqpFunction.from_parts(len(prefix), prefix, modulus, branches)


def format_eqp(f: EqpFunction) -> str:
    prefix = ""
    if f.threshold:
        prefix = "[" + ",".join(str(v) for v in f.prefix) + "] "
    if f.modulus == 1:
        return prefix + format_poly(f.branches[0])
    clauses = "; ".join(f"{r} mod {f.modulus} -> {format_poly(p)}"
                        for r, p in enumerate(f.branches))
    return prefix + "{" + clauses + "}"


# -- oracle specifications ---------------------------------------------------------


def parse_oracle(text: str) -> UltrafilterHandle:
    parts = text.strip().split(":")
    if parts[0] == "principal" and len(parts) == 2:
        try:
            return UltrafilterHandle.principal(int(parts[1]))
        except ValueError as exc:
            raise NotationError(f"bad principal point in {text!r}") from exc
    if parts[0] == "profinite" and len(parts) >= 2:
        if parts[1] == "int" and len(parts) == 3:
            try:
                return UltrafilterHandle.profinite_int(int(parts[2]))
            except ValueError as exc:
                raise NotationError(f"bad integer in {text!r}") from exc
        if parts[1] == "lazy":
            seed = 0
            avoidance = False
            for opt in parts[2:]:
                if opt.startswith("seed="):
                    seed = int(opt[5:])
                elif opt.startswith("avoid="):
                    if opt[6:] not in ("on", "off"):
                        raise NotationError(f"avoid must be on or off in {text!r}")
                    avoidance = opt[6:] == "on"
                else:
                    raise NotationError(f"unknown lazy option {opt!r}")
            return UltrafilterHandle.profinite_lazy(seed, avoidance)
    raise NotationError(f"unrecognized oracle spec {text!r}")


def format_oracle(u: UltrafilterHandle) -> str:
    return u.describe()


__all__ = [
    "NotationError",
    "parse_epset", "format_epset",
    "parse_poly", "format_poly",
    "parse_eqp", "format_eqp",
    "parse_oracle", "format_oracle",
]
