"""Text front end: polynomials, polynomial lists and problem files.

Grammar (whitespace insignificant)::

    expr   := ['+'|'-'] term (('+'|'-') term)*
    term   := factor ('*' factor)*
    factor := atom ['^' INT]
    atom   := INT ['/' INT] | NAME | '(' expr ')'

Problem files are line based::

    # comment
    ring z1 z2 : degrevlex
    q0 = z1^2
    tracefree = c00 + c11; c10 + c21

Trace-free forms are written in the unknowns ``c<i><j>`` (generator i,
fiber variable j), which need not be declared in the ring.

Generators named ``q<i>`` make a cover problem; any other names make a plain
ideal whose generators keep their file order.
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple, Union

from sympy.polys.domains import QQ

from coverforge.core.errors import ParseError
from coverforge.core.polyring import Polynomial, Ring, TermOrder, to_rational

log = logging.getLogger(__name__)

_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([A-Za-z][A-Za-z0-9_]*)|(\S))")
_GEN_RE = re.compile(r"q(\d+)\Z")


@dataclass(frozen=True)
class Token:
    kind: str  # NUMBER, NAME, OP or END
    text: str
    column: int


def tokenize(text: str, line: Optional[int] = None, offset: int = 0) -> List[Token]:
    tokens: List[Token] = []
    pos = 0
    while pos < len(text):
        match = _TOKEN_RE.match(text, pos)
        if match is None:
            break
        number, name, op = match.groups()
        start = match.start(match.lastindex) + 1 + offset
        if number is not None:
            tokens.append(Token("NUMBER", number, start))
        elif name is not None:
            tokens.append(Token("NAME", name, start))
        else:
            if op not in "+-*/^()":
                raise ParseError(f"unexpected character {op!r}", line, start)
            tokens.append(Token("OP", op, start))
        pos = match.end()
    tokens.append(Token("END", "", len(text.rstrip()) + 1 + offset))
    return tokens


class _Parser:
    """Recursive descent over a token list, building sympy ring elements."""

    def __init__(self, tokens: List[Token], ring: Ring, line: Optional[int]):
        self.tokens = tokens
        self.ring = ring
        self.line = line
        self.pos = 0
        self._gens = ring.sympy_ring.gens

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def take(self) -> Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def error(self, message: str, tok: Optional[Token] = None) -> ParseError:
        tok = tok or self.peek()
        return ParseError(message, self.line, tok.column)

    def expect(self, text: str) -> Token:
        tok = self.peek()
        if tok.kind != "OP" or tok.text != text:
            found = "end of input" if tok.kind == "END" else repr(tok.text)
            raise self.error(f"expected {text!r}, found {found}")
        return self.take()

    def parse(self):
        value = self.expr()
        tok = self.peek()
        if tok.kind != "END":
            raise self.error(f"unexpected {tok.text!r}")
        return value

    def expr(self):
        sign = 1
        tok = self.peek()
        if tok.kind == "OP" and tok.text in "+-":
            self.take()
            sign = -1 if tok.text == "-" else 1
        value = self.term()
        if sign < 0:
            value = -value
        while True:
            tok = self.peek()
            if tok.kind == "OP" and tok.text in "+-":
                self.take()
                rhs = self.term()
                value = value + rhs if tok.text == "+" else value - rhs
            else:
                return value

    def term(self):
        value = self.factor()
        while self.peek().kind == "OP" and self.peek().text == "*":
            self.take()
            value = value * self.factor()
        return value

    def factor(self):
        base = self.atom()
        if self.peek().kind == "OP" and self.peek().text == "^":
            caret = self.take()
            tok = self.peek()
            if tok.kind != "NUMBER":
                raise self.error("exponent must be a non-negative integer", caret)
            self.take()
            return base ** int(tok.text)
        return base

    def atom(self):
        tok = self.peek()
        if tok.kind == "NUMBER":
            self.take()
            num = int(tok.text)
            if self.peek().kind == "OP" and self.peek().text == "/":
                slash = self.take()
                den_tok = self.peek()
                if den_tok.kind != "NUMBER":
                    raise self.error("expected an integer denominator", slash)
                self.take()
                den = int(den_tok.text)
                if den == 0:
                    raise self.error("division by zero", den_tok)
                return self.ring.sympy_ring.ground_new(QQ(num, den))
            return self.ring.sympy_ring.ground_new(QQ(num))
        if tok.kind == "NAME":
            self.take()
            if tok.text not in self.ring:
                raise self.error(f"unknown variable {tok.text!r}", tok)
            return self._gens[self.ring.index(tok.text)]
        if tok.kind == "OP" and tok.text == "(":
            self.take()
            value = self.expr()
            self.expect(")")
            return value
        if tok.kind == "END":
            raise self.error("unexpected end of input")
        raise self.error(f"unexpected {tok.text!r}")


def parse_polynomial(text: str, ring: Ring, line: Optional[int] = None, offset: int = 0) -> Polynomial:
    """Parse one polynomial; unknown variables are errors."""
    tokens = tokenize(text, line, offset)
    return Polynomial(ring, _Parser(tokens, ring, line).parse())


def parse_polynomial_list(text: str, ring: Ring, line: Optional[int] = None, offset: int = 0) -> List[Polynomial]:
    """Parse ``;`` or ``,`` separated polynomials."""
    out: List[Polynomial] = []
    start = 0
    for piece in re.split(r"[;,]", text):
        if piece.strip():
            out.append(parse_polynomial(piece, ring, line, offset + start))
        start += len(piece) + 1
    return out


def parse_ring_header(text: str, line: Optional[int] = None) -> Ring:
    """``z1 z2 c00 : degrevlex`` (order optional, default degrevlex)."""
    names_part, sep, order_part = text.partition(":")
    names = names_part.replace(",", " ").split()
    if not names:
        raise ParseError("ring declares no variables", line, 1)
    try:
        order = TermOrder.parse(order_part) if sep else TermOrder()
    except ParseError as exc:
        raise ParseError(exc.message, line, len(names_part) + 2) from None
    try:
        return Ring(names, order)
    except ValueError as exc:
        raise ParseError(str(exc), line, 1) from None


# ── Problem files ─────────────────────────────────────────────────────────────

@dataclass
class ProblemFile:
    """Parsed problem file; ``kind`` is ``cover`` or ``ideal``."""

    ring: Ring
    generators: List[Tuple[str, Polynomial]] = field(default_factory=list)
    # (text, line, column offset); parsed against the c unknowns once q is known
    trace_free: List[Tuple[str, int, int]] = field(default_factory=list)
    syzygies: List[List[Polynomial]] = field(default_factory=list)
    source: Optional[str] = None
    # False when the ring line leaves the order to the caller
    explicit_order: bool = True

    @property
    def kind(self) -> str:
        if self.generators and all(_GEN_RE.match(name) for name, _ in self.generators):
            return "cover"
        return "ideal"

    def polynomials(self) -> List[Polynomial]:
        return [p for _, p in self.generators]

    def to_ideal(self):
        from coverforge.core.groebner import Ideal

        return Ideal(self.ring, self.polynomials())

    def to_cover_problem(self):
        from coverforge.core.cover import CoverProblem

        ordered = sorted(self.generators, key=lambda item: int(_GEN_RE.match(item[0]).group(1)))
        indices = [int(_GEN_RE.match(name).group(1)) for name, _ in ordered]
        if indices != list(range(len(indices))):
            raise ParseError(f"cover generators must be q0..q{len(indices) - 1}, got {indices}")
        name = Path(self.source).stem if self.source else "cover"
        problem = CoverProblem.from_ring(
            self.ring,
            [p for _, p in ordered],
            syzygies=self.syzygies or None,
            name=name,
        )
        if self.trace_free:
            forms: List[Polynomial] = []
            for text, line, offset in self.trace_free:
                forms.extend(parse_polynomial_list(text, problem.c_ring, line, offset))
            problem = problem.with_trace_free(forms)
        return problem


def parse_problem(text: str, source: Optional[str] = None) -> ProblemFile:
    ring: Optional[Ring] = None
    problem: Optional[ProblemFile] = None
    seen: Dict[str, int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        content = raw.split("#", 1)[0]
        if not content.strip():
            continue
        stripped = content.strip()
        indent = len(content) - len(content.lstrip())
        if stripped.startswith("ring ") or stripped == "ring":
            if ring is not None:
                raise ParseError("ring declared twice", lineno, indent + 1)
            ring = parse_ring_header(stripped[4:], lineno)
            problem = ProblemFile(ring, source=source, explicit_order=":" in stripped)
            continue
        name, eq, rhs = content.partition("=")
        if not eq:
            raise ParseError("expected 'name = polynomial'", lineno, indent + 1)
        name = name.strip()
        if problem is None:
            raise ParseError("'ring' declaration must come first", lineno, indent + 1)
        rhs_offset = len(content.split("=", 1)[0]) + 1
        if name == "tracefree":
            problem.trace_free.append((rhs, lineno, rhs_offset))
        elif name == "syzygy":
            problem.syzygies.append(parse_polynomial_list(rhs, problem.ring, lineno, rhs_offset))
        else:
            if not re.match(r"[A-Za-z][A-Za-z0-9_]*\Z", name):
                raise ParseError(f"invalid generator name {name!r}", lineno, indent + 1)
            if name in seen:
                raise ParseError(f"{name!r} already defined on line {seen[name]}", lineno, indent + 1)
            seen[name] = lineno
            problem.generators.append((name, parse_polynomial(rhs, problem.ring, lineno, rhs_offset)))
    if problem is None:
        raise ParseError("no 'ring' declaration found")
    if not problem.generators:
        raise ParseError("problem defines no generators")
    log.debug("parsed %s: %d generators (%s)", source or "<text>", len(problem.generators), problem.kind)
    return problem


def load_problem(path: Union[str, Path]) -> ProblemFile:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from exc
    return parse_problem(text, source=str(path))


def parse_point(text: str, names: Sequence[str]) -> Dict[str, object]:
    """``a=1,b=-2/3`` or positional ``1,-2/3`` against ``names``."""
    parts = [p.strip() for p in text.split(",") if p.strip()]
    values: Dict[str, object] = {}
    try:
        if parts and all("=" in p for p in parts):
            for part in parts:
                key, _, value = part.partition("=")
                values[key.strip()] = to_rational(value)
        else:
            if len(parts) != len(names):
                raise ParseError(f"expected {len(names)} values for {', '.join(names)}, got {len(parts)}")
            values = {n: to_rational(v) for n, v in zip(names, parts)}
    except ValueError as exc:
        raise ParseError(str(exc)) from None
    return values
