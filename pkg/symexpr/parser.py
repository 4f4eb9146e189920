"""
Recursive-descent parser for rational expressions.

Grammar (conventional precedence, ``^`` binds tightest and takes a
non-negative integer literal)::

    expr   := term (("+" | "-") term)*
    term   := unary (("*" | "/") unary)*
    unary  := "-" unary | "+" unary | power
    power  := atom ("^" INT)?
    atom   := INT | NAME | "(" expr ")"
"""
import logging
import re
from typing import List, Tuple

from symexpr.rational import Rat
from symexpr.varset import VarSet
from utils.errors import ParseError, UnknownVariableError
from utils.formatters import truncate_expression

logger = logging.getLogger(__name__)

INT_RE = re.compile(r"\d+")
NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
TOKEN_RE = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\*\*|[-+*/^()])|(\S))")

Token = Tuple[str, str, int]


def tokenize(text: str) -> List[Token]:
    """Split ``text`` into (kind, value, position) tokens."""
    tokens: List[Token] = []
    pos = 0
    while pos < len(text):
        match = TOKEN_RE.match(text, pos)
        if match is None:
            break
        number, name, op, junk = match.groups()
        start = match.start(match.lastindex)
        if junk is not None:
            raise ParseError(f"unexpected character {junk!r}", start, text)
        if number is not None:
            tokens.append(("int", number, start))
        elif name is not None:
            tokens.append(("name", name, start))
        else:
            tokens.append(("op", "^" if op == "**" else op, start))
        pos = match.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, vars: VarSet):
        self.text = text
        self.vars = vars
        self.tokens = tokenize(text)
        self.pos = 0

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def take(self) -> Token:
        token = self.tokens[self.pos]
        self.pos += 1
        return token

    def error(self, message: str, token: Token) -> ParseError:
        return ParseError(message, token[2], self.text)

    def parse(self) -> Rat:
        if self.peek()[0] == "end":
            raise self.error("empty expression", self.peek())
        result = self.expr()
        token = self.peek()
        if token[0] != "end":
            raise self.error(f"unexpected token {token[1]!r}", token)
        return result

    def expr(self) -> Rat:
        result = self.term()
        while self.peek()[:2] in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            rhs = self.term()
            result = result + rhs if op == "+" else result - rhs
        return result

    def term(self) -> Rat:
        result = self.unary()
        while self.peek()[:2] in (("op", "*"), ("op", "/")):
            token = self.take()
            rhs = self.unary()
            if token[1] == "*":
                result = result * rhs
            else:
                if rhs.is_zero():
                    raise self.error("division by zero", token)
                result = result / rhs
        return result

    def unary(self) -> Rat:
        token = self.peek()
        if token[:2] == ("op", "-"):
            self.take()
            return -self.unary()
        if token[:2] == ("op", "+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self) -> Rat:
        base = self.atom()
        if self.peek()[:2] == ("op", "^"):
            self.take()
            token = self.take()
            if token[0] != "int":
                raise self.error("exponent must be a non-negative integer literal", token)
            return base ** int(token[1])
        return base

    def atom(self) -> Rat:
        token = self.take()
        kind, value, position = token
        if kind == "int":
            return Rat.const(int(value), self.vars)
        if kind == "name":
            if value not in self.vars:
                raise UnknownVariableError(f"unknown variable {value!r}", position, self.text)
            return Rat.var(value, self.vars)
        if token[:2] == ("op", "("):
            inner = self.expr()
            closing = self.take()
            if closing[:2] != ("op", ")"):
                raise self.error(f"missing ')' for '(' at position {position}", closing)
            return inner
        if kind == "end":
            raise self.error("unexpected end of expression", token)
        raise self.error(f"unexpected token {value!r}", token)


def parse_expr(text: str, vars: VarSet) -> Rat:
    """Parse ``text`` into a canonical ``Rat`` over ``vars``.

    Args:
        text: Expression in the infix grammar above
        vars: Declared variables; any other name is an error

    Returns:
        The canonical rational function

    Raises:
        ParseError: On a syntax error or a division by literal zero
        UnknownVariableError: On an undeclared name
    """
    logger.debug("parsing %r over %s", truncate_expression(text), vars)
    return _Parser(text, vars).parse()
