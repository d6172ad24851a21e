"""
Tokenizer and recursive-descent parser for the textual event grammar.

    event       := disjunction
    disjunction := conjunction ('|' conjunction)*
    conjunction := unary ('&' unary)*
    unary       := '!' unary | ATOM | 'TOP' | 'BOT' | '(' event ')'
    conditional := '[' event ':' event ']'

The token stream is shared with the program parser, which adds the
statement and query keywords on top of it.
"""

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional

from engine.events import BOT, TOP, And, Atom, ConditionalEvent, Event, Not, Or
from errors import EventAlgebraError, ProgramSyntaxError

_TOKEN_SPEC = [
    ("SPACE", r"[ \t\r]+"),
    ("ARROW", r"~>"),
    ("NUMBER", r"\d+/\d+|\d*\.\d+|\d+"),
    ("NAME", r"[A-Za-z_][A-Za-z0-9_]*"),
    ("NOT", r"!"),
    ("AND", r"&"),
    ("OR", r"\|"),
    ("LPAREN", r"\("),
    ("RPAREN", r"\)"),
    ("LBRACK", r"\["),
    ("RBRACK", r"\]"),
    ("COLON", r":"),
    ("EQUALS", r"="),
    ("COMMA", r","),
]
_TOKEN_RE = re.compile("|".join(f"(?P<{name}>{pattern})" for name, pattern in _TOKEN_SPEC))


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    column: int  # 1-based


def tokenize(text: str, line: int = 1, column_offset: int = 0) -> List[Token]:
    tokens: List[Token] = []
    position = 0
    while position < len(text):
        match = _TOKEN_RE.match(text, position)
        if match is None:
            raise ProgramSyntaxError(
                f"Unexpected character {text[position]!r}", line, column_offset + position + 1
            )
        if match.lastgroup != "SPACE":
            tokens.append(Token(match.lastgroup, match.group(), column_offset + position + 1))
        position = match.end()
    return tokens


def parse_number(text: str) -> Fraction:
    """Exact value of a `p/q`, integer or finite decimal literal."""
    if "/" in text:
        numerator, denominator = text.split("/")
        if int(denominator) == 0:
            raise ValueError("zero denominator")
        return Fraction(int(numerator), int(denominator))
    return Fraction(text)


class TokenStream:
    def __init__(self, tokens: List[Token], line: int = 1, end_column: int = 1):
        self.tokens = tokens
        self.index = 0
        self.line = line
        self.end_column = end_column

    def peek(self, offset: int = 0) -> Optional[Token]:
        position = self.index + offset
        return self.tokens[position] if position < len(self.tokens) else None

    def at_end(self) -> bool:
        return self.index >= len(self.tokens)

    def error(self, message: str, token: Optional[Token] = None) -> ProgramSyntaxError:
        token = token if token is not None else self.peek()
        column = token.column if token is not None else self.end_column
        return ProgramSyntaxError(message, self.line, column)

    def advance(self) -> Token:
        token = self.peek()
        if token is None:
            raise self.error("Unexpected end of line")
        self.index += 1
        return token

    def accept(self, kind: str, text: Optional[str] = None) -> Optional[Token]:
        token = self.peek()
        if token is not None and token.kind == kind and (text is None or token.text == text):
            self.index += 1
            return token
        return None

    def expect(self, kind: str, text: Optional[str] = None) -> Token:
        token = self.accept(kind, text)
        if token is None:
            found = self.peek()
            wanted = text or kind
            raise self.error(f"Expected {wanted}, found {found.text if found else 'end of line'}")
        return token

    def expect_end(self) -> None:
        if not self.at_end():
            raise self.error(f"Unexpected {self.peek().text!r}")

    # Events

    def event(self) -> Event:
        node = self._conjunction()
        while self.accept("OR"):
            node = Or(node, self._conjunction())
        return node

    def _conjunction(self) -> Event:
        node = self._unary()
        while self.accept("AND"):
            node = And(node, self._unary())
        return node

    def _unary(self) -> Event:
        if self.accept("NOT"):
            return Not(self._unary())
        if self.accept("LPAREN"):
            node = self.event()
            self.expect("RPAREN")
            return node
        token = self.peek()
        if token is None or token.kind != "NAME":
            raise self.error("Expected an event")
        self.advance()
        if token.text == "TOP":
            return TOP
        if token.text == "BOT":
            return BOT
        return Atom(token.text)

    def conditional(self) -> ConditionalEvent:
        opening = self.expect("LBRACK")
        consequent = self.event()
        self.expect("COLON")
        antecedent = self.event()
        self.expect("RBRACK")
        try:
            return ConditionalEvent(consequent, antecedent)
        except EventAlgebraError as exc:
            raise self.error(str(exc), opening) from exc

    def number(self) -> Fraction:
        token = self.expect("NUMBER")
        try:
            return parse_number(token.text)
        except (ValueError, ZeroDivisionError) as exc:
            raise self.error(f"Bad number {token.text!r}", token) from exc


def parse_event(text: str) -> Event:
    stream = TokenStream(tokenize(text), end_column=len(text) + 1)
    event = stream.event()
    stream.expect_end()
    return event


def parse_conditional(text: str) -> ConditionalEvent:
    stream = TokenStream(tokenize(text), end_column=len(text) + 1)
    conditional = stream.conditional()
    stream.expect_end()
    return conditional
