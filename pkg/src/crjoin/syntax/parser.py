"""
Recursive-descent parser for the surface syntax of λ-terms.

    term        ::= application
    application ::= atom* [abstraction]     (at least one item)
    abstraction ::= ("\\" | "λ") identifier+ "." term
    atom        ::= identifier | "(" term ")"

An abstraction body extends as far right as possible. Names are resolved
to de Bruijn indices while parsing; unbound names are free variables.
"""

from dataclasses import dataclass
from typing import Dict, List

from ..exceptions import ParseError
from ..terms.models import App, Bound, Lam, Term, Var

LAMBDAS = ("\\", "λ")


@dataclass(frozen=True)
class Token:
    """A lexical token with its 1-based source location."""

    kind: str  # "lambda", "dot", "lparen", "rparen", "ident" or "eof"
    text: str
    line: int
    column: int


def _is_ident_start(ch: str) -> bool:
    return ("a" <= ch <= "z") or ("A" <= ch <= "Z")


def _is_ident_char(ch: str) -> bool:
    return _is_ident_start(ch) or ("0" <= ch <= "9") or ch in "_'"


def tokenize(text: str, line: int = 1) -> List[Token]:
    """Split ``text`` into tokens; ``line`` numbers the first line."""
    tokens: List[Token] = []
    column = 1
    i = 0
    punctuation = {".": "dot", "(": "lparen", ")": "rparen"}
    while i < len(text):
        ch = text[i]
        if ch == "\n":
            line, column, i = line + 1, 1, i + 1
            continue
        if ch.isspace():
            column, i = column + 1, i + 1
            continue
        if ch in LAMBDAS:
            tokens.append(Token("lambda", ch, line, column))
        elif ch in punctuation:
            tokens.append(Token(punctuation[ch], ch, line, column))
        elif _is_ident_start(ch):
            start = i
            while i + 1 < len(text) and _is_ident_char(text[i + 1]):
                i += 1
            word = text[start : i + 1]
            tokens.append(Token("ident", word, line, column))
            column += len(word) - 1
        else:
            raise ParseError(f"unexpected character {ch!r}", line, column)
        column, i = column + 1, i + 1
    tokens.append(Token("eof", "", line, column))
    return tokens


class TermParser:
    """Parses one term from a token list."""

    def __init__(self, tokens: List[Token]):
        self.tokens = tokens
        self.index = 0
        # name -> depths of the binders currently introducing it
        self.binders: Dict[str, List[int]] = {}
        self.depth = 0

    @property
    def current(self) -> Token:
        return self.tokens[self.index]

    def advance(self) -> Token:
        token = self.tokens[self.index]
        if token.kind != "eof":
            self.index += 1
        return token

    def expect(self, kind: str, description: str) -> Token:
        token = self.current
        if token.kind != kind:
            found = token.text or "end of input"
            raise ParseError(f"expected {description}, found {found!r}", token.line, token.column)
        return self.advance()

    def parse(self) -> Term:
        term = self.application()
        self.expect("eof", "end of input")
        return term

    def application(self) -> Term:
        items: List[Term] = []
        while True:
            kind = self.current.kind
            if kind in ("ident", "lparen"):
                items.append(self.atom())
            elif kind == "lambda":
                items.append(self.abstraction())
                break
            else:
                break
        if not items:
            token = self.current
            found = token.text or "end of input"
            raise ParseError(f"expected a term, found {found!r}", token.line, token.column)
        term = items[0]
        for arg in items[1:]:
            term = App(term, arg)
        return term

    def abstraction(self) -> Term:
        self.expect("lambda", "a lambda")
        names = [self.expect("ident", "a binder name").text]
        while self.current.kind == "ident":
            names.append(self.advance().text)
        self.expect("dot", "'.'")

        for name in names:
            self.binders.setdefault(name, []).append(self.depth)
            self.depth += 1
        body = self.application()
        for name in reversed(names):
            self.depth -= 1
            self.binders[name].pop()
            body = Lam(body, name)
        return body

    def atom(self) -> Term:
        token = self.advance()
        if token.kind == "lparen":
            term = self.application()
            self.expect("rparen", "')'")
            return term
        depths = self.binders.get(token.text)
        if depths:
            return Bound(self.depth - depths[-1] - 1)
        return Var(token.text)


def parse_term(text: str, line: int = 1) -> Term:
    """
    Parse a λ-term.

    Args:
        text: Surface syntax, e.g. ``\\f x. f (f x)``
        line: Line number reported for the first line of ``text``

    Returns:
        Term: The parsed term; unbound names become free variables

    Raises:
        ParseError: With the line and column of the offending token
    """
    return TermParser(tokenize(text, line)).parse()

