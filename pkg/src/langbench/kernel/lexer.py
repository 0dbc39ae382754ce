"""Language-neutral tokenizer and token stream used by all textual languages.

Keywords are not known here: they arrive as ``IDENT`` tokens and each parser
decides which identifiers it treats as keywords.
"""

from __future__ import annotations

from dataclasses import dataclass

from .diagnostics import Span

IDENT = "IDENT"
INT = "INT"
STRING = "STRING"
PUNCT = "PUNCT"
EOF = "EOF"

# longest first
_PUNCTUATION = ("->", "==", "!=", "<=", ">=", "&&", "||",
                "{", "}", "(", ")", "[", "]", ";", ",", ".", "/", "=", "<",
                ">", "+", "-", "*", "%", "!")


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    span: Span

    def is_(self, text: str) -> bool:
        return self.kind in (PUNCT, IDENT) and self.text == text


class ParseError(Exception):
    """Syntax error; ``code`` is filled in by the language that owns the construct."""

    def __init__(self, span: Span, message: str, code: str | None = None):
        super().__init__(message)
        self.span = span
        self.message = message
        self.code = code

    def claim(self, code: str) -> "ParseError":
        if self.code is None:
            self.code = code
        return self


def tokenize(text: str, filename: str = "<string>") -> list[Token]:
    tokens: list[Token] = []
    i, line, col = 0, 1, 1
    n = len(text)

    def advance(count: int):
        nonlocal i, line, col
        for _ in range(count):
            if text[i] == "\n":
                line += 1
                col = 1
            else:
                col += 1
            i += 1

    while i < n:
        c = text[i]
        if c in " \t\r\n":
            advance(1)
            continue
        if text.startswith("//", i):
            while i < n and text[i] != "\n":
                advance(1)
            continue
        if text.startswith("/*", i):
            start = Span(filename, line, col)
            end = text.find("*/", i + 2)
            if end < 0:
                raise ParseError(start, "unterminated block comment")
            advance(end + 2 - i)
            continue
        sl, sc = line, col
        if c.isalpha() or c == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            kind, value = IDENT, text[i:j]
        elif c.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            kind, value = INT, text[i:j]
        elif c == '"':
            j = i + 1
            while j < n and text[j] != '"':
                if text[j] == "\n":
                    break
                j += 2 if text[j] == "\\" else 1
            if j >= n or text[j] != '"':
                raise ParseError(Span(filename, sl, sc), "unterminated string literal")
            j += 1
            kind, value = STRING, text[i:j]
        else:
            for p in _PUNCTUATION:
                if text.startswith(p, i):
                    kind, value = PUNCT, p
                    j = i + len(p)
                    break
            else:
                raise ParseError(Span(filename, sl, sc), f"unexpected character {c!r}")
        advance(j - i)
        tokens.append(Token(kind, value, Span(filename, sl, sc, line, col)))
    tokens.append(Token(EOF, "", Span(filename, line, col, line, col)))
    return tokens


def unquote(literal: str) -> str:
    body = literal[1:-1]
    out = []
    k = 0
    while k < len(body):
        ch = body[k]
        if ch == "\\" and k + 1 < len(body):
            nxt = body[k + 1]
            out.append({"n": "\n", "t": "\t"}.get(nxt, nxt))
            k += 2
        else:
            out.append(ch)
            k += 1
    return "".join(out)


def quote(value: str) -> str:
    escaped = (value.replace("\\", "\\\\").replace('"', '\\"')
               .replace("\n", "\\n").replace("\t", "\\t"))
    return f'"{escaped}"'


class TokenStream:
    """Cursor over a token list shared between a host parser and embedded ones."""

    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.pos = 0

    @classmethod
    def from_text(cls, text: str, filename: str = "<string>") -> "TokenStream":
        return cls(tokenize(text, filename))

    @property
    def current(self) -> Token:
        return self.tokens[self.pos]

    def peek(self, offset: int = 1) -> Token:
        return self.tokens[min(self.pos + offset, len(self.tokens) - 1)]

    def at(self, text: str) -> bool:
        return self.current.is_(text)

    def at_kind(self, kind: str) -> bool:
        return self.current.kind == kind

    def at_end(self) -> bool:
        return self.current.kind == EOF

    def advance(self) -> Token:
        tok = self.current
        if tok.kind != EOF:
            self.pos += 1
        return tok

    def accept(self, text: str) -> Token | None:
        if self.at(text):
            return self.advance()
        return None

    def expect(self, text: str) -> Token:
        if not self.at(text):
            self.fail(f"expected '{text}'")
        return self.advance()

    def expect_kind(self, kind: str, what: str | None = None) -> Token:
        if self.current.kind != kind:
            self.fail(f"expected {what or kind.lower()}")
        return self.advance()

    def expect_ident(self, what: str = "identifier") -> Token:
        return self.expect_kind(IDENT, what)

    def qualified_name(self) -> tuple[str, Span]:
        first = self.expect_ident("name")
        parts = [first.text]
        while self.at(".") and self.peek().kind == IDENT:
            self.advance()
            parts.append(self.advance().text)
        return ".".join(parts), first.span

    def fail(self, message: str):
        tok = self.current
        found = "end of file" if tok.kind == EOF else f"'{tok.text}'"
        raise ParseError(tok.span, f"{message}, found {found}")

    def recover_element(self, start: int | None = None) -> None:
        """Skip a broken element, rescanning from its first token ``start``.

        Stops after a ``;`` or a balanced ``}`` at the element's own depth, or
        before the ``}`` that closes the enclosing block.
        """
        if start is not None:
            self.pos = start
        depth = 0
        opened = False
        while not self.at_end():
            tok = self.current
            if tok.is_("{"):
                depth += 1
                opened = True
            elif tok.is_("}"):
                if depth == 0:
                    return
                depth -= 1
                if depth == 0 and opened:
                    self.advance()
                    self.accept(";")
                    return
            elif tok.is_(";") and depth == 0:
                self.advance()
                return
            self.advance()
