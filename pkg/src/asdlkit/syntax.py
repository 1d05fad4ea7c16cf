"""Tokenizer, recursive-descent parser, and pretty printer for ASDL text.

Concrete grammar accepted here::

    module      ::= "module" Name "{" definition* "}"
    definition  ::= TypeId "=" (product | sum)
    product     ::= fields ["attributes" fields]
    sum         ::= constructor ("|" constructor)* ["attributes" fields]
    constructor ::= ConId [fields]
    fields      ::= "(" field ("," field)* ")"
    field       ::= TypeId ["*"] [FieldId]

Type and field names start with a lowercase letter, constructor names
with an uppercase one. ``--`` starts a comment that runs to end of line.
Product attributes are accepted syntactically and rejected by the checker.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterator, Union

from .errors import AsdlSyntaxError, IllegalCharacter

KEYWORDS = frozenset({"module", "attributes"})
PUNCTUATION = "{}=|(),*?"


@dataclass(frozen=True, slots=True)
class SourceSpan:
    """1-based line and column, 0-based UTF-8 byte offset."""

    line: int
    column: int
    offset: int

    def __str__(self) -> str:
        return f"{self.line}:{self.column}"


@dataclass(frozen=True, slots=True)
class Token:
    kind: str  # "ID", "CON", a keyword, a punctuation character, or "EOF"
    text: str
    span: SourceSpan

    def __repr__(self) -> str:
        return f"Token({self.kind!r}, {self.text!r}, {self.span})"


_TOKEN_RE = re.compile(
    r"""
    (?P<ws>[ \t\r\f\v]+)
  | (?P<nl>\n)
  | (?P<comment>--[^\n]*)
  | (?P<word>[A-Za-z][A-Za-z0-9_]*)
  | (?P<punct>[{}=|(),*?])
    """,
    re.VERBOSE,
)


def tokenize(text: str) -> list[Token]:
    """Split ``text`` into tokens. The list always ends with an ``EOF`` token."""
    tokens: list[Token] = []
    pos = 0
    line, line_start = 1, 0
    byte_off = 0
    n = len(text)
    while pos < n:
        m = _TOKEN_RE.match(text, pos)
        span = SourceSpan(line, pos - line_start + 1, byte_off)
        if m is None:
            raise IllegalCharacter(f"illegal character {text[pos]!r}", span)
        lexeme = m.group()
        kind = m.lastgroup
        if kind == "nl":
            line += 1
            line_start = m.end()
        elif kind == "word":
            if lexeme in KEYWORDS:
                tokens.append(Token(lexeme, lexeme, span))
            elif lexeme[0].isupper():
                tokens.append(Token("CON", lexeme, span))
            else:
                tokens.append(Token("ID", lexeme, span))
        elif kind == "punct":
            tokens.append(Token(lexeme, lexeme, span))
        byte_off += len(lexeme.encode("utf-8"))
        pos = m.end()
    tokens.append(Token("EOF", "", SourceSpan(line, pos - line_start + 1, byte_off)))
    return tokens


# -- unresolved AST ---------------------------------------------------------
# Spans are excluded from equality so that re-parsed specs compare equal.

@dataclass(frozen=True)
class RawField:
    type_name: str
    seq: bool = False
    name: str | None = None
    span: SourceSpan | None = field(default=None, compare=False, repr=False)

    @property
    def qualifier(self) -> str:
        return "sequence" if self.seq else "single"


@dataclass(frozen=True)
class RawConstructor:
    name: str
    fields: tuple[RawField, ...] = ()
    span: SourceSpan | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class SumBody:
    constructors: tuple[RawConstructor, ...]
    attributes: tuple[RawField, ...] = ()


@dataclass(frozen=True)
class ProductBody:
    fields: tuple[RawField, ...]
    attributes: tuple[RawField, ...] = ()


@dataclass(frozen=True)
class RawTypeDef:
    name: str
    body: Union[SumBody, ProductBody]
    span: SourceSpan | None = field(default=None, compare=False, repr=False)

    @property
    def is_sum(self) -> bool:
        return isinstance(self.body, SumBody)


@dataclass(frozen=True)
class RawSpec:
    name: str
    definitions: tuple[RawTypeDef, ...] = ()
    span: SourceSpan | None = field(default=None, compare=False, repr=False)


# -- parser -----------------------------------------------------------------

class _Parser:
    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.pos = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.pos]

    def peek(self, k: int = 1) -> Token:
        return self.tokens[min(self.pos + k, len(self.tokens) - 1)]

    def advance(self) -> Token:
        t = self.tokens[self.pos]
        if t.kind != "EOF":
            self.pos += 1
        return t

    def fail(self, what: str, expected: set[str]):
        t = self.tok
        found = "end of input" if t.kind == "EOF" else repr(t.text)
        raise AsdlSyntaxError(f"{what}, found {found}", t.span, expected)

    def expect(self, kind: str, what: str | None = None) -> Token:
        if self.tok.kind != kind:
            self.fail(what or f"expected {kind!r}", {kind})
        return self.advance()

    def module(self) -> RawSpec:
        start = self.expect("module", "expected 'module'")
        if self.tok.kind not in ("ID", "CON"):
            self.fail("expected module name", {"identifier"})
        name = self.advance().text
        self.expect("{")
        defs = []
        while self.tok.kind != "}":
            defs.append(self.definition())
        self.advance()
        if self.tok.kind == "module":
            raise AsdlSyntaxError("only one module per file is allowed", self.tok.span)
        if self.tok.kind != "EOF":
            self.fail("unexpected text after module", {"end of input"})
        return RawSpec(name, tuple(defs), start.span)

    def definition(self) -> RawTypeDef:
        t = self.tok
        if t.kind == "CON":
            raise AsdlSyntaxError(
                f"type name {t.text!r} must start with a lowercase letter", t.span, {"type name"})
        if t.kind != "ID":
            self.fail("expected a type definition or '}'", {"type name", "}"})
        self.advance()
        self.expect("=")
        if self.tok.kind == "(":
            fields = self.fields()
            attrs = self.attributes()
            return RawTypeDef(t.text, ProductBody(fields, attrs), t.span)
        ctors = [self.constructor()]
        while self.tok.kind == "|":
            self.advance()
            ctors.append(self.constructor())
        attrs = self.attributes()
        return RawTypeDef(t.text, SumBody(tuple(ctors), attrs), t.span)

    def attributes(self) -> tuple[RawField, ...]:
        if self.tok.kind != "attributes":
            return ()
        self.advance()
        return self.fields()

    def constructor(self) -> RawConstructor:
        t = self.tok
        if t.kind == "ID":
            raise AsdlSyntaxError(
                f"constructor name {t.text!r} must start with an uppercase letter",
                t.span, {"constructor name"})
        if t.kind != "CON":
            self.fail("expected a constructor", {"constructor name", "("})
        self.advance()
        fields: tuple[RawField, ...] = ()
        if self.tok.kind == "(":
            fields = self.fields()
        return RawConstructor(t.text, fields, t.span)

    def fields(self) -> tuple[RawField, ...]:
        self.expect("(")
        out = [self.field()]
        while self.tok.kind == ",":
            self.advance()
            out.append(self.field())
        if self.tok.kind != ")":
            self.fail("expected ',' or ')'", {",", ")"})
        self.advance()
        return tuple(out)

    def field(self) -> RawField:
        t = self.tok
        if t.kind == "CON":
            raise AsdlSyntaxError(
                f"field type {t.text!r} must start with a lowercase letter", t.span, {"type name"})
        if t.kind != "ID":
            self.fail("expected a field type", {"type name"})
        self.advance()
        seq = False
        if self.tok.kind == "*":
            self.advance()
            seq = True
        elif self.tok.kind == "?":
            raise AsdlSyntaxError(
                "the optional qualifier '?' is not supported; use '*' for lists",
                self.tok.span, {"*", "field name", ",", ")"})
        name = None
        if self.tok.kind == "ID":
            name = self.advance().text
        elif self.tok.kind == "CON":
            raise AsdlSyntaxError(
                f"field name {self.tok.text!r} must start with a lowercase letter",
                self.tok.span, {"field name"})
        return RawField(t.text, seq, name, t.span)


def parse_spec(text: str) -> RawSpec:
    """Parse ASDL source text. The first error aborts parsing."""
    return _Parser(tokenize(text)).module()


# -- pretty printer ---------------------------------------------------------

def _field_text(f: RawField) -> str:
    s = f.type_name + ("*" if f.seq else "")
    return f"{s} {f.name}" if f.name else s


def _fields_text(fields: tuple[RawField, ...]) -> str:
    return "(" + ", ".join(_field_text(f) for f in fields) + ")"


def _definition_lines(d: RawTypeDef, indent: str) -> Iterator[str]:
    head = f"{indent}{d.name} = "
    pad = " " * (len(head) - 2)
    if isinstance(d.body, ProductBody):
        yield head + _fields_text(d.body.fields)
        attrs = d.body.attributes
    else:
        for i, c in enumerate(d.body.constructors):
            text = c.name + (_fields_text(c.fields) if c.fields else "")
            yield (head if i == 0 else pad + "| ") + text
        attrs = d.body.attributes
    if attrs:
        yield " " * len(head) + "attributes" + _fields_text(attrs)


def pretty_print(spec: RawSpec) -> str:
    """Canonical layout: one constructor per line with ``|`` under ``=``."""
    lines = [f"module {spec.name} {{"]
    for i, d in enumerate(spec.definitions):
        if i:
            lines.append("")
        lines.extend(_definition_lines(d, "    "))
    lines.append("}")
    return "\n".join(lines) + "\n"
