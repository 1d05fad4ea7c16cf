"""Human-readable text form of values, used by the command-line tool.

Grammar (schema-directed: the expected type decides how a token is read)::

    value   ::= INT | STRING | ident | list | sum | product
    sum     ::= "(" Constructor (":" attrname value)* value* ")"
    product ::= "(" "tuple" value* ")"
    list    ::= "[" value* "]"
    ident   ::= bare | "|" chars "|"

INT is an optionally signed decimal integer; STRING is a JSON string
literal. A bare identifier matches ``[A-Za-z_$][A-Za-z0-9_$.]*``; any
other identifier text is written between bars with ``\\|`` and ``\\\\``
escapes. ``;`` starts a comment that runs to end of line. Attributes may
appear in any order but must all be present; the printer emits them in
declaration order.
"""

from __future__ import annotations

import json
import re
from typing import Iterator

from .errors import TextFormError, UnknownConstructor
from .sema import CheckedField, SchemaEnv
from .syntax import SourceSpan
from .values import IdentifierV, IntV, ListV, ProductV, StringV, SumV, Value, check_value

_BARE_IDENT = re.compile(r"[A-Za-z_$][A-Za-z0-9_$.]*\Z")

_TOKEN = re.compile(
    r"""
    (?P<ws>\s+|;[^\n]*)
  | (?P<punct>[()\[\]:])
  | (?P<int>[-+]?[0-9]+)(?![A-Za-z0-9_$.])
  | (?P<string>"(?:[^"\\]|\\.)*")
  | (?P<bar>\|(?:[^|\\]|\\.)*\|)
  | (?P<word>[A-Za-z_$][A-Za-z0-9_$.]*)
    """,
    re.VERBOSE | re.DOTALL,
)


# -- printing ---------------------------------------------------------------

def format_identifier(text: str) -> str:
    if _BARE_IDENT.match(text) and text != "tuple":
        return text
    return "|" + text.replace("\\", "\\\\").replace("|", "\\|") + "|"


def _fmt(env: SchemaEnv, type_name: str, v: Value, out: list[str]) -> None:
    if type_name == "int":
        out.append(str(v.value))
    elif type_name == "string":
        out.append(json.dumps(v.value, ensure_ascii=False))
    elif type_name == "identifier":
        out.append(format_identifier(v.text))
    else:
        td = env.type(type_name)
        if td.is_sum:
            ctor = td.constructor(v.ctor)
            out.append("(" + v.ctor)
            for f, a in zip(ctor.attributes, v.attrs):
                out.append(f" :{f.name} ")
                _fmt_field(env, f, a, out)
            fields = zip(ctor.fields, v.fields)
        else:
            out.append("(tuple")
            fields = zip(td.fields, v.fields)
        for f, fv in fields:
            out.append(" ")
            _fmt_field(env, f, fv, out)
        out.append(")")


def _fmt_field(env: SchemaEnv, f: CheckedField, v: Value, out: list[str]) -> None:
    if not f.seq:
        _fmt(env, f.type_name, v, out)
        return
    out.append("[")
    for i, item in enumerate(v.items):
        if i:
            out.append(" ")
        _fmt(env, f.type_name, item, out)
    out.append("]")


def format_value(env: SchemaEnv, type_name: str, v: Value) -> str:
    """Canonical single-line text of ``v``."""
    type_name = env.resolve_type_name(type_name)
    check_value(env, type_name, v)
    out: list[str] = []
    _fmt(env, type_name, v, out)
    return "".join(out)


# -- parsing ----------------------------------------------------------------

class _Tokens:
    def __init__(self, text: str):
        self.text = text
        self.items = list(self._scan(text))
        self.i = 0

    def _scan(self, text: str) -> Iterator[tuple[str, str, int]]:
        pos = 0
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if m is None:
                raise self.error(f"unexpected character {text[pos]!r}", pos)
            if m.lastgroup != "ws":
                yield m.lastgroup, m.group(), pos
            pos = m.end()
        yield "eof", "", len(text)

    def error(self, msg: str, offset: int) -> TextFormError:
        line = self.text.count("\n", 0, offset) + 1
        col = offset - (self.text.rfind("\n", 0, offset) + 1) + 1
        return TextFormError(msg, offset, SourceSpan(line, col, len(self.text[:offset].encode())))

    @property
    def tok(self) -> tuple[str, str, int]:
        return self.items[self.i]

    def next(self) -> tuple[str, str, int]:
        t = self.items[self.i]
        if t[0] != "eof":
            self.i += 1
        return t

    def expect(self, text: str) -> None:
        kind, tok, pos = self.next()
        if tok != text or kind == "string":
            found = "end of input" if kind == "eof" else repr(tok)
            raise self.error(f"expected {text!r}, found {found}", pos)


class _Parser:
    def __init__(self, env: SchemaEnv, toks: _Tokens):
        self.env = env
        self.toks = toks

    def value(self, type_name: str) -> Value:
        toks = self.toks
        kind, tok, pos = toks.tok
        if type_name == "int":
            if kind != "int":
                raise toks.error(f"expected an integer, found {tok!r}", pos)
            toks.next()
            return IntV(int(tok))
        if type_name == "string":
            if kind != "string":
                raise toks.error(f"expected a string literal, found {tok!r}", pos)
            toks.next()
            return StringV(json.loads(tok, strict=False))
        if type_name == "identifier":
            toks.next()
            if kind == "word":
                return IdentifierV(tok)
            if kind == "bar":
                return IdentifierV(re.sub(r"\\(.)", r"\1", tok[1:-1], flags=re.DOTALL))
            raise toks.error(f"expected an identifier, found {tok!r}", pos)
        td = self.env.type(type_name)
        toks.expect("(")
        kind, tok, pos = toks.next()
        if not td.is_sum:
            if tok != "tuple" or kind != "word":
                raise toks.error(f"expected 'tuple' for product {type_name}, found {tok!r}", pos)
            fields = tuple(self.field(f) for f in td.fields)
            toks.expect(")")
            return ProductV(type_name, fields)
        if kind != "word":
            raise toks.error(f"expected a constructor of {type_name}, found {tok!r}", pos)
        try:
            ctor = td.constructor(tok)
        except UnknownConstructor:
            raise toks.error(f"{tok!r} is not a constructor of {type_name}", pos) from None
        attrs: dict[str, Value] = {}
        by_name = {a.name: a for a in ctor.attributes}
        while toks.tok[1] == ":" and toks.tok[0] == "punct":
            toks.next()
            kind, name, pos = toks.next()
            if name not in by_name:
                raise toks.error(f"{ctor.name} has no attribute {name!r}", pos)
            if name in attrs:
                raise toks.error(f"attribute {name!r} given twice", pos)
            attrs[name] = self.field(by_name[name])
        missing = [a.name for a in ctor.attributes if a.name not in attrs]
        if missing:
            raise toks.error(f"{ctor.name} is missing attribute(s) {', '.join(missing)}",
                             toks.tok[2])
        fields = tuple(self.field(f) for f in ctor.fields)
        toks.expect(")")
        return SumV(type_name, ctor.name, tuple(attrs[a.name] for a in ctor.attributes), fields)

    def field(self, f: CheckedField) -> Value:
        if not f.seq:
            return self.value(f.type_name)
        self.toks.expect("[")
        items = []
        while self.toks.tok[1] != "]" or self.toks.tok[0] != "punct":
            if self.toks.tok[0] == "eof":
                raise self.toks.error("unterminated list", self.toks.tok[2])
            items.append(self.value(f.type_name))
        self.toks.next()
        return ListV(tuple(items))


def parse_values(env: SchemaEnv, type_name: str, text: str) -> list[Value]:
    """Parse zero or more values of ``type_name`` from ``text``."""
    type_name = env.resolve_type_name(type_name)
    toks = _Tokens(text)
    p = _Parser(env, toks)
    out = []
    while toks.tok[0] != "eof":
        out.append(check_value(env, type_name, p.value(type_name)))
    return out


def parse_value(env: SchemaEnv, type_name: str, text: str) -> Value:
    """Parse exactly one value."""
    values = parse_values(env, type_name, text)
    if len(values) != 1:
        raise TextFormError(f"expected exactly one value, found {len(values)}", 0)
    return values[0]
