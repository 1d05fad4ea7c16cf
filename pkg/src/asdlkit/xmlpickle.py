"""XML pickles.

One element per constructor (tagged with the constructor name) or product
(tagged with the type name). Scalar ASDL attributes become XML attributes;
fields become child elements named after the field, in declaration order.
A list field holds one element per item; scalar items are wrapped in an
element named after their built-in type (``<int>``, ``<string>``,
``<identifier>``). Attributes of non-scalar type are written as leading
child elements named after the attribute.

``symbols`` optionally maps an int attribute or field name to a table of
code -> symbolic name, e.g. ``{"suffix": {3: "P"}}``; the reader accepts
either the symbol or a decimal integer.
"""

from __future__ import annotations

import re
import xml.etree.ElementTree as ET
from typing import Iterable, Mapping, Sequence

from .errors import UnknownConstructor, XmlPickleError
from .sema import CheckedField, SchemaEnv
from .values import IdentifierV, IntV, ListV, ProductV, StringV, SumV, Value, check_value

Symbols = Mapping[str, Mapping[int, str]]

WRAPPER = "pickle"
SCALARS = ("int", "string", "identifier")

# characters XML 1.0 cannot carry at all, even as references
_ILLEGAL = re.compile("[\x00-\x08\x0b\x0c\x0e-\x1f\ufffe\uffff\ud800-\udfff]")


def _check_text(text: str, path: str) -> None:
    if _ILLEGAL.search(text):
        raise XmlPickleError(f"{path}: string contains characters XML cannot represent")


def _escape_text(text: str) -> str:
    return (text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")
            .replace("\r", "&#13;"))


def _escape_attr(text: str) -> str:
    return (_escape_text(text).replace('"', "&quot;")
            .replace("\n", "&#10;").replace("\t", "&#9;"))


class _XmlWriter:
    def __init__(self, env: SchemaEnv, symbols: Symbols | None, indent: str | None):
        self.env = env
        self.symbols = symbols or {}
        self.indent = indent
        self.parts: list[str] = []

    def nl(self, depth: int) -> str:
        return "" if self.indent is None else "\n" + self.indent * depth

    def scalar_text(self, type_name: str, name: str, v: Value, path: str) -> str:
        if type_name == "int":
            table = self.symbols.get(name)
            if table is not None and v.value in table:
                return table[v.value]
            return str(v.value)
        text = v.value if type_name == "string" else v.text
        _check_text(text, path)
        return text

    def is_xml_attr(self, f: CheckedField) -> bool:
        if f.seq:
            return False
        return f.builtin or self.env.type(f.type_name).enum_like

    def attr_text(self, f: CheckedField, v: Value, path: str) -> str:
        if f.builtin:
            return self.scalar_text(f.type_name, f.name, v, path)
        return v.ctor

    def element(self, type_name: str, v: Value, depth: int, path: str, name: str = "") -> None:
        out = self.parts
        if type_name in SCALARS:
            out.append(f"<{type_name}>{_escape_text(self.scalar_text(type_name, name, v, path))}"
                       f"</{type_name}>")
            return
        td = self.env.type(type_name)
        if td.is_sum:
            ctor = td.constructor(v.ctor)
            path = f"{path}/{v.ctor}"
            tag, pairs = v.ctor, []
            children = []
            for f, a in zip(ctor.attributes, v.attrs):
                if self.is_xml_attr(f):
                    pairs.append(f' {f.name}="{_escape_attr(self.attr_text(f, a, path))}"')
                else:
                    children.append((f, a))
            children.extend(zip(ctor.fields, v.fields))
        else:
            tag, pairs = type_name, []
            children = list(zip(td.fields, v.fields))
        if not children:
            out.append(f"<{tag}{''.join(pairs)}/>")
            return
        out.append(f"<{tag}{''.join(pairs)}>")
        for f, fv in children:
            out.append(self.nl(depth + 1))
            self.field(f, fv, depth + 1, f"{path}/{f.name}")
        out.append(f"{self.nl(depth)}</{tag}>")

    def field(self, f: CheckedField, v: Value, depth: int, path: str) -> None:
        out = self.parts
        if not f.seq and f.builtin:
            text = self.scalar_text(f.type_name, f.name, v, path)
            out.append(f"<{f.name}>{_escape_text(text)}</{f.name}>")
            return
        items = v.items if f.seq else (v,)
        if not items:
            out.append(f"<{f.name}/>")
            return
        out.append(f"<{f.name}>")
        for i, item in enumerate(items):
            out.append(self.nl(depth + 1))
            self.element(f.type_name, item, depth + 1, f"{path}[{i}]" if f.seq else path, f.name)
        out.append(f"{self.nl(depth)}</{f.name}>")


def write_xml(env: SchemaEnv, type_name: str, v: Value, symbols: Symbols | None = None,
              indent: str | None = "  ") -> str:
    """Render one value as an XML element (no declaration)."""
    type_name = env.resolve_type_name(type_name)
    check_value(env, type_name, v)
    w = _XmlWriter(env, symbols, indent)
    w.element(type_name, v, 0, type_name)
    return "".join(w.parts)


def write_xml_all(env: SchemaEnv, type_name: str, values: Sequence[Value],
                  symbols: Symbols | None = None, indent: str | None = "  ") -> str:
    """Render a whole pickle as an XML document. A single instance is the
    root element; any other count is wrapped in ``<pickle>`` (always, if the
    schema has a product type called ``pickle``)."""
    decl = '<?xml version="1.0" encoding="UTF-8"?>\n'
    if len(values) == 1 and not _wrapper_clash(env, type_name):
        return decl + write_xml(env, type_name, values[0], symbols, indent) + "\n"
    nl = "" if indent is None else "\n"
    body = "".join(
        (indent or "") + write_xml(env, type_name, v, symbols, indent).replace(
            "\n", "\n" + (indent or "")) + nl
        for v in values)
    return f"{decl}<{WRAPPER}>{nl}{body}</{WRAPPER}>\n"


def _wrapper_clash(env: SchemaEnv, type_name: str) -> bool:
    name = env.resolve_type_name(type_name)
    return name == WRAPPER and not env.type(name).is_sum


# -- reading ----------------------------------------------------------------

class _XmlReader:
    def __init__(self, env: SchemaEnv, symbols: Symbols | None):
        self.env = env
        self.reverse = {name: {sym: code for code, sym in table.items()}
                        for name, table in (symbols or {}).items()}

    def fail(self, path: str, msg: str):
        raise XmlPickleError(f"{path}: {msg}")

    def scalar(self, type_name: str, name: str, text: str | None, path: str) -> Value:
        text = text or ""
        if type_name == "int":
            code = self.reverse.get(name, {}).get(text)
            if code is not None:
                return IntV(code)
            try:
                return IntV(int(text.strip()))
            except ValueError:
                self.fail(path, f"expected an integer, got {text!r}")
        if type_name == "string":
            return StringV(text)
        return IdentifierV(text)

    def element(self, type_name: str, el: ET.Element, path: str, name: str = "") -> Value:
        if type_name in SCALARS:
            if el.tag != type_name:
                self.fail(path, f"expected <{type_name}>, got <{el.tag}>")
            self.no_children(el, path)
            return self.scalar(type_name, name, el.text, path)
        td = self.env.type(type_name)
        if not td.is_sum:
            if el.tag != type_name:
                self.fail(path, f"expected <{type_name}>, got <{el.tag}>")
            if el.attrib:
                self.fail(path, f"unexpected XML attributes on <{el.tag}>")
            return ProductV(type_name, self.children(td.fields, list(el), path))
        try:
            ctor = td.constructor(el.tag)
        except UnknownConstructor:
            self.fail(path, f"<{el.tag}> is not a constructor of {type_name}")
        path = f"{path}/{ctor.name}"
        attrib = dict(el.attrib)
        attrs: list[Value | None] = []
        nested = []
        for f in ctor.attributes:
            if self.is_xml_attr(f):
                if f.name not in attrib:
                    self.fail(path, f"missing attribute {f.name!r}")
                attrs.append(self.attr_value(f, attrib.pop(f.name), f"{path}/{f.name}"))
            else:
                attrs.append(None)
                nested.append(f)
        if attrib:
            self.fail(path, f"unexpected XML attributes {sorted(attrib)}")
        kids = list(el)
        nested_vals = self.children(nested, kids[:len(nested)], path, exact=False)
        it = iter(nested_vals)
        attrs = [a if a is not None else next(it) for a in attrs]
        fields = self.children(ctor.fields, kids[len(nested):], path)
        return SumV(type_name, ctor.name, tuple(attrs), fields)

    def is_xml_attr(self, f: CheckedField) -> bool:
        return not f.seq and (f.builtin or self.env.type(f.type_name).enum_like)

    def attr_value(self, f: CheckedField, text: str, path: str) -> Value:
        if f.builtin:
            return self.scalar(f.type_name, f.name, text, path)
        td = self.env.type(f.type_name)
        try:
            c = td.constructor(text)
        except UnknownConstructor:
            self.fail(path, f"{text!r} is not a constructor of {f.type_name}")
        return SumV(f.type_name, c.name)

    def no_children(self, el: ET.Element, path: str) -> None:
        if len(el):
            self.fail(path, f"<{el.tag}> must not have child elements")

    def children(self, fields: Sequence[CheckedField], kids: list[ET.Element], path: str,
                 exact: bool = True) -> tuple[Value, ...]:
        if len(kids) < len(fields) or (exact and len(kids) != len(fields)):
            self.fail(path, f"expected children {[f.name for f in fields]}, "
                            f"got {[k.tag for k in kids]}")
        return tuple(self.field(f, k, f"{path}/{f.name}") for f, k in zip(fields, kids))

    def field(self, f: CheckedField, el: ET.Element, path: str) -> Value:
        if el.tag != f.name:
            self.fail(path, f"expected <{f.name}>, got <{el.tag}>")
        if el.attrib:
            self.fail(path, f"unexpected XML attributes on <{el.tag}>")
        if not f.seq and f.builtin:
            self.no_children(el, path)
            return self.scalar(f.type_name, f.name, el.text, path)
        kids = list(el)
        if f.seq:
            return ListV(tuple(self.element(f.type_name, k, f"{path}[{i}]", f.name)
                               for i, k in enumerate(kids)))
        if len(kids) != 1:
            self.fail(path, f"expected exactly one child element, got {len(kids)}")
        return self.element(f.type_name, kids[0], path, f.name)


def _parse(text: str | bytes) -> ET.Element:
    try:
        return ET.fromstring(text)
    except ET.ParseError as e:
        raise XmlPickleError(f"XML parse error: {e}") from None


def read_xml(env: SchemaEnv, type_name: str, text: str | bytes,
             symbols: Symbols | None = None) -> Value:
    type_name = env.resolve_type_name(type_name)
    v = _XmlReader(env, symbols).element(type_name, _parse(text), type_name)
    return check_value(env, type_name, v)


def read_xml_all(env: SchemaEnv, type_name: str, text: str | bytes,
                 symbols: Symbols | None = None) -> list[Value]:
    type_name = env.resolve_type_name(type_name)
    root = _parse(text)
    reader = _XmlReader(env, symbols)
    # the writer always wraps when the schema has a product named like the wrapper
    elements: Iterable[ET.Element] = list(root) if root.tag == WRAPPER else [root]
    return [check_value(env, type_name, reader.element(type_name, el, type_name))
            for el in elements]
