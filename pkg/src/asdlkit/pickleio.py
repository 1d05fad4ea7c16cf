"""Binary pickles of schema-conforming values.

Encoding is prefix order with no padding:

* sum value: constructor tag (uint, 1-based), attributes, then fields
* product value: fields in order, no tag
* list: element count (uint), then the elements
* int: zigzag varint
* string, identifier: UTF-8 byte length (uint), then the bytes

A pickle file is a bare concatenation of instances. There is no header, so
the type of each instance travels out of band.
"""

from __future__ import annotations

import os
from typing import BinaryIO, Sequence, Union

from . import runtime as rt
from .errors import BadTag, ConformanceError, EmptyPickle, UnknownConstructor, Violation
from .runtime import InStream, OutStream
from .sema import CheckedField, SchemaEnv
from .values import IdentifierV, IntV, ListV, ProductV, StringV, SumV, Value, describe

Source = Union[bytes, bytearray, memoryview, InStream, BinaryIO]


class _Writer:
    def __init__(self, env: SchemaEnv, s: OutStream, trace: list | None = None):
        self.env = env
        self.s = s
        self.trace = trace

    def fail(self, path: str, reason: str):
        raise ConformanceError([Violation(path, reason)])

    def value(self, type_name: str, v: Value, path: str) -> None:
        if self.trace is not None:
            self.trace.append((self.s.tell(), path))
        s = self.s
        if type_name == "int":
            if not isinstance(v, IntV):
                self.fail(path, f"expected int, got {describe(v)}")
            rt.write_int(v.value, s)
            return
        if type_name == "string":
            if not isinstance(v, StringV):
                self.fail(path, f"expected string, got {describe(v)}")
            rt.write_string(v.value, s)
            return
        if type_name == "identifier":
            if not isinstance(v, IdentifierV):
                self.fail(path, f"expected identifier, got {describe(v)}")
            rt.write_identifier(v.text, s)
            return
        td = self.env.type(type_name)
        if td.is_sum:
            if not isinstance(v, SumV) or v.type_name != type_name:
                self.fail(path, f"expected {type_name}, got {describe(v)}")
            try:
                ctor = td.constructor(v.ctor)
            except UnknownConstructor:
                self.fail(path, f"{type_name} has no constructor {v.ctor!r}")
            rt.write_uint(ctor.tag, s)
            here = f"{path}/{v.ctor}"
            self.fields(ctor.attributes, v.attrs, here)
            self.fields(ctor.fields, v.fields, here)
        else:
            if not isinstance(v, ProductV) or v.type_name != type_name:
                self.fail(path, f"expected {type_name}, got {describe(v)}")
            self.fields(td.fields, v.fields, path)

    def fields(self, fields: Sequence[CheckedField], values: Sequence[Value], path: str) -> None:
        if len(fields) != len(values):
            self.fail(path, f"expected {len(fields)} values, got {len(values)}")
        for f, v in zip(fields, values):
            p = f"{path}/{f.name}"
            if not f.seq:
                self.value(f.type_name, v, p)
                continue
            if not isinstance(v, ListV):
                self.fail(p, f"expected list of {f.type_name}, got {describe(v)}")
            rt.write_uint(len(v.items), self.s)
            for i, item in enumerate(v.items):
                self.value(f.type_name, item, f"{p}[{i}]")


class _Reader:
    def __init__(self, env: SchemaEnv, s: InStream):
        self.env = env
        self.s = s

    def value(self, type_name: str) -> Value:
        s = self.s
        if type_name == "int":
            return IntV(rt.read_int(s))
        if type_name == "string":
            return StringV(rt.read_string(s))
        if type_name == "identifier":
            return IdentifierV(rt.read_string(s))
        td = self.env.type(type_name)
        if td.is_sum:
            pos = s.pos
            tag = rt.read_uint(s)
            if not 1 <= tag <= len(td.constructors):
                raise BadTag(type_name, tag, pos)
            ctor = td.constructors[tag - 1]
            attrs = self.fields(ctor.attributes)
            return SumV(type_name, ctor.name, attrs, self.fields(ctor.fields))
        return ProductV(type_name, self.fields(td.fields))

    def fields(self, fields: Sequence[CheckedField]) -> tuple[Value, ...]:
        out = []
        for f in fields:
            if f.seq:
                n = rt.read_uint(self.s)
                out.append(ListV(tuple(self.value(f.type_name) for _ in range(n))))
            else:
                out.append(self.value(f.type_name))
        return tuple(out)


def write_value(env: SchemaEnv, type_name: str, v: Value, s: OutStream,
                trace: list | None = None) -> None:
    """Append the encoding of ``v`` to ``s``. If ``trace`` is a list, record
    ``(byte offset, value path)`` for every value as it starts."""
    type_name = env.resolve_type_name(type_name)
    _Writer(env, s, trace).value(type_name, v, type_name)


def read_value(env: SchemaEnv, type_name: str, s: InStream) -> Value:
    type_name = env.resolve_type_name(type_name)
    return _Reader(env, s).value(type_name)


def dumps(env: SchemaEnv, type_name: str, v: Value) -> bytes:
    s = OutStream()
    write_value(env, type_name, v, s)
    return s.getvalue()


def loads(env: SchemaEnv, type_name: str, data: bytes) -> Value:
    """Decode exactly one instance; trailing bytes are ignored."""
    return read_first(env, type_name, data)


# -- top-level framing ------------------------------------------------------

def _stream(src: Source) -> InStream:
    if isinstance(src, InStream):
        return src
    if isinstance(src, (bytes, bytearray, memoryview)):
        return InStream(bytes(src))
    return InStream(src.read())


write_instance = write_value
read_instance = read_value


def read_first(env: SchemaEnv, type_name: str, src: Source) -> Value:
    """Read the first instance and ignore whatever follows it."""
    s = _stream(src)
    if s.at_end():
        raise EmptyPickle()
    return read_value(env, type_name, s)


def read_all(env: SchemaEnv, type_name: str, src: Source) -> list[Value]:
    """Read instances of one type until the source is exhausted."""
    s = _stream(src)
    out = []
    while not s.at_end():
        out.append(read_value(env, type_name, s))
    return out


def append_instance(env: SchemaEnv, type_name: str, v: Value, path: str | os.PathLike) -> int:
    """Append one instance to an existing pickle file; return bytes written."""
    if not os.path.isfile(path):
        raise FileNotFoundError(f"no pickle to append to: {os.fspath(path)}")
    data = dumps(env, type_name, v)
    with open(path, "ab") as f:
        f.write(data)
    return len(data)
