"""Python backend.

Python does not separate interfaces from implementations, so a module
``M`` becomes a single file ``M.py``. Representation:

* enum-like sum ``t``: ``class M_t(enum.IntEnum)`` whose values are the wire
  tags, plus module-level aliases ``M_<Ctor>``
* general sum ``t``: a record ``M_t`` holding the attributes first, then a
  ``kind`` discriminator (``M_t_kind`` with members ``M_<Ctor>_enum``) and
  the variant payload ``v`` (``M_<Ctor>_s``); constructor functions
  ``M_<Ctor>(attrs..., fields...)``
* product ``t``: a record ``M_t``
* ``int`` -> ``int``, ``string`` -> ``str``, ``identifier`` -> interned
  ``str``, lists -> ``list``

Generated code imports only :mod:`asdlkit.runtime`.
"""

from __future__ import annotations

import keyword
import sys
import types
from string import Template
from typing import Any, Sequence

from ..errors import BackendError
from ..sema import CheckedConstructor, CheckedField, CheckedTypeDef, SchemaEnv
from ..values import IdentifierV, IntV, ListV, ProductV, StringV, SumV, Value
from . import Backend, GeneratedUnit

_PROLOGUE = Template('''\
# Generated by asdlkit from ASDL module $module. Do not edit.
"""Data types, constructors, readers and writers for module $module."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import List, Union

from asdlkit import runtime as _rt
''')

_ENUM = Template('''\
class $cls(enum.IntEnum):
$members

$aliases
''')

_RECORD = Template('''\
@dataclass(slots=True)
class $cls:
$fields
''')

_CONSTRUCTOR = Template('''\
def $fn($params) -> $cls:
    return $cls($args)
''')

_READ = {"int": "_rt.read_int(s_)", "string": "_rt.read_string(s_)",
         "identifier": "_rt.read_identifier(s_)"}
_WRITE = {"int": "_rt.write_int", "string": "_rt.write_string",
          "identifier": "_rt.write_identifier"}
_PYTYPE = {"int": "int", "string": "str", "identifier": "str"}
_RESERVED = frozenset({"kind", "v"})


def pyname(name: str) -> str:
    return name + "_" if keyword.iskeyword(name) else name


class PythonBackend(Backend):
    name = "python"

    def filename(self, env: SchemaEnv) -> str:
        return f"{env.name}.py"

    # -- names ----------------------------------------------------------------
    def kind_name(self, env: SchemaEnv, t: str) -> str:
        return f"{env.name}_{t}_kind"

    def variant_name(self, env: SchemaEnv, c: str) -> str:
        return f"{env.name}_{c}_s"

    def check_names(self, env: SchemaEnv) -> None:
        path = self.filename(env)
        seen: dict[str, str] = {}

        def claim(name: str, what: str) -> None:
            if name in seen:
                raise BackendError(path, f"generated name {name} for {what} collides with "
                                         f"{seen[name]}")
            seen[name] = what

        for td in env.types.values():
            claim(self.type_name(env, td.name), f"type {td.name}")
            claim(self.reader_name(env, td.name), f"reader of {td.name}")
            claim(self.writer_name(env, td.name), f"writer of {td.name}")
            if td.is_sum and not td.enum_like:
                claim(self.kind_name(env, td.name), f"discriminator of {td.name}")
                for c in td.constructors:
                    claim(self.variant_name(env, c.name), f"payload of {c.name}")
            for c in td.constructors:
                claim(self.ctor_name(env, c.name), f"constructor {c.name}")
            for a in td.attributes:
                if a.name in _RESERVED:
                    raise BackendError(path, f"attribute name {a.name!r} of {td.name} is "
                                             "reserved by the generated record")
            for fields in [td.fields, td.attributes] + [c.all_fields for c in td.constructors]:
                names = [pyname(f.name) for f in fields]
                if len(set(names)) != len(names):
                    raise BackendError(path, f"field names of {td.name} collide after "
                                             "keyword mangling")

    # -- annotations ------------------------------------------------------------
    def annotation(self, env: SchemaEnv, f: CheckedField) -> str:
        base = _PYTYPE.get(f.type_name) or self.type_name(env, f.type_name)
        return f"List[{base}]" if f.seq else base

    def _record_fields(self, env: SchemaEnv, fields: Sequence[CheckedField]) -> str:
        return "\n".join(f"    {pyname(f.name)}: {self.annotation(env, f)}" for f in fields)

    # -- hooks ----------------------------------------------------------------
    def render_prologue(self, env: SchemaEnv) -> str:
        return _PROLOGUE.substitute(module=env.name)

    def render_enum(self, env: SchemaEnv, td: CheckedTypeDef) -> str:
        cls = self.type_name(env, td.name)
        return _ENUM.substitute(
            cls=cls,
            members="\n".join(f"    {pyname(c.name)} = {c.tag}" for c in td.constructors),
            aliases="\n".join(f"{self.ctor_name(env, c.name)} = {cls}.{pyname(c.name)}"
                              for c in td.constructors))

    def render_sum(self, env: SchemaEnv, td: CheckedTypeDef) -> str:
        cls = self.type_name(env, td.name)
        kind = self.kind_name(env, td.name)
        parts = [_ENUM.substitute(
            cls=kind,
            members="\n".join(f"    {self.ctor_name(env, c.name)}_enum = {c.tag}"
                              for c in td.constructors),
            aliases="").rstrip() + "\n"]
        for c in td.constructors:
            body = self._record_fields(env, c.fields) if c.fields else "    pass"
            parts.append(_RECORD.substitute(cls=self.variant_name(env, c.name), fields=body))
        variants = ", ".join(self.variant_name(env, c.name) for c in td.constructors)
        payload = f"Union[{variants}]" if len(td.constructors) > 1 else variants
        head = self._record_fields(env, td.attributes)
        fields = (head + "\n" if head else "") + f"    kind: {kind}\n    v: {payload}"
        parts.append(_RECORD.substitute(cls=cls, fields=fields))
        return "\n\n".join(parts)

    def render_product(self, env: SchemaEnv, td: CheckedTypeDef) -> str:
        return _RECORD.substitute(cls=self.type_name(env, td.name),
                                  fields=self._record_fields(env, td.fields))

    def render_constructor(self, env: SchemaEnv, td: CheckedTypeDef,
                           ctor: CheckedConstructor) -> str:
        cls = self.type_name(env, td.name)
        params = ", ".join(f"{pyname(f.name)}: {self.annotation(env, f)}"
                           for f in ctor.all_fields)
        attrs = [pyname(a.name) for a in ctor.attributes]
        payload = f"{self.variant_name(env, ctor.name)}(" \
                  f"{', '.join(pyname(f.name) for f in ctor.fields)})"
        kind = f"{self.kind_name(env, td.name)}.{self.ctor_name(env, ctor.name)}_enum"
        return _CONSTRUCTOR.substitute(fn=self.ctor_name(env, ctor.name), params=params,
                                       cls=cls, args=", ".join(attrs + [kind, payload]))

    def _read_expr(self, env: SchemaEnv, f: CheckedField) -> str:
        one = _READ.get(f.type_name) or f"{self.reader_name(env, f.type_name)}(s_)"
        if f.seq:
            return f"[{one} for _ in range(_rt.read_uint(s_))]"
        return one

    def _write_lines(self, env: SchemaEnv, f: CheckedField, expr: str, indent: str) -> list[str]:
        fn = _WRITE.get(f.type_name) or self.writer_name(env, f.type_name)
        if not f.seq:
            return [f"{indent}{fn}({expr}, s_)"]
        return [f"{indent}_rt.write_uint(len({expr}), s_)",
                f"{indent}for e_ in {expr}:",
                f"{indent}    {fn}(e_, s_)"]

    def render_reader(self, env: SchemaEnv, td: CheckedTypeDef) -> str:
        cls = self.type_name(env, td.name)
        lines = [f"def {self.reader_name(env, td.name)}(s_: _rt.InStream) -> {cls}:"]
        if not td.is_sum:
            for i, f in enumerate(td.fields):
                lines.append(f"    _f{i} = {self._read_expr(env, f)}")
            lines.append(f"    return {cls}({', '.join(f'_f{i}' for i in range(len(td.fields)))})")
            return "\n".join(lines) + "\n"
        n = len(td.constructors)
        lines += ["    tag_ = _rt.read_uint(s_)",
                  f"    if not 1 <= tag_ <= {n}:",
                  f"        raise _rt.bad_tag({td.name!r}, tag_, s_)"]
        if td.enum_like:
            lines.append(f"    return {cls}(tag_)")
            return "\n".join(lines) + "\n"
        for i, a in enumerate(td.attributes):
            lines.append(f"    _a{i} = {self._read_expr(env, a)}")
        attrs = [f"_a{i}" for i in range(len(td.attributes))]
        for c in td.constructors:
            lines.append(f"    if tag_ == {c.tag}:")
            for i, f in enumerate(c.fields):
                lines.append(f"        _f{i} = {self._read_expr(env, f)}")
            args = attrs + [f"_f{i}" for i in range(len(c.fields))]
            lines.append(f"        return {self.ctor_name(env, c.name)}({', '.join(args)})")
        return "\n".join(lines) + "\n"

    def render_writer(self, env: SchemaEnv, td: CheckedTypeDef) -> str:
        cls = self.type_name(env, td.name)
        lines = [f"def {self.writer_name(env, td.name)}(x_: {cls}, s_: _rt.OutStream) -> None:"]
        if not td.is_sum:
            for f in td.fields:
                lines += self._write_lines(env, f, f"x_.{pyname(f.name)}", "    ")
            return "\n".join(lines) + "\n"
        if td.enum_like:
            lines.append("    _rt.write_uint(int(x_), s_)")
            return "\n".join(lines) + "\n"
        lines.append("    _rt.write_uint(int(x_.kind), s_)")
        for a in td.attributes:
            lines += self._write_lines(env, a, f"x_.{pyname(a.name)}", "    ")
        branch = "if"
        for c in td.constructors:
            if not c.fields:
                continue
            lines.append(f"    {branch} x_.kind == {c.tag}:")
            lines.append("        v_ = x_.v")
            for f in c.fields:
                lines += self._write_lines(env, f, f"v_.{pyname(f.name)}", "        ")
            branch = "elif"
        return "\n".join(lines) + "\n"

    def layout(self, env: SchemaEnv, sections) -> dict[str, str]:
        blocks = sections["prologue"] + sections["types"] + sections["constructors"] \
            + sections["codecs"]
        text = "\n\n".join(b.rstrip("\n") + "\n" for b in blocks)
        return {self.filename(env): text}

    # -- in-process execution ---------------------------------------------------
    def load(self, env: SchemaEnv, unit: GeneratedUnit) -> types.ModuleType:
        name = f"_asdlgen_{env.name}_{id(unit):x}"
        mod = types.ModuleType(name)
        mod.__file__ = f"<generated {self.filename(env)}>"
        sys.modules[name] = mod
        try:
            exec(compile(unit.files[self.filename(env)], mod.__file__, "exec"), mod.__dict__)
        finally:
            del sys.modules[name]
        return mod

    def to_native(self, env: SchemaEnv, ns: Any, type_name: str, v: Value) -> Any:
        if isinstance(v, IntV):
            return v.value
        if isinstance(v, StringV):
            return v.value
        if isinstance(v, IdentifierV):
            return sys.intern(v.text)
        td = env.type(type_name)
        if td.enum_like:
            return getattr(ns, self.ctor_name(env, v.ctor))
        if td.is_sum:
            ctor = td.constructor(v.ctor)
            args = [self._field_to_native(env, ns, f, x)
                    for f, x in zip(ctor.all_fields, v.attrs + v.fields)]
            return getattr(ns, self.ctor_name(env, v.ctor))(*args)
        args = [self._field_to_native(env, ns, f, x) for f, x in zip(td.fields, v.fields)]
        return getattr(ns, self.type_name(env, type_name))(*args)

    def _field_to_native(self, env, ns, f: CheckedField, v: Value) -> Any:
        if f.seq:
            return [self.to_native(env, ns, f.type_name, x) for x in v.items]
        return self.to_native(env, ns, f.type_name, v)

    def from_native(self, env: SchemaEnv, ns: Any, type_name: str, obj: Any) -> Value:
        if type_name == "int":
            return IntV(obj)
        if type_name == "string":
            return StringV(obj)
        if type_name == "identifier":
            return IdentifierV(obj)
        td = env.type(type_name)
        if td.enum_like:
            return SumV(type_name, td.constructors[int(obj) - 1].name)
        if td.is_sum:
            ctor = td.constructors[int(obj.kind) - 1]
            attrs = tuple(self._field_from_native(env, ns, a, getattr(obj, pyname(a.name)))
                          for a in ctor.attributes)
            fields = tuple(self._field_from_native(env, ns, f, getattr(obj.v, pyname(f.name)))
                           for f in ctor.fields)
            return SumV(type_name, ctor.name, attrs, fields)
        return ProductV(type_name, tuple(
            self._field_from_native(env, ns, f, getattr(obj, pyname(f.name)))
            for f in td.fields))

    def _field_from_native(self, env, ns, f: CheckedField, obj: Any) -> Value:
        if f.seq:
            return ListV(tuple(self.from_native(env, ns, f.type_name, x) for x in obj))
        return self.from_native(env, ns, f.type_name, obj)
