"""Name resolution, classification, tag assignment, and field naming."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Iterable, Mapping

from .errors import (
    AttributesOnProduct,
    DuplicateConstructor,
    DuplicateFieldName,
    DuplicateTypeDef,
    UndefinedType,
    UnknownConstructor,
    UnknownType,
)
from .syntax import ProductBody, RawField, RawSpec, SourceSpan, SumBody

BUILTINS = frozenset({"int", "string", "identifier"})


@dataclass(frozen=True)
class CheckedField:
    name: str
    type_name: str
    seq: bool = False
    explicit: bool = True
    span: SourceSpan | None = field(default=None, compare=False, repr=False)

    @property
    def builtin(self) -> bool:
        return self.type_name in BUILTINS


@dataclass(frozen=True)
class CheckedConstructor:
    name: str
    type_name: str
    tag: int
    fields: tuple[CheckedField, ...]
    attributes: tuple[CheckedField, ...] = ()
    span: SourceSpan | None = field(default=None, compare=False, repr=False)

    @property
    def all_fields(self) -> tuple[CheckedField, ...]:
        """Attributes first, then the constructor's own fields."""
        return self.attributes + self.fields

    @property
    def nullary(self) -> bool:
        return not self.fields


@dataclass(frozen=True)
class CheckedTypeDef:
    name: str
    kind: str  # "sum" or "product"
    constructors: tuple[CheckedConstructor, ...] = ()
    attributes: tuple[CheckedField, ...] = ()
    fields: tuple[CheckedField, ...] = ()
    span: SourceSpan | None = field(default=None, compare=False, repr=False)

    @property
    def is_sum(self) -> bool:
        return self.kind == "sum"

    @property
    def enum_like(self) -> bool:
        return self.is_sum and not self.attributes and all(c.nullary for c in self.constructors)

    @property
    def classification(self) -> str:
        return "enum-like" if self.enum_like else "general"

    def constructor(self, name: str) -> CheckedConstructor:
        for c in self.constructors:
            if c.name == name:
                return c
        raise UnknownConstructor(self.name, name)


@dataclass(frozen=True)
class SchemaEnv:
    name: str
    types: Mapping[str, CheckedTypeDef]
    constructors: Mapping[str, CheckedConstructor]
    builtins: frozenset[str] = BUILTINS

    def type(self, name: str) -> CheckedTypeDef:
        try:
            return self.types[name]
        except KeyError:
            raise UnknownType(name) from None

    def has_type(self, name: str) -> bool:
        return name in self.types or name in self.builtins

    def resolve_type_name(self, name: str) -> str:
        """Accept ``Module.type`` or a bare ``type``; return the bare name."""
        if "." in name:
            module, _, bare = name.partition(".")
            if module != self.name:
                raise UnknownType(name)
            name = bare
        if not self.has_type(name):
            raise UnknownType(name)
        return name

    def counts(self) -> tuple[int, int]:
        """(number of types, number of sum constructors)."""
        return len(self.types), sum(len(t.constructors) for t in self.types.values())


def _name_fields(raw: Iterable[RawField], owner: str,
                 taken: Iterable[str] = ()) -> tuple[CheckedField, ...]:
    """Assign effective names: explicit names are kept; an unnamed field of
    type ``t`` becomes ``t1``, ``t2``, ... (``t_list1``, ... for lists),
    counted per base type and skipping names already in use."""
    raw = list(raw)
    used = set(taken)
    explicit = [f.name for f in raw if f.name]
    for name, n in Counter(explicit).items():
        if n > 1 or name in used:
            span = next(f.span for f in raw if f.name == name)
            raise DuplicateFieldName(name, owner, span)
    used.update(explicit)
    counters: Counter[str] = Counter()
    out = []
    for f in raw:
        if f.name:
            out.append(CheckedField(f.name, f.type_name, f.seq, True, f.span))
            continue
        base = f.type_name + ("_list" if f.seq else "")
        while True:
            counters[base] += 1
            candidate = f"{base}{counters[base]}"
            if candidate not in used:
                break
        used.add(candidate)
        out.append(CheckedField(candidate, f.type_name, f.seq, False, f.span))
    return tuple(out)


def check(spec: RawSpec) -> SchemaEnv:
    """Resolve and classify ``spec``; raise on the first semantic error."""
    defined: dict[str, SourceSpan | None] = {}
    for d in spec.definitions:
        if d.name in BUILTINS:
            raise DuplicateTypeDef(d.name, d.span, builtin=True)
        if d.name in defined:
            raise DuplicateTypeDef(d.name, d.span)
        defined[d.name] = d.span

    def resolve(fields: Iterable[RawField]) -> None:
        for f in fields:
            if f.type_name not in BUILTINS and f.type_name not in defined:
                raise UndefinedType(f.type_name, f.span)

    types: dict[str, CheckedTypeDef] = {}
    ctors: dict[str, CheckedConstructor] = {}
    for d in spec.definitions:
        body = d.body
        if isinstance(body, ProductBody):
            if body.attributes:
                raise AttributesOnProduct(d.name, d.span)
            resolve(body.fields)
            types[d.name] = CheckedTypeDef(
                d.name, "product", fields=_name_fields(body.fields, d.name), span=d.span)
            continue
        assert isinstance(body, SumBody)
        resolve(body.attributes)
        attrs = _name_fields(body.attributes, f"attributes of {d.name}")
        attr_names = [a.name for a in attrs]
        checked = []
        for tag, c in enumerate(body.constructors, start=1):
            if c.name in ctors:
                raise DuplicateConstructor(c.name, c.span)
            resolve(c.fields)
            cc = CheckedConstructor(
                c.name, d.name, tag, _name_fields(c.fields, c.name, attr_names), attrs, c.span)
            ctors[c.name] = cc
            checked.append(cc)
        types[d.name] = CheckedTypeDef(
            d.name, "sum", constructors=tuple(checked), attributes=attrs, span=d.span)
    return SchemaEnv(spec.name, MappingProxyType(types), MappingProxyType(ctors))


def effective_field_names(ctor: CheckedConstructor) -> list[str]:
    """Field names in wire order, attributes first."""
    return [f.name for f in ctor.all_fields]


def tag_of(env: SchemaEnv, type_name: str, ctor_name: str) -> int:
    return env.type(type_name).constructor(ctor_name).tag
