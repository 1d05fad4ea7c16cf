"""Generic runtime values for any checked schema.

This is the interpretive alternative to generated code: a value of any ASDL
type is built from six node kinds and checked against a ``SchemaEnv``.
"""

from __future__ import annotations

import random
import threading
from dataclasses import dataclass
from typing import Any, Iterable, Sequence

from .errors import ConformanceError, UnknownConstructor, Violation
from .sema import CheckedField, SchemaEnv


class Value:
    __slots__ = ()


@dataclass(frozen=True, slots=True)
class IntV(Value):
    value: int


@dataclass(frozen=True, slots=True)
class StringV(Value):
    value: str


class IdentifierV(Value):
    """An interned atom: equal texts yield the same object."""

    __slots__ = ("text",)
    _table: dict[str, "IdentifierV"] = {}
    _lock = threading.Lock()

    def __new__(cls, text: str) -> "IdentifierV":
        atom = cls._table.get(text)
        if atom is not None:
            return atom
        with cls._lock:
            atom = cls._table.get(text)
            if atom is None:
                atom = object.__new__(cls)
                object.__setattr__(atom, "text", text)
                cls._table[text] = atom
        return atom

    def __setattr__(self, name, value):
        raise AttributeError("identifiers are immutable")

    def __reduce__(self):
        return (IdentifierV, (self.text,))

    def __repr__(self) -> str:
        return f"IdentifierV({self.text!r})"


@dataclass(frozen=True, slots=True)
class ListV(Value):
    items: tuple[Value, ...] = ()


@dataclass(frozen=True, slots=True)
class ProductV(Value):
    type_name: str
    fields: tuple[Value, ...]


@dataclass(frozen=True, slots=True)
class SumV(Value):
    type_name: str
    ctor: str
    attrs: tuple[Value, ...] = ()
    fields: tuple[Value, ...] = ()


def equal(a: Value, b: Value) -> bool:
    """Deep structural equality (identifiers compare by identity)."""
    return a == b


# -- validation -------------------------------------------------------------

def _names(fields: Sequence[CheckedField]) -> str:
    return ", ".join(f.name for f in fields)


def _check_scalar(type_name: str, v: Value, path: str, out: list[Violation]) -> None:
    if type_name == "int":
        if not (isinstance(v, IntV) and type(v.value) is int):
            out.append(Violation(path, f"expected int, got {describe(v)}"))
    elif type_name == "string":
        if not (isinstance(v, StringV) and isinstance(v.value, str)):
            out.append(Violation(path, f"expected string, got {describe(v)}"))
    elif not isinstance(v, IdentifierV):
        out.append(Violation(path, f"expected identifier, got {describe(v)}"))


def describe(v: Any) -> str:
    if isinstance(v, (SumV, ProductV)):
        return f"{type(v).__name__}({v.type_name})"
    return type(v).__name__


def _check_fields(env: SchemaEnv, fields: Sequence[CheckedField], values: Sequence[Value],
                  path: str, what: str, out: list[Violation]) -> None:
    if len(values) != len(fields):
        out.append(Violation(
            path, f"expected {len(fields)} {what} ({_names(fields)}), got {len(values)}"))
        return
    for f, v in zip(fields, values):
        _check_field(env, f, v, f"{path}/{f.name}", out)


def _check_field(env: SchemaEnv, f: CheckedField, v: Value, path: str,
                 out: list[Violation]) -> None:
    if not f.seq:
        _check(env, f.type_name, v, path, out)
        return
    if not isinstance(v, ListV):
        out.append(Violation(path, f"expected list of {f.type_name}, got {describe(v)}"))
        return
    for i, item in enumerate(v.items):
        _check(env, f.type_name, item, f"{path}[{i}]", out)


def _check(env: SchemaEnv, type_name: str, v: Value, path: str, out: list[Violation]) -> None:
    if type_name in env.builtins:
        _check_scalar(type_name, v, path, out)
        return
    td = env.type(type_name)
    if td.is_sum:
        if not isinstance(v, SumV) or v.type_name != type_name:
            out.append(Violation(path, f"expected {type_name}, got {describe(v)}"))
            return
        try:
            ctor = td.constructor(v.ctor)
        except UnknownConstructor:
            out.append(Violation(path, f"{type_name} has no constructor {v.ctor!r}"))
            return
        here = f"{path}/{v.ctor}"
        _check_fields(env, ctor.attributes, v.attrs, here, "attributes", out)
        _check_fields(env, ctor.fields, v.fields, here, "fields", out)
    else:
        if not isinstance(v, ProductV) or v.type_name != type_name:
            out.append(Violation(path, f"expected {type_name}, got {describe(v)}"))
            return
        _check_fields(env, td.fields, v.fields, path, "fields", out)


def validate(env: SchemaEnv, type_name: str, v: Value) -> list[Violation]:
    """Return every conformance violation of ``v`` against ``type_name``."""
    type_name = env.resolve_type_name(type_name)
    out: list[Violation] = []
    _check(env, type_name, v, type_name, out)
    return out


def check_value(env: SchemaEnv, type_name: str, v: Value) -> Value:
    violations = validate(env, type_name, v)
    if violations:
        raise ConformanceError(violations)
    return v


# -- construction helpers ---------------------------------------------------

def coerce(f: CheckedField, raw: Any) -> Value:
    """Lift plain Python data into a Value for field ``f``."""
    if isinstance(raw, Value):
        return raw
    if f.seq:
        if isinstance(raw, (list, tuple)):
            elem = CheckedField(f.name, f.type_name)
            return ListV(tuple(coerce(elem, x) for x in raw))
        return raw
    if f.type_name == "int" and type(raw) is int:
        return IntV(raw)
    if f.type_name == "string" and isinstance(raw, str):
        return StringV(raw)
    if f.type_name == "identifier" and isinstance(raw, str):
        return IdentifierV(raw)
    return raw


def mk_sum(env: SchemaEnv, type_name: str, ctor: str,
           attrs: Iterable[Any] = (), fields: Iterable[Any] = ()) -> SumV:
    td = env.type(type_name)
    c = td.constructor(ctor)
    attrs, fields = list(attrs), list(fields)
    if len(attrs) == len(c.attributes):
        attrs = [coerce(f, a) for f, a in zip(c.attributes, attrs)]
    if len(fields) == len(c.fields):
        fields = [coerce(f, x) for f, x in zip(c.fields, fields)]
    v = SumV(type_name, ctor, tuple(attrs), tuple(fields))
    check_value(env, type_name, v)
    return v


def mk_product(env: SchemaEnv, type_name: str, fields: Iterable[Any]) -> ProductV:
    td = env.type(type_name)
    fields = list(fields)
    if len(fields) == len(td.fields):
        fields = [coerce(f, x) for f, x in zip(td.fields, fields)]
    v = ProductV(type_name, tuple(fields))
    check_value(env, type_name, v)
    return v


def mk(env: SchemaEnv, ctor: str, *fields: Any, **attrs: Any) -> SumV:
    """Shorthand for ``mk_sum`` keyed by the module-unique constructor name;
    attributes are passed by keyword."""
    c = env.constructors[ctor]
    missing = [a.name for a in c.attributes if a.name not in attrs]
    if missing:
        raise ConformanceError([Violation(f"{c.type_name}/{ctor}",
                                          f"missing attribute(s) {', '.join(missing)}")])
    return mk_sum(env, c.type_name, ctor, [attrs[a.name] for a in c.attributes], fields)


# -- random generation (test utility) ---------------------------------------

_INF = float("inf")
_EDGE_INTS = (0, -1, 1, 63, -64, 64, -65, 127, 128, 8191, -8192, 2**31 - 1, -2**31,
              2**63 - 1, -2**63)
_STRING_ALPHABET = (
    "abcdefghijklmnopqrstuvwxyz ABCXYZ0123456789"
    "\"'\\<>&;:()[]|.,-_\n\t\ré中😀"
)


def type_heights(env: SchemaEnv) -> dict[str, float]:
    """Minimum constructor nesting needed to build a finite value of each type."""
    heights: dict[str, float] = {name: _INF for name in env.types}

    def fh(f: CheckedField) -> float:
        if f.seq or f.builtin:
            return 0
        return heights[f.type_name]

    changed = True
    while changed:
        changed = False
        for name, td in env.types.items():
            if td.is_sum:
                h = min(1 + max((fh(f) for f in c.all_fields), default=0)
                        for c in td.constructors)
            else:
                h = 1 + max((fh(f) for f in td.fields), default=0)
            if h < heights[name]:
                heights[name] = h
                changed = True
    return heights


class RandomValues:
    """Seeded generator of conforming values with geometric depth decay.

    At nesting depth ``d`` a constructor is drawn uniformly with probability
    ``decay**d`` and otherwise from the shallowest constructors; the hard cap
    ``max_depth`` only admits constructors that can still terminate in time.
    """

    def __init__(self, env: SchemaEnv, seed: int | random.Random = 0,
                 max_depth: int = 12, decay: float = 0.8):
        self.env = env
        self.rng = seed if isinstance(seed, random.Random) else random.Random(seed)
        self.max_depth = max_depth
        self.decay = decay
        self.heights = type_heights(env)

    def value(self, type_name: str) -> Value:
        type_name = self.env.resolve_type_name(type_name)
        if type_name in self.env.types and self.heights[type_name] > self.max_depth:
            raise ValueError(f"type {type_name!r} has no value within depth {self.max_depth}")
        return self._value(type_name, 0)

    def _field_height(self, f: CheckedField) -> float:
        return 0 if (f.seq or f.builtin) else self.heights[f.type_name]

    def _value(self, type_name: str, depth: int) -> Value:
        if type_name in self.env.builtins:
            return self._scalar(type_name)
        td = self.env.type(type_name)
        left = self.max_depth - depth
        if not td.is_sum:
            return ProductV(type_name, tuple(self._field(f, depth + 1) for f in td.fields))
        sized = [(1 + max((self._field_height(f) for f in c.all_fields), default=0), c)
                 for c in td.constructors]
        fits = [c for h, c in sized if h <= left]
        if self.rng.random() >= self.decay ** depth:
            lowest = min(h for h, _ in sized)
            fits = [c for h, c in sized if h == lowest]
        c = self.rng.choice(fits)
        return SumV(type_name, c.name,
                    tuple(self._field(f, depth + 1) for f in c.attributes),
                    tuple(self._field(f, depth + 1) for f in c.fields))

    def _field(self, f: CheckedField, depth: int) -> Value:
        if not f.seq:
            return self._value(f.type_name, depth)
        rng = self.rng
        if f.builtin and rng.random() < 0.02:
            n = rng.randint(128, 140)
        elif depth >= self.max_depth - 1 or (
                not f.builtin and self.heights[f.type_name] > self.max_depth - depth):
            n = 0
        else:
            n = rng.randint(0, max(0, round(4 * self.decay ** depth)))
        return ListV(tuple(self._value(f.type_name, depth) for _ in range(n)))

    def _scalar(self, type_name: str) -> Value:
        rng = self.rng
        if type_name == "int":
            r = rng.random()
            if r < 0.55:
                n = rng.randint(-64, 63)
            elif r < 0.75:
                n = rng.randint(-10_000, 10_000)
            elif r < 0.92:
                n = rng.randint(-2**63, 2**63 - 1)
            else:
                n = rng.choice(_EDGE_INTS)
            return IntV(n)
        if type_name == "string":
            n = rng.choice((0, 1, 3, 5, 8, 13))
            return StringV("".join(rng.choice(_STRING_ALPHABET) for _ in range(n)))
        head = rng.choice("abcdefghijklmnopqrstuvwxyz_")
        tail = "".join(rng.choice("abcdefghijklmnopqrstuvwxyz0123456789_")
                       for _ in range(rng.randint(0, 8)))
        return IdentifierV(head + tail)


def random_value(env: SchemaEnv, type_name: str, seed: int = 0, max_depth: int = 12) -> Value:
    return RandomValues(env, seed, max_depth).value(type_name)
