"""Uids: flattening the symbol/type graph into a tree-shaped pickle.

Every multiply referenced front-end object (a type or a symbol) gets a
small integer the first time it is interned, and every reference to it is
written as that integer. A type or global symbol is defined by an ``item``
of the pickled ``program``; locals and relative symbols are defined by the
``Local`` and ``Address`` interface calls that announce them.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from ..grammars import load
from ..sema import SchemaEnv
from ..values import IdentifierV, IntV, ListV, ProductV, SumV, Value
from .types import CType, Symbol


def rcc() -> SchemaEnv:
    return load("rcc")


def _ints(xs) -> ListV:
    return ListV(tuple(IntV(x) for x in xs))


class UidTable:
    """Identity-keyed uid assignment with item emission.

    Uids are dense and handed out in first-intern order. A uid is assigned
    before the object's encoding is built, so cycles (a struct holding a
    pointer to itself) terminate; the item itself is appended once its
    encoding is complete.
    """

    def __init__(self) -> None:
        self._uids: dict[int, int] = {}
        self._objects: list[object] = []  # keeps interned objects alive, so ids stay unique
        self.items: list[SumV] = []

    @property
    def count(self) -> int:
        return len(self._objects)

    def __contains__(self, obj: object) -> bool:
        return id(obj) in self._uids

    def _assign(self, obj: object) -> tuple[int, bool]:
        uid = self._uids.get(id(obj))
        if uid is not None:
            return uid, False
        self._objects.append(obj)
        uid = self._uids[id(obj)] = len(self._objects)
        return uid, True

    def intern_type(self, t: CType) -> int:
        uid, fresh = self._assign(t)
        if fresh:
            self.items.append(SumV("item", "Type", (IntV(uid),), (self.encode_type(t),)))
        return uid

    def intern_symbol(self, sym: Symbol) -> int:
        uid, fresh = self._assign(sym)
        if fresh:
            self.items.append(SumV("item", "Symbol", (IntV(uid),), (self.encode_symbol(sym),)))
        return uid

    def intern_local(self, sym: Symbol) -> int:
        """A uid for a symbol defined by an interface call, not an item."""
        return self._assign(sym)[0]

    def uid(self, obj: object) -> int:
        return self._uids[id(obj)]

    # -- encodings ------------------------------------------------------------
    def encode_symbol(self, sym: Symbol) -> ProductV:
        return ProductV("symbol", (IdentifierV(sym.name), IntV(self.intern_type(sym.type)),
                                   IntV(sym.scope), IntV(sym.sclass), IntV(sym.ref),
                                   IntV(sym.flags)))

    def encode_type(self, t: CType) -> SumV:
        k = t.kind
        if k in ("INT", "UNSIGNED", "FLOAT", "VOID"):
            fields: tuple[Value, ...] = ()
        elif k in ("POINTER", "ARRAY", "CONST", "VOLATILE"):
            fields = (IntV(self.intern_type(t.ref)),)
        elif k == "ENUM":
            fields = (IdentifierV(t.tag), ListV(tuple(
                ProductV("enum", (IdentifierV(n), IntV(v))) for n, v in t.enums)))
        elif k in ("STRUCT", "UNION"):
            fields = (IdentifierV(t.tag), ListV(tuple(
                ProductV("field", (IdentifierV(f.name), IntV(self.intern_type(f.type)),
                                   IntV(f.offset), IntV(f.bitsize), IntV(f.lsb)))
                for f in t.fields)))
        elif k == "FUNCTION":
            ret = self.intern_type(t.ref)
            fields = (IntV(ret), _ints(self.intern_type(f) for f in t.formals))
        else:
            raise ValueError(f"unknown type kind {k!r}")
        return SumV("type", k, (IntV(t.size), IntV(t.align)), fields)


# -- lint ---------------------------------------------------------------------

@dataclass(frozen=True)
class UidProblem:
    uid: int
    kind: str  # "dangling" or "duplicate"
    where: str

    def __str__(self) -> str:
        return f"uid {self.uid}: {self.kind} ({self.where})"


def _node_refs(n: SumV, path: str) -> Iterator[tuple[int, str]]:
    here = f"{path}/{n.ctor}"
    if n.ctor in ("ADDRG", "ADDRL", "ADDRF", "CSE"):
        yield n.fields[0].value, here
    elif n.ctor in ("CALL", "CALLB"):
        yield n.fields[-1].value, here
    for f in n.fields:
        if isinstance(f, SumV):
            yield from _node_refs(f, here)


def _symbol_refs(sym: ProductV, path: str) -> Iterator[tuple[int, str]]:
    yield sym.fields[1].value, f"{path}/type"


def _type_refs(t: SumV, path: str) -> Iterator[tuple[int, str]]:
    here = f"{path}/{t.ctor}"
    if t.ctor in ("POINTER", "ARRAY", "CONST", "VOLATILE"):
        yield t.fields[0].value, here
    elif t.ctor in ("STRUCT", "UNION"):
        for i, f in enumerate(t.fields[1].items):
            yield f.fields[1].value, f"{here}/fields[{i}]"
    elif t.ctor == "FUNCTION":
        yield t.fields[0].value, here
        for i, f in enumerate(t.fields[1].items):
            yield f.value, f"{here}/formals[{i}]"


def _interface_uses(ifs, path: str, defs: list, refs: list) -> None:
    for i, x in enumerate(ifs):
        here = f"{path}[{i}]/{x.ctor}"
        c, fs = x.ctor, x.fields
        if c in ("Export", "Import", "Global", "Defaddress"):
            refs.append((fs[0].value, here))
        elif c == "Local":
            defs.append((fs[0].value, here))
            refs.extend(_symbol_refs(fs[1], here))
        elif c == "Address":
            defs.append((fs[0].value, here))
            refs.extend(_symbol_refs(fs[1], here))
            refs.append((fs[2].value, here))
        elif c == "Function":
            refs.append((fs[0].value, here))
            refs.extend((u.value, f"{here}/caller") for u in fs[1].items)
            refs.extend((u.value, f"{here}/callee") for u in fs[2].items)
            _interface_uses(fs[4].items, f"{here}/codelist", defs, refs)
        elif c == "Forest":
            for j, n in enumerate(fs[0].items):
                refs.extend(_node_refs(n, f"{here}/nodes[{j}]"))


def uid_lint(program: ProductV) -> list[UidProblem]:
    """Find uids referenced but never defined, and uids defined twice."""
    items, interfaces = program.fields[2].items, program.fields[3].items
    defs: list[tuple[int, str]] = []
    refs: list[tuple[int, str]] = []
    for i, item in enumerate(items):
        here = f"program/items[{i}]/{item.ctor}"
        defs.append((item.attrs[0].value, here))
        payload = item.fields[0]
        refs.extend(_symbol_refs(payload, here) if item.ctor == "Symbol"
                    else _type_refs(payload, here))
    _interface_uses(interfaces, "program/interfaces", defs, refs)
    problems = []
    seen: dict[int, str] = {}
    for uid, where in defs:
        if uid in seen:
            problems.append(UidProblem(uid, "duplicate", f"{where}, first at {seen[uid]}"))
        seen.setdefault(uid, where)
    problems.extend(UidProblem(uid, "dangling", where) for uid, where in refs if uid not in seen)
    return problems
