"""Replaying a pickled ``program`` against a back end.

A first pass over the items rebuilds the uid -> type and uid -> symbol
maps; a second pass walks the interface list in order and makes the
encoded calls. ``progbeg``/``progend`` and the block calls are supplied
here because the pickle does not record them as arguments.
"""

from __future__ import annotations

from typing import Sequence

from .. import pickleio
from ..errors import DanglingUid
from ..values import ProductV, SumV
from .backend import Interface, StackBackEnd
from .ir import Tree, op_name
from .types import CType, Field, Symbol
from .uids import rcc


class Rebuilder:
    """Uid tables reconstructed from a ``program``'s items."""

    def __init__(self, items: Sequence[SumV]):
        self._items: dict[int, SumV] = {}
        for item in items:
            self._items.setdefault(item.attrs[0].value, item)
        self._types: dict[int, CType] = {}
        self._symbols: dict[int, Symbol] = {}
        for uid, item in self._items.items():
            if item.ctor == "Type":
                self.type(uid)
            else:
                self.symbol(uid)

    def type(self, uid: int) -> CType:
        t = self._types.get(uid)
        if t is not None:
            return t
        item = self._items.get(uid)
        if item is None or item.ctor != "Type":
            raise DanglingUid(uid)
        v = item.fields[0]
        t = self._types[uid] = CType(v.ctor, v.attrs[0].value, v.attrs[1].value)
        fs = v.fields
        if v.ctor in ("POINTER", "ARRAY", "CONST", "VOLATILE"):
            t.ref = self.type(fs[0].value)
        elif v.ctor == "ENUM":
            t.tag = fs[0].text
            t.enums = [(e.fields[0].text, e.fields[1].value) for e in fs[1].items]
        elif v.ctor in ("STRUCT", "UNION"):
            t.tag = fs[0].text
            t.fields = [Field(f.fields[0].text, self.type(f.fields[1].value), f.fields[2].value,
                              f.fields[3].value, f.fields[4].value) for f in fs[1].items]
        elif v.ctor == "FUNCTION":
            t.ref = self.type(fs[0].value)
            t.formals = [self.type(x.value) for x in fs[1].items]
        return t

    def make_symbol(self, v: ProductV) -> Symbol:
        name, ty, scope, sclass, ref, flags = v.fields
        return Symbol(name.text, self.type(ty.value), scope.value, sclass.value, ref.value,
                      flags.value)

    def define(self, uid: int, v: ProductV) -> Symbol:
        sym = self._symbols[uid] = self.make_symbol(v)
        return sym

    def symbol(self, uid: int) -> Symbol:
        sym = self._symbols.get(uid)
        if sym is not None:
            return sym
        item = self._items.get(uid)
        if item is None or item.ctor != "Symbol":
            raise DanglingUid(uid)
        return self.define(uid, item.fields[0])

    def tree(self, n: SumV) -> Tree:
        suffix, size = n.attrs[0].value, n.attrs[1].value
        c, fs = n.ctor, n.fields
        if c == "CNST":
            return Tree("CNST", suffix, size, ints=(fs[0].value,))
        if c in ("ARG", "ASGN"):
            kids = tuple(self.tree(k) for k in fs[:-2])
            return Tree(c, suffix, size, kids, ints=(fs[-2].value, fs[-1].value))
        if c == "CVT":
            return Tree(op_name(fs[0].value), suffix, size, (self.tree(fs[1]),),
                        ints=(fs[2].value,))
        if c in ("CALL", "CALLB"):
            kids = tuple(self.tree(k) for k in fs[:-1])
            return Tree("CALL", suffix, size, kids, ty=self.type(fs[-1].value))
        if c == "RET":
            return Tree("RET", suffix, size)
        if c in ("ADDRG", "ADDRL", "ADDRF"):
            return Tree(c, suffix, size, sym=self.symbol(fs[0].value))
        if c == "Unary":
            return Tree(op_name(fs[0].value), suffix, size, (self.tree(fs[1]),))
        if c == "Binary":
            return Tree(op_name(fs[0].value), suffix, size, (self.tree(fs[1]), self.tree(fs[2])))
        if c == "Compare":
            return Tree(op_name(fs[0].value), suffix, size, (self.tree(fs[1]), self.tree(fs[2])),
                        ints=(fs[3].value,))
        if c == "LABEL":
            return Tree("LABEL", suffix, size, ints=(fs[0].value,))
        if c == "BRANCH":
            return Tree("JUMP", suffix, size, ints=(fs[0].value,))
        if c == "CNSTF":
            return Tree("CNST", suffix, size, ints=(fs[0].fields[0].value, fs[0].fields[1].value))
        # CSE
        return Tree("CSE", suffix, size, (self.tree(fs[1]),), sym=self.symbol(fs[0].value))


def replay(program: ProductV, be: Interface) -> None:
    """Make the calls encoded in ``program`` on ``be``."""
    _, _, items, interfaces, _, argv = program.fields
    rb = Rebuilder(items.items)
    be.progbeg([a.value for a in argv.items])
    _replay_list(rb, interfaces.items, be)
    be.progend()


def _replay_list(rb: Rebuilder, interfaces: Sequence[SumV], be: Interface) -> None:
    for x in interfaces:
        c, fs = x.ctor, x.fields
        if c == "Export":
            be.export(rb.symbol(fs[0].value))
        elif c == "Import":
            be.import_(rb.symbol(fs[0].value))
        elif c == "Global":
            be.global_(rb.symbol(fs[0].value), fs[1].value)
        elif c == "Local":
            be.local(rb.define(fs[0].value, fs[1]))
        elif c == "Address":
            base = rb.symbol(fs[2].value)
            be.address(rb.define(fs[0].value, fs[1]), base, fs[3].value)
        elif c == "Segment":
            be.segment(fs[0].value)
        elif c == "Defaddress":
            be.defaddress(rb.symbol(fs[0].value))
        elif c == "Deflabel":
            be.deflabel(fs[0].value)
        elif c == "Defconst":
            be.defconst(fs[0].value, fs[1].value, fs[2].value)
        elif c == "Defconstf":
            be.defconstf(fs[0].value, fs[1].fields[0].value, fs[1].fields[1].value)
        elif c == "Defstring":
            be.defstring(fs[0].value)
        elif c == "Space":
            be.space(fs[0].value)
        elif c == "Function":
            f = rb.symbol(fs[0].value)
            caller = [rb.symbol(u.value) for u in fs[1].items]
            callee = [rb.symbol(u.value) for u in fs[2].items]
            codelist = fs[4].items
            be.function(f, caller, callee, fs[3].value,
                        lambda codelist=codelist: _replay_list(rb, codelist, be))
        elif c == "Blockbeg":
            be.blockbeg()
        elif c == "Blockend":
            be.blockend()
        else:  # Forest
            be.gen([rb.tree(n) for n in fs[0].items])


def read_program(data: bytes) -> ProductV:
    """The first instance of a pickle, read as a ``program``."""
    return pickleio.read_first(rcc(), "program", data)


def pass2(data: bytes) -> str:
    """Pseudo-assembly for the first ``program`` in ``data``."""
    be = StackBackEnd()
    replay(read_program(data), be)
    return be.text()
