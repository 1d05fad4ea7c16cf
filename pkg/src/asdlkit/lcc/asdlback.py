"""A back end that records interface calls as a ``program`` value.

It stands in for a real code generator: each call is encoded as an
``interface`` value, with symbol and type pointers replaced by uids, and
``progend`` seals everything into one ``program`` instance.
"""

from __future__ import annotations

from typing import Callable, Sequence

from ..values import IntV, ListV, ProductV, StringV, SumV, Value
from .backend import Interface
from .ir import BINARY, COMPARE, CONVERSIONS, OP_CODE, UNARY, Tree
from .types import CType, Symbol
from .uids import UidTable


def _sum(type_name: str, ctor: str, *fields: Value, attrs: tuple[Value, ...] = ()) -> SumV:
    return SumV(type_name, ctor, attrs, tuple(fields))


class AsdlBackEnd(Interface):
    def __init__(self, predefined: Sequence[CType] = ()):
        self.uids = UidTable()
        for t in predefined:
            self.uids.intern_type(t)
        self.argv: tuple[str, ...] = ()
        self.program: ProductV | None = None
        self._lists: list[list[SumV]] = [[]]
        self._max_label = 0

    def _add(self, ctor: str, *fields: Value) -> None:
        self._lists[-1].append(_sum("interface", ctor, *fields))

    def _ref(self, sym: Symbol) -> IntV:
        """The uid of a referenced symbol; globals get an item on first use."""
        if sym in self.uids:
            return IntV(self.uids.uid(sym))
        return IntV(self.uids.intern_symbol(sym))

    def _label(self, label: int) -> IntV:
        self._max_label = max(self._max_label, label)
        return IntV(label)

    # -- program ----------------------------------------------------------------
    def progbeg(self, argv: Sequence[str]) -> None:
        self.argv = tuple(argv)

    def progend(self) -> None:
        (interfaces,) = self._lists
        self.program = ProductV("program", (
            IntV(self.uids.count), IntV(self._max_label), ListV(tuple(self.uids.items)),
            ListV(tuple(interfaces)), IntV(len(self.argv)),
            ListV(tuple(StringV(a) for a in self.argv))))

    def export(self, sym: Symbol) -> None:
        self._add("Export", self._ref(sym))

    def import_(self, sym: Symbol) -> None:
        self._add("Import", self._ref(sym))

    def global_(self, sym: Symbol, seg: int) -> None:
        self._add("Global", self._ref(sym), IntV(seg))

    def local(self, sym: Symbol) -> None:
        uid = self.uids.intern_local(sym)
        self._add("Local", IntV(uid), self.uids.encode_symbol(sym))

    def address(self, q: Symbol, p: Symbol, n: int) -> None:
        base = self._ref(p)
        uid = self.uids.intern_local(q)
        self._add("Address", IntV(uid), self.uids.encode_symbol(q), base, IntV(n))

    def segment(self, seg: int) -> None:
        self._add("Segment", IntV(seg))

    def defaddress(self, sym: Symbol) -> None:
        self._add("Defaddress", self._ref(sym))

    def deflabel(self, label: int) -> None:
        self._add("Deflabel", self._label(label))

    def defconst(self, suffix: int, size: int, value: int) -> None:
        self._add("Defconst", IntV(suffix), IntV(size), IntV(value))

    def defconstf(self, size: int, msb: int, lsb: int) -> None:
        self._add("Defconstf", IntV(size), ProductV("real", (IntV(msb), IntV(lsb))))

    def defstring(self, s: str) -> None:
        self._add("Defstring", StringV(s))

    def space(self, n: int) -> None:
        self._add("Space", IntV(n))

    def function(self, f: Symbol, caller: Sequence[Symbol], callee: Sequence[Symbol],
                 ncalls: int, body: Callable[[], None]) -> None:
        fuid = self._ref(f)
        callers = ListV(tuple(self._ref(s) for s in caller))
        callees = ListV(tuple(self._ref(s) for s in callee))
        self._lists.append([])
        body()
        codelist = self._lists.pop()
        self._add("Function", fuid, callers, callees, IntV(ncalls), ListV(tuple(codelist)))

    def blockbeg(self) -> None:
        self._add("Blockbeg")

    def blockend(self) -> None:
        self._add("Blockend")

    def gen(self, forest: Sequence[Tree]) -> None:
        self._add("Forest", ListV(tuple(self.node(t) for t in forest)))

    # -- nodes ------------------------------------------------------------------
    def node(self, t: Tree) -> SumV:
        attrs = (IntV(t.suffix), IntV(t.size))
        kids = [self.node(k) for k in t.kids]
        op = t.op

        def mk(ctor: str, *fields: Value) -> SumV:
            return _sum("node", ctor, *fields, attrs=attrs)

        if op == "CNST" and len(t.ints) == 2:
            return mk("CNSTF", ProductV("real", (IntV(t.ints[0]), IntV(t.ints[1]))))
        if op == "CNST":
            return mk("CNST", IntV(t.ints[0]))
        if op in ("ARG", "ASGN"):
            return mk(op, *kids, IntV(t.ints[0]), IntV(t.ints[1]))
        if op in CONVERSIONS:
            return mk("CVT", IntV(OP_CODE[op]), kids[0], IntV(t.ints[0]))
        if op == "CALL":
            ty = IntV(self.uids.intern_type(t.ty))
            return mk("CALLB" if len(kids) == 2 else "CALL", *kids, ty)
        if op == "RET" and not kids:
            return mk("RET")
        if op in ("ADDRG", "ADDRL", "ADDRF"):
            return mk(op, self._ref(t.sym))
        if op == "JUMP" and not kids:
            return mk("BRANCH", self._label(t.ints[0]))
        if op in UNARY:
            return mk("Unary", IntV(OP_CODE[op]), kids[0])
        if op in BINARY:
            return mk("Binary", IntV(OP_CODE[op]), kids[0], kids[1])
        if op in COMPARE:
            return mk("Compare", IntV(OP_CODE[op]), kids[0], kids[1], self._label(t.ints[0]))
        if op == "LABEL":
            return mk("LABEL", self._label(t.ints[0]))
        if op == "CSE":
            return mk("CSE", self._ref(t.sym), kids[0])
        raise ValueError(f"cannot encode operator {op!r}")

