"""The code-generation interface and a stack-machine back end.

The front end talks to a back end only through :class:`Interface`. The
same calls can be made directly, in one process, or recorded into a
pickle and replayed later by a separate program; either way the back end
sees an identical call sequence.
"""

from __future__ import annotations

import json
from typing import Callable, Sequence

from .ir import BINARY, COMPARE, CONVERSIONS, I, P, SUFFIXES, UNARY, Tree, suffix_letter
from .types import CType, Symbol, TargetMetrics, metrics_from_argv


class Interface:
    """The calls a front end makes on a back end.

    ``function`` receives the body as a callable; the back end invokes it
    exactly once, and the body's calls (``blockbeg``, ``local``, ``gen``,
    ...) arrive on the same back end while it runs.
    """

    def progbeg(self, argv: Sequence[str]) -> None:
        raise NotImplementedError

    def progend(self) -> None:
        raise NotImplementedError

    def defsymbol(self, sym: Symbol) -> None:
        """Announce a symbol. Neither bundled back end needs to act on it."""

    def export(self, sym: Symbol) -> None:
        raise NotImplementedError

    def import_(self, sym: Symbol) -> None:
        raise NotImplementedError

    def global_(self, sym: Symbol, seg: int) -> None:
        raise NotImplementedError

    def local(self, sym: Symbol) -> None:
        raise NotImplementedError

    def address(self, q: Symbol, p: Symbol, n: int) -> None:
        raise NotImplementedError

    def segment(self, seg: int) -> None:
        raise NotImplementedError

    def defaddress(self, sym: Symbol) -> None:
        raise NotImplementedError

    def deflabel(self, label: int) -> None:
        raise NotImplementedError

    def defconst(self, suffix: int, size: int, value: int) -> None:
        raise NotImplementedError

    def defconstf(self, size: int, msb: int, lsb: int) -> None:
        raise NotImplementedError

    def defstring(self, s: str) -> None:
        raise NotImplementedError

    def space(self, n: int) -> None:
        raise NotImplementedError

    def function(self, f: Symbol, caller: Sequence[Symbol], callee: Sequence[Symbol],
                 ncalls: int, body: Callable[[], None]) -> None:
        raise NotImplementedError

    def blockbeg(self) -> None:
        raise NotImplementedError

    def blockend(self) -> None:
        raise NotImplementedError

    def gen(self, forest: Sequence[Tree]) -> None:
        raise NotImplementedError


def type_suffix(t: CType) -> int:
    """The operand-type suffix code for values of type ``t``."""
    k = t.kind
    if k in ("CONST", "VOLATILE"):
        return type_suffix(t.ref)
    return SUFFIXES.index({"INT": "I", "ENUM": "I", "UNSIGNED": "U", "FLOAT": "F",
                           "POINTER": "P", "FUNCTION": "P", "VOID": "V"}.get(k, "B"))


def _round_up(n: int, align: int) -> int:
    return -(-n // align) * align if align > 1 else n


class StackBackEnd(Interface):
    """Emits pseudo-assembly for a simple stack machine.

    Each node becomes one line, operands before operators: leaves push,
    operators pop their operands and push a result. Locals get frame
    offsets as they are announced; because the frame size is known only
    after the body, a function's lines are buffered and its header is
    written last.
    """

    def __init__(self) -> None:
        self.lines: list[str] = []
        self.metrics: TargetMetrics | None = None
        self._out = self.lines
        self._offset = 0
        self._frame = 0
        self._blocks: list[int] = []

    def text(self) -> str:
        return "".join(line + "\n" for line in self.lines)

    def emit(self, line: str) -> None:
        self._out.append(line)

    # -- program-level calls --------------------------------------------------
    def progbeg(self, argv: Sequence[str]) -> None:
        self.metrics = metrics_from_argv(argv)
        self.emit(" ".join(["progbeg", *argv]))

    def progend(self) -> None:
        self.emit("progend")

    def export(self, sym: Symbol) -> None:
        self.emit(f"export {sym.name}")

    def import_(self, sym: Symbol) -> None:
        self.emit(f"import {sym.name}")

    def global_(self, sym: Symbol, seg: int) -> None:
        self.emit(f"global {sym.name} segment {seg} size {sym.type.size} "
                  f"align {sym.type.align}")

    def address(self, q: Symbol, p: Symbol, n: int) -> None:
        self.emit(f"address {q.name} = {p.name}{n:+d}")

    def segment(self, seg: int) -> None:
        self.emit(f"segment {seg}")

    def defaddress(self, sym: Symbol) -> None:
        self.emit(f"defaddress {sym.name}")

    def deflabel(self, label: int) -> None:
        self.emit(f"deflabel L{label}")

    def defconst(self, suffix: int, size: int, value: int) -> None:
        self.emit(f"defconst.{suffix_letter(suffix).lower()}{size} {value}")

    def defconstf(self, size: int, msb: int, lsb: int) -> None:
        self.emit(f"defconst.f{size} {msb:#x} {lsb:#x}")

    def defstring(self, s: str) -> None:
        self.emit(f"defstring {json.dumps(s, ensure_ascii=True)}")

    def space(self, n: int) -> None:
        self.emit(f"space {n}")

    # -- functions ------------------------------------------------------------
    def _allocate(self, sym: Symbol) -> int:
        t = sym.type
        self._offset = _round_up(self._offset, max(t.align, 1))
        where = self._offset
        self._offset += t.size
        self._frame = max(self._frame, self._offset)
        return where

    def local(self, sym: Symbol) -> None:
        where = self._allocate(sym)
        self.emit(f"\tlocal {sym.name} {where} {sym.type.size}")

    def function(self, f: Symbol, caller: Sequence[Symbol], callee: Sequence[Symbol],
                 ncalls: int, body: Callable[[], None]) -> None:
        outer = self._out
        self._out, self._offset, self._frame, self._blocks = [], 0, 0, []
        argoff = 0
        for c, p in zip(caller, callee):
            argoff = _round_up(argoff, max(c.type.align, 1))
            self.emit(f"\tparam {c.name} {argoff} {c.type.size}")
            if c.type is not p.type or c.sclass != p.sclass:
                self.local(p)
                self._copy_param(c, p)
            argoff += c.type.size
        body()
        lines = self._out
        self._out = outer
        self.emit(f"function {f.name} framesize {self._frame} ncalls {ncalls}")
        self._out.extend(lines)
        self.emit(f"endfunction {f.name}")

    def _copy_param(self, caller: Symbol, callee: Symbol) -> None:
        """Assign the incoming parameter to its callee view, converting
        when their types differ."""
        m = self.metrics
        src, dst = caller.type, callee.type
        value = Tree("INDIR", type_suffix(src), src.size,
                     (Tree("ADDRF", P, m.pointer.size, sym=caller),))
        if src.size != dst.size and type_suffix(src) == type_suffix(dst) == I:
            value = Tree("CVI", I, dst.size, (value,), ints=(src.size,))
        self.gen([Tree("ASGN", type_suffix(dst), dst.size,
                       (Tree("ADDRL", P, m.pointer.size, sym=callee), value),
                       ints=(dst.size, dst.align))])

    def blockbeg(self) -> None:
        self._blocks.append(self._offset)
        self.emit("\tblockbeg")

    def blockend(self) -> None:
        self._offset = self._blocks.pop()
        self.emit("\tblockend")

    # -- code -------------------------------------------------------------------
    def gen(self, forest: Sequence[Tree]) -> None:
        for root in forest:
            for node in root.postorder():
                self.emit("\t" + self.instruction(node))

    def instruction(self, n: Tree) -> str:
        op = n.op.lower()
        typed = f"{op}.{SUFFIXES[n.suffix].lower()}{n.size or ''}"
        if n.op == "LABEL":
            return f"label L{n.ints[0]}"
        if n.op == "JUMP" and not n.kids:
            return f"jump L{n.ints[0]}"
        if n.op in ("ADDRG", "ADDRF", "ADDRL"):
            return f"{op} {n.sym.name}"
        if n.op == "CSE":
            return f"cse.{SUFFIXES[n.suffix].lower()}{n.size or ''} {n.sym.name}"
        if n.op == "CNST" or n.op in CONVERSIONS:
            return f"{typed} {' '.join(map(str, n.ints))}"
        if n.op in COMPARE:
            return f"{typed} L{n.ints[0]}"
        if n.op in ("ARG", "ASGN") and n.suffix == SUFFIXES.index("B"):
            return f"{typed} {n.ints[0]} {n.ints[1]}"
        if n.op in UNARY or n.op in BINARY or n.op in ("ARG", "ASGN", "CALL", "RET"):
            return typed
        raise ValueError(f"no instruction for operator {n.op!r}")

