"""Front end for the mini language (``.mx`` files).

The language is the smallest closure of C that covers declarations of
``int``/``char`` variables and pointers, assignment through pointers with
post-increment, and printing::

    program := (decl | stmt)*
    decl    := ("int" | "char") ["*"] NAME ("," ["*"] NAME)* ";"
    stmt    := "print" "(" expr ")" ";"
             | lvalue "=" expr ";"
    lvalue  := NAME | "*" unary
    expr    := term (("+" | "-") term)*
    term    := unary (("*" | "/") unary)*
    unary   := "*" unary | NAME "++" | primary
    primary := INT | NAME | "(" expr ")"

``//`` starts a comment that runs to end of line. Every variable is a
local of one synthetic function ``main``; ``print`` is an external
function taking one argument.

Compilation is two-phase: :func:`compile_unit` type-checks the source and
builds all IR trees, then :func:`drive` announces the result to any
:class:`~asdlkit.lcc.backend.Interface` implementation.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterator, Sequence

from ..errors import FrontEndError
from ..syntax import SourceSpan
from .backend import Interface, type_suffix
from .ir import (AUTO, DEFINED, EXTERN, GENERATED, GLOBAL, I, LOCAL, P, REGISTER, TEMPORARY,
                 V, Tree)
from .types import (METRICS_32, CType, Symbol, TargetMetrics, basic_type, function_type,
                    pointer_to, void_type)

INT_MAX = 2**31 - 1

# -- lexing -----------------------------------------------------------------

_TOKEN = re.compile(r"""
    (?P<ws>[ \t\r\n]+|//[^\n]*)
  | (?P<int>[0-9]+)(?![A-Za-z_0-9])
  | (?P<name>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<punct>\+\+|[-+*/=;,()])
""", re.VERBOSE)

KEYWORDS = frozenset({"int", "char", "print"})


@dataclass(frozen=True, slots=True)
class Tok:
    kind: str  # "int", "name", "kw", "punct" or "eof"
    text: str
    span: SourceSpan


def tokenize(src: str) -> list[Tok]:
    out, pos, line, line_start = [], 0, 1, 0
    while pos < len(src):
        m = _TOKEN.match(src, pos)
        span = SourceSpan(line, pos - line_start + 1, pos)
        if m is None:
            raise FrontEndError(f"illegal character {src[pos]!r}", span)
        kind = m.lastgroup
        if kind != "ws":
            if kind == "name" and m.group() in KEYWORDS:
                kind = "kw"
            out.append(Tok(kind, m.group(), span))
        for nl in re.finditer("\n", m.group()):
            line, line_start = line + 1, pos + nl.end()
        pos = m.end()
    out.append(Tok("eof", "", SourceSpan(line, pos - line_start + 1, pos)))
    return out


# -- syntax -------------------------------------------------------------------

@dataclass(frozen=True)
class Num:
    value: int
    span: SourceSpan


@dataclass(frozen=True)
class Var:
    name: str
    span: SourceSpan


@dataclass(frozen=True)
class Deref:
    operand: Expr
    span: SourceSpan


@dataclass(frozen=True)
class PostInc:
    var: Var
    span: SourceSpan


@dataclass(frozen=True)
class BinOp:
    op: str
    left: Expr
    right: Expr
    span: SourceSpan


Expr = Num | Var | Deref | PostInc | BinOp


@dataclass(frozen=True)
class Decl:
    base: str
    pointer: bool
    name: str
    span: SourceSpan


@dataclass(frozen=True)
class Assign:
    target: Var | Deref
    value: Expr
    span: SourceSpan


@dataclass(frozen=True)
class Print:
    value: Expr
    span: SourceSpan


Stmt = Assign | Print


class Parser:
    def __init__(self, src: str):
        self.toks = tokenize(src)
        self.i = 0

    @property
    def tok(self) -> Tok:
        return self.toks[self.i]

    def advance(self) -> Tok:
        t = self.toks[self.i]
        if t.kind != "eof":
            self.i += 1
        return t

    def accept(self, text: str) -> Tok | None:
        if self.tok.text == text and self.tok.kind in ("punct", "kw"):
            return self.advance()
        return None

    def expect(self, text: str) -> Tok:
        t = self.accept(text)
        if t is None:
            raise self.error(f"expected {text!r}")
        return t

    def error(self, msg: str) -> FrontEndError:
        found = "end of input" if self.tok.kind == "eof" else repr(self.tok.text)
        return FrontEndError(f"{msg}, found {found}", self.tok.span)

    def name(self) -> Tok:
        if self.tok.kind != "name":
            raise self.error("expected a name")
        return self.advance()

    def program(self) -> list[Decl | Stmt]:
        out: list[Decl | Stmt] = []
        while self.tok.kind != "eof":
            if self.tok.text in ("int", "char") and self.tok.kind == "kw":
                out.extend(self.decl())
            else:
                out.append(self.stmt())
        return out

    def decl(self) -> list[Decl]:
        base = self.advance().text
        out = []
        while True:
            pointer = self.accept("*") is not None
            n = self.name()
            out.append(Decl(base, pointer, n.text, n.span))
            if not self.accept(","):
                break
        self.expect(";")
        return out

    def stmt(self) -> Stmt:
        start = self.tok.span
        if self.accept("print"):
            self.expect("(")
            e = self.expr()
            self.expect(")")
            self.expect(";")
            return Print(e, start)
        if self.accept("*"):
            target: Var | Deref = Deref(self.unary(), start)
        elif self.tok.kind == "name":
            n = self.advance()
            target = Var(n.text, n.span)
        else:
            raise self.error("expected a declaration or statement")
        self.expect("=")
        e = self.expr()
        self.expect(";")
        return Assign(target, e, start)

    def expr(self) -> Expr:
        e = self.term()
        while self.tok.text in ("+", "-") and self.tok.kind == "punct":
            op = self.advance()
            e = BinOp(op.text, e, self.term(), op.span)
        return e

    def term(self) -> Expr:
        e = self.unary()
        while self.tok.text in ("*", "/") and self.tok.kind == "punct":
            op = self.advance()
            e = BinOp(op.text, e, self.unary(), op.span)
        return e

    def unary(self) -> Expr:
        t = self.tok
        if self.accept("*"):
            return Deref(self.unary(), t.span)
        if t.kind == "int":
            self.advance()
            if self.tok.text == "++":
                raise FrontEndError("'++' applies only to pointer variables", self.tok.span)
            value = int(t.text)
            if value > INT_MAX:
                raise FrontEndError(f"integer literal {t.text} is too large", t.span)
            return Num(value, t.span)
        if t.kind == "name":
            self.advance()
            v = Var(t.text, t.span)
            plus = self.accept("++")
            return PostInc(v, plus.span) if plus else v
        if self.accept("("):
            e = self.expr()
            self.expect(")")
            plus = self.accept("++")
            if plus:
                raise FrontEndError("'++' applies only to pointer variables", plus.span)
            return e
        raise self.error("expected an expression")


def parse_program(src: str) -> list[Decl | Stmt]:
    return Parser(src).program()


# -- compilation --------------------------------------------------------------

@dataclass
class Unit:
    """A compiled program, ready to be announced to a back end."""

    metrics: TargetMetrics
    predefined: tuple[CType, ...]
    main: Symbol | None = None
    printer: Symbol | None = None
    locals: list[Symbol] = field(default_factory=list)
    forests: list[list[Tree]] = field(default_factory=list)
    ncalls: int = 0
    nlabels: int = 0

    @property
    def argv(self) -> tuple[str, ...]:
        return self.metrics.argv


class _Compiler:
    def __init__(self, metrics: TargetMetrics, taken: set[str]):
        m = self.m = metrics
        self.int_t = basic_type("int", m)
        self.char_t = basic_type("char", m)
        self.void_t = void_type()
        self._pointers: dict[int, CType] = {}
        self.scope: dict[str, Symbol] = {}
        self.decls: list[Symbol] = []
        self.temps: list[Symbol] = []
        self.taken = taken
        self.ntemps = 0
        self.printer: Symbol | None = None
        self.ncalls = 0

    def pointer(self, t: CType) -> CType:
        if id(t) not in self._pointers:
            self._pointers[id(t)] = pointer_to(t, self.m)
        return self._pointers[id(t)]

    # -- symbols --------------------------------------------------------------
    def declare(self, d: Decl) -> None:
        if d.name in self.scope:
            raise FrontEndError(f"redeclaration of {d.name!r}", d.span)
        t = self.int_t if d.base == "int" else self.char_t
        sym = Symbol(d.name, self.pointer(t) if d.pointer else t, LOCAL, AUTO)
        self.scope[d.name] = sym
        self.decls.append(sym)

    def lookup(self, v: Var) -> Symbol:
        sym = self.scope.get(v.name)
        if sym is None:
            raise FrontEndError(f"undeclared name {v.name!r}", v.span)
        return sym

    def temp(self, t: CType, sclass: int) -> Symbol:
        while True:
            self.ntemps += 1
            name = f"t{self.ntemps}"
            if name not in self.taken:
                break
        sym = Symbol(name, t, LOCAL, sclass, 0, TEMPORARY | GENERATED)
        self.temps.append(sym)
        return sym

    # -- trees ----------------------------------------------------------------
    def addr(self, sym: Symbol) -> Tree:
        return Tree("ADDRL", P, self.m.pointer.size, sym=sym)

    def fetch(self, address: Tree, t: CType) -> Tree:
        return Tree("INDIR", type_suffix(t), t.size, (address,))

    def widen(self, tree: Tree, t: CType) -> tuple[Tree, CType]:
        """Promote a char rvalue to int."""
        if t is self.char_t:
            return Tree("CVI", I, self.int_t.size, (tree,), ints=(t.size,)), self.int_t
        return tree, t

    def cnst(self, value: int) -> Tree:
        return Tree("CNST", I, self.int_t.size, ints=(value,))

    def assign(self, address: Tree, value: Tree, t: CType) -> Tree:
        return Tree("ASGN", type_suffix(t), t.size, (address, value), ints=(t.size, t.align))

    def rvalue(self, e: Expr, pre: list[Tree]) -> tuple[Tree, CType]:
        if isinstance(e, Num):
            return self.cnst(e.value), self.int_t
        if isinstance(e, Var):
            sym = self.lookup(e)
            return self.widen(self.fetch(self.addr(sym), sym.type), sym.type)
        if isinstance(e, Deref):
            address, t = self.rvalue(e.operand, pre)
            if not t.is_pointer:
                raise FrontEndError(f"cannot dereference a value of type {t}", e.span)
            return self.widen(self.fetch(address, t.ref), t.ref)
        if isinstance(e, PostInc):
            sym = self.lookup(e.var)
            if not sym.type.is_pointer:
                raise FrontEndError(f"'++' applies only to pointer variables, and "
                                    f"{sym.name!r} has type {sym.type}", e.span)
            t = sym.type
            tmp = self.temp(t, AUTO)
            pre.append(self.assign(self.addr(tmp), self.fetch(self.addr(sym), t), t))
            step = Tree("ADD", P, t.size, (self.fetch(self.addr(tmp), t), self.cnst(t.ref.size)))
            pre.append(self.assign(self.addr(sym), step, t))
            return self.fetch(self.addr(tmp), t), t
        return self.binop(e, pre)

    def binop(self, e: BinOp, pre: list[Tree]) -> tuple[Tree, CType]:
        left, lt = self.rvalue(e.left, pre)
        right, rt = self.rvalue(e.right, pre)
        op = {"+": "ADD", "-": "SUB", "*": "MUL", "/": "DIV"}[e.op]
        if lt is self.int_t and rt is self.int_t:
            return Tree(op, I, self.int_t.size, (left, right)), self.int_t
        if op == "ADD" and lt.is_pointer and rt is self.int_t:
            return Tree(op, P, lt.size, (left, self.scale(right, lt.ref.size))), lt
        if op == "ADD" and lt is self.int_t and rt.is_pointer:
            return Tree(op, P, rt.size, (self.scale(left, rt.ref.size), right)), rt
        if op == "SUB" and lt.is_pointer and rt is self.int_t:
            return Tree(op, P, lt.size, (left, self.scale(right, lt.ref.size))), lt
        raise FrontEndError(f"invalid operands to {e.op!r}: {lt} and {rt}", e.span)

    def scale(self, tree: Tree, size: int) -> Tree:
        if size == 1:
            return tree
        if tree.op == "CNST" and abs(tree.ints[0] * size) <= INT_MAX:
            return self.cnst(tree.ints[0] * size)
        return Tree("MUL", I, self.int_t.size, (tree, self.cnst(size)))

    def convert(self, value: Tree, vt: CType, t: CType, span: SourceSpan) -> Tree:
        if vt is t:
            return value
        if t is self.char_t and vt is self.int_t:
            if value.op == "CVI" and value.ints == (t.size,):
                return value.kids[0]  # a promoted char narrows back to itself
            return Tree("CVI", I, t.size, (value,), ints=(vt.size,))
        raise FrontEndError(f"type mismatch: cannot assign {vt} to {t}", span)

    def statement(self, s: Stmt) -> list[Tree]:
        pre: list[Tree] = []
        if isinstance(s, Print):
            value, t = self.rvalue(s.value, pre)
            if self.printer is None:
                ft = function_type(self.void_t, [], self.m)
                self.printer = Symbol("print", ft, GLOBAL, EXTERN)
            self.ncalls += 1
            main = [Tree("ARG", type_suffix(t), t.size, (value,), ints=(t.size, t.align)),
                    Tree("CALL", V, 0, (Tree("ADDRG", P, self.m.pointer.size,
                                             sym=self.printer),), ty=self.printer.type)]
        else:
            if isinstance(s.target, Var):
                sym = self.lookup(s.target)
                address, t = self.addr(sym), sym.type
            else:
                address, pt = self.rvalue(s.target.operand, pre)
                if not pt.is_pointer:
                    raise FrontEndError(f"cannot assign through a value of type {pt}", s.span)
                t = pt.ref
            value, vt = self.rvalue(s.value, pre)
            main = [self.assign(address, self.convert(value, vt, t, s.span), t)]
        return pre + self.common_subexpressions(main)

    # -- common subexpressions ----------------------------------------------------
    def _is_read(self, n: Tree) -> bool:
        return (n.op == "INDIR" and n.kids[0].op == "ADDRL"
                and not n.kids[0].sym.flags & TEMPORARY)

    def common_subexpressions(self, roots: list[Tree]) -> list[Tree]:
        """Hoist every variable read more than once into a temporary: the
        first read in evaluation order computes it, later reads fetch it."""
        counts = Counter(n.kids[0].sym for r in roots for n in r.postorder() if self._is_read(n))
        repeated = {s for s, c in counts.items() if c > 1}
        if not repeated:
            return roots
        temps: dict[Symbol, Symbol] = {}

        def rewrite(n: Tree) -> Tree:
            if self._is_read(n) and n.kids[0].sym in repeated:
                sym = n.kids[0].sym
                if sym in temps:
                    return self.fetch(self.addr(temps[sym]), sym.type)
                temps[sym] = self.temp(sym.type, REGISTER)
                return Tree("CSE", n.suffix, n.size, (n,), sym=temps[sym])
            kids = tuple(rewrite(k) for k in n.kids)
            return n if kids == n.kids else Tree(n.op, n.suffix, n.size, kids, n.sym, n.ty, n.ints)

        return [rewrite(r) for r in roots]


def _declared_names(ast: Sequence[Decl | Stmt]) -> set[str]:
    return {d.name for d in ast if isinstance(d, Decl)}


def _count_refs(forests: Sequence[Sequence[Tree]]) -> None:
    for forest in forests:
        for root in forest:
            for n in root.postorder():
                if n.sym is not None:
                    n.sym.ref += 1


def compile_unit(src: str, metrics: TargetMetrics = METRICS_32) -> Unit:
    """Parse and type-check ``src`` and build its IR trees."""
    ast = parse_program(src)
    c = _Compiler(metrics, _declared_names(ast))
    unit = Unit(metrics, (c.int_t, c.char_t))
    if not ast:
        return unit
    for item in ast:
        if isinstance(item, Decl):
            c.declare(item)
        else:
            unit.forests.append(c.statement(item))
    unit.main = Symbol("main", function_type(c.int_t, [], metrics), GLOBAL, EXTERN, 0, DEFINED)
    unit.printer = c.printer
    unit.locals = c.decls + c.temps
    unit.ncalls = c.ncalls
    unit.nlabels = 1
    _count_refs(unit.forests)
    return unit


def epilogue(label: int) -> list[Tree]:
    return [Tree("LABEL", V, 0, ints=(label,))]


def drive(unit: Unit, be: Interface) -> None:
    """Announce ``unit`` to a back end through the interface calls."""
    be.progbeg(unit.argv)
    if unit.main is not None:
        be.defsymbol(unit.main)
        be.export(unit.main)
        if unit.printer is not None:
            be.defsymbol(unit.printer)
            be.import_(unit.printer)

        def body() -> None:
            be.blockbeg()
            for sym in unit.locals:
                be.local(sym)
            for forest in unit.forests:
                be.gen(forest)
            be.blockend()
            be.gen(epilogue(unit.nlabels))

        be.function(unit.main, [], [], unit.ncalls, body)
    be.progend()


def iter_trees(unit: Unit) -> Iterator[Tree]:
    for forest in unit.forests:
        yield from forest
