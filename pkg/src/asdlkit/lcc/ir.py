"""Operator tables, symbol conventions and front-end IR trees.

Integer codes for generic operators and type suffixes are positional:
operators are numbered from 1 in the order of the lcc operator table, and
the six type suffixes from 0 in the order F, I, U, P, B, V.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING, Iterator

if TYPE_CHECKING:
    from .types import CType, Symbol

OPS: tuple[str, ...] = (
    "CNST", "ARG", "ASGN", "INDIR", "CVF", "CVI", "CVP", "CVU",
    "NEG", "CALL", "RET", "ADDRG", "ADDRF", "ADDRL", "ADD", "SUB",
    "LSH", "MOD", "RSH", "BAND", "BCOM", "BOR", "BXOR", "DIV",
    "MUL", "EQ", "GE", "GT", "LE", "LT", "NE", "JUMP", "LABEL",
)
OP_CODE: dict[str, int] = {name: i for i, name in enumerate(OPS, 1)}

SUFFIXES = "FIUPBV"
SUFFIX_CODE: dict[str, int] = {s: i for i, s in enumerate(SUFFIXES)}
F, I, U, P, B, V = range(6)

CONVERSIONS = frozenset({"CVF", "CVI", "CVP", "CVU"})
UNARY = frozenset({"INDIR", "RET", "JUMP", "NEG", "BCOM"})
BINARY = frozenset({"ADD", "SUB", "DIV", "MUL", "MOD", "BOR", "BAND", "BXOR", "RSH", "LSH"})
COMPARE = frozenset({"EQ", "NE", "GT", "GE", "LE", "LT"})


def op_name(code: int) -> str:
    if not 1 <= code <= len(OPS):
        raise ValueError(f"no generic operator with code {code}")
    return OPS[code - 1]


def suffix_letter(code: int) -> str:
    if not 0 <= code < len(SUFFIXES):
        raise ValueError(f"no type suffix with code {code}")
    return SUFFIXES[code]


# symbol-table conventions carried in the integer fields of ``symbol``
CONSTANTS, LABELS, GLOBAL, PARAM, LOCAL = 1, 2, 3, 4, 5
AUTO, REGISTER, STATIC, EXTERN = 1, 2, 3, 4
ADDRESSED, TEMPORARY, GENERATED, DEFINED = 1, 2, 4, 8

SCOPE_NAMES = {CONSTANTS: "CONSTANTS", LABELS: "LABELS", GLOBAL: "GLOBAL", PARAM: "PARAM",
               LOCAL: "LOCAL"}
SCLASS_NAMES = {AUTO: "AUTO", REGISTER: "REGISTER", STATIC: "STATIC", EXTERN: "EXTERN"}

# symbolic rendering of int fields for XML pickles of ``program``
XML_SYMBOLS = {"suffix": dict(enumerate(SUFFIXES)), "op": dict(enumerate(OPS, 1)),
               "scope": SCOPE_NAMES, "sclass": SCLASS_NAMES}


@dataclass(frozen=True)
class Tree:
    """A type- and size-specific operator applied to its operands.

    ``sym`` names the symbol of address leaves and the temporary of a
    ``CSE``; ``ty`` is the callee type of a ``CALL``. ``ints`` holds the
    remaining integer operands: the constant of ``CNST`` (most and least
    significant halves for a floating constant), ``(len, align)``
    of ``ARG`` and ``ASGN``, the source size of a conversion, or the label
    number of ``LABEL``, ``JUMP`` (as a branch) and comparisons.
    """

    op: str
    suffix: int
    size: int
    kids: tuple[Tree, ...] = ()
    sym: Symbol | None = None
    ty: CType | None = None
    ints: tuple[int, ...] = ()

    def postorder(self) -> Iterator[Tree]:
        for k in self.kids:
            yield from k.postorder()
        yield self

    def __str__(self) -> str:
        head = f"{self.op}{SUFFIXES[self.suffix]}{self.size or ''}"
        extra = [self.sym.name] if self.sym is not None else []
        extra += [str(i) for i in self.ints]
        inner = " ".join(extra + [str(k) for k in self.kids])
        return f"({head} {inner})" if inner else head
