"""Target metrics, C types and symbol-table entries of the demo compiler.

Types and symbols are keyed by identity, never by contents: two entries
that happen to look alike are still two entries, and the pickle gives
each its own uid.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from ..errors import FrontEndError
from .ir import AUTO, LOCAL


@dataclass(frozen=True, slots=True)
class Metric:
    size: int
    align: int


@dataclass(frozen=True, slots=True)
class TargetMetrics:
    """Sizes and alignments, in bytes, of the basic data types."""

    name: str
    char: Metric
    short: Metric
    int: Metric
    long: Metric
    float: Metric
    double: Metric
    pointer: Metric
    little_endian: bool = True

    def __post_init__(self) -> None:
        for kind in ("char", "short", "int", "long", "float", "double", "pointer"):
            m = getattr(self, kind)
            if m.align <= 0 or m.align & (m.align - 1):
                raise ValueError(f"{kind} alignment {m.align} is not a power of two")
            if m.align > m.size:
                raise ValueError(f"{kind} alignment {m.align} exceeds its size {m.size}")

    def sizes(self) -> frozenset[int]:
        return frozenset(getattr(self, k).size for k in
                         ("char", "short", "int", "long", "float", "double", "pointer"))

    @property
    def argv(self) -> tuple[str, ...]:
        return (f"-metrics={self.name}",)


METRICS_32 = TargetMetrics(
    "32", char=Metric(1, 1), short=Metric(2, 2), int=Metric(4, 4), long=Metric(4, 4),
    float=Metric(4, 4), double=Metric(8, 4), pointer=Metric(4, 4))
METRICS_64 = TargetMetrics(
    "64", char=Metric(1, 1), short=Metric(2, 2), int=Metric(4, 4), long=Metric(8, 8),
    float=Metric(4, 4), double=Metric(8, 8), pointer=Metric(8, 8))
METRICS = {"32": METRICS_32, "64": METRICS_64}


def metrics_from_argv(argv: Sequence[str]) -> TargetMetrics:
    """Select the metrics named by a ``-metrics=`` argument (default 32-bit)."""
    chosen = METRICS_32
    for arg in argv:
        if arg.startswith("-metrics="):
            name = arg.split("=", 1)[1]
            if name not in METRICS:
                raise FrontEndError(f"unknown target metrics {name!r}")
            chosen = METRICS[name]
    return chosen


# -- types ------------------------------------------------------------------

@dataclass(eq=False)
class Field:
    name: str
    type: CType
    offset: int = 0
    bitsize: int = 0
    lsb: int = 0


@dataclass(eq=False)
class CType:
    """A C type. ``kind`` is the matching constructor of the pickled
    ``type`` sum; ``basic`` names the metric of arithmetic types."""

    kind: str
    size: int = 0
    align: int = 0
    ref: CType | None = None
    basic: str = ""
    tag: str = ""
    fields: list[Field] = field(default_factory=list)
    enums: list[tuple[str, int]] = field(default_factory=list)
    formals: list[CType] = field(default_factory=list)
    count: int = 0

    @property
    def is_pointer(self) -> bool:
        return self.kind == "POINTER"

    def __str__(self) -> str:
        if self.kind == "POINTER":
            return f"{self.ref} *"
        if self.kind in ("STRUCT", "UNION", "ENUM"):
            return f"{self.kind.lower()} {self.tag}"
        if self.kind == "FUNCTION":
            return f"{self.ref} ({', '.join(map(str, self.formals))})"
        if self.kind in ("CONST", "VOLATILE", "ARRAY"):
            return f"{self.kind.lower()} {self.ref}"
        return self.basic or self.kind.lower()


@dataclass(frozen=True, slots=True)
class Layout:
    size: int
    align: int
    offsets: tuple[int, ...] = ()


def _round_up(n: int, align: int) -> int:
    return -(-n // align) * align if align > 1 else n


def layout_type(t: CType, m: TargetMetrics) -> Layout:
    """Size, alignment and field offsets of ``t`` under ``m``.

    Field types must already be laid out. Struct fields are placed in
    declaration order at the next offset aligned for the field; the record
    aligns to its most-aligned field and its size rounds up to that.
    """
    if t.kind in ("INT", "UNSIGNED", "FLOAT"):
        metric = getattr(m, t.basic)
        return Layout(metric.size, metric.align)
    if t.kind == "ENUM":
        return Layout(m.int.size, m.int.align)
    if t.kind == "POINTER":
        return Layout(m.pointer.size, m.pointer.align)
    if t.kind in ("VOID", "FUNCTION"):
        return Layout(0, 0)
    if t.kind in ("CONST", "VOLATILE"):
        return Layout(t.ref.size, t.ref.align)
    if t.kind == "ARRAY":
        return Layout(t.count * t.ref.size, t.ref.align)
    align = max((f.type.align for f in t.fields), default=1)
    if t.kind == "UNION":
        size = max((f.type.size for f in t.fields), default=0)
        return Layout(_round_up(size, align), align, tuple(0 for _ in t.fields))
    offsets, off = [], 0
    for f in t.fields:
        off = _round_up(off, f.type.align)
        offsets.append(off)
        off += f.type.size
    return Layout(_round_up(off, align), align, tuple(offsets))


def _laid_out(t: CType, m: TargetMetrics) -> CType:
    lay = layout_type(t, m)
    t.size, t.align = lay.size, lay.align
    for f, off in zip(t.fields, lay.offsets):
        f.offset = off
    return t


_BASIC_KIND = {"char": "INT", "short": "INT", "int": "INT", "long": "INT",
               "float": "FLOAT", "double": "FLOAT"}


def basic_type(name: str, m: TargetMetrics, unsigned: bool = False) -> CType:
    kind = "UNSIGNED" if unsigned else _BASIC_KIND[name]
    return _laid_out(CType(kind, basic=name), m)


def void_type() -> CType:
    return CType("VOID", basic="void")


def pointer_to(t: CType, m: TargetMetrics) -> CType:
    return _laid_out(CType("POINTER", ref=t), m)


def function_type(ret: CType, formals: Sequence[CType], m: TargetMetrics) -> CType:
    return _laid_out(CType("FUNCTION", ref=ret, formals=list(formals)), m)


def struct_type(tag: str) -> CType:
    """An incomplete struct; call :func:`complete_struct` once its field
    types exist (they may point back at it)."""
    return CType("STRUCT", tag=tag)


def complete_struct(t: CType, fields: Sequence[tuple[str, CType]], m: TargetMetrics) -> CType:
    t.fields = [Field(name, ft) for name, ft in fields]
    return _laid_out(t, m)


# -- symbols ----------------------------------------------------------------

@dataclass(eq=False)
class Symbol:
    name: str
    type: CType
    scope: int = LOCAL
    sclass: int = AUTO
    ref: int = 0
    flags: int = 0

    def __repr__(self) -> str:
        return f"Symbol({self.name!r}, {self.type}, scope={self.scope}, sclass={self.sclass})"
