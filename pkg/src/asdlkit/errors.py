"""Exception hierarchy shared by every stage of the toolchain."""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING, Iterable, Sequence

if TYPE_CHECKING:
    from .syntax import SourceSpan


class AsdlError(Exception):
    """Base class for domain errors. ``span`` locates the offending source text."""

    def __init__(self, message: str, span: SourceSpan | None = None):
        super().__init__(message)
        self.message = message
        self.span = span

    def __str__(self) -> str:
        if self.span is None:
            return self.message
        return f"{self.span.line}:{self.span.column}: {self.message}"

    def diagnostic(self, filename: str) -> str:
        """Render as ``<file>:<line>:<col>: <message>``."""
        if self.span is None:
            return f"{filename}: {self.message}"
        return f"{filename}:{self.span.line}:{self.span.column}: {self.message}"


# -- syntax -----------------------------------------------------------------

class IllegalCharacter(AsdlError):
    pass


class AsdlSyntaxError(AsdlError):
    def __init__(self, message: str, span: SourceSpan, expected: Iterable[str] = ()):
        self.expected = frozenset(expected)
        if self.expected:
            message = f"{message} (expected {', '.join(sorted(self.expected))})"
        super().__init__(message, span)


# -- semantic checks --------------------------------------------------------

class SemanticError(AsdlError):
    pass


class UndefinedType(SemanticError):
    def __init__(self, name: str, span: SourceSpan | None = None):
        super().__init__(f"undefined type {name!r}", span)
        self.name = name


class DuplicateTypeDef(SemanticError):
    def __init__(self, name: str, span: SourceSpan | None = None, builtin: bool = False):
        what = "redefinition of built-in type" if builtin else "duplicate definition of type"
        super().__init__(f"{what} {name!r}", span)
        self.name = name


class DuplicateConstructor(SemanticError):
    def __init__(self, name: str, span: SourceSpan | None = None):
        super().__init__(f"duplicate constructor {name!r} (constructor names are module-wide)", span)
        self.name = name


class DuplicateFieldName(SemanticError):
    def __init__(self, name: str, owner: str, span: SourceSpan | None = None):
        super().__init__(f"duplicate field name {name!r} in {owner}", span)
        self.name = name
        self.owner = owner


class AttributesOnProduct(SemanticError):
    def __init__(self, name: str, span: SourceSpan | None = None):
        super().__init__(f"product type {name!r} may not have attributes", span)
        self.name = name


class UnknownType(SemanticError):
    def __init__(self, name: str):
        super().__init__(f"unknown type {name!r}")
        self.name = name


class UnknownConstructor(SemanticError):
    def __init__(self, type_name: str, name: str):
        super().__init__(f"type {type_name!r} has no constructor {name!r}")
        self.type_name = type_name
        self.name = name


# -- values -----------------------------------------------------------------

@dataclass(frozen=True)
class Violation:
    """One conformance failure: ``path`` is the field-name trail from the root."""

    path: str
    reason: str

    def __str__(self) -> str:
        return f"{self.path}: {self.reason}"


class ConformanceError(AsdlError):
    def __init__(self, violations: Sequence[Violation]):
        self.violations = tuple(violations)
        super().__init__("; ".join(str(v) for v in self.violations) or "non-conforming value")


class TextFormError(AsdlError):
    """Malformed text-form value; ``offset`` is a 0-based character index."""

    def __init__(self, message: str, offset: int, span: SourceSpan | None = None):
        super().__init__(message, span)
        self.offset = offset


# -- pickles ----------------------------------------------------------------

class PickleError(AsdlError):
    pass


class TruncatedStream(PickleError):
    def __init__(self, pos: int):
        super().__init__(f"truncated stream at byte {pos}")
        self.pos = pos


class BadTag(PickleError):
    def __init__(self, type_name: str, tag: int, pos: int | None = None):
        where = "" if pos is None else f" at byte {pos}"
        super().__init__(f"bad constructor tag {tag} for type {type_name!r}{where}")
        self.type_name = type_name
        self.tag = tag
        self.pos = pos


class MalformedVarint(PickleError):
    def __init__(self, pos: int, reason: str):
        super().__init__(f"malformed varint at byte {pos}: {reason}")
        self.pos = pos


class IntegerRange(PickleError):
    def __init__(self, value: int):
        super().__init__(f"integer {value} is outside the wire range")
        self.value = value


class EmptyPickle(PickleError):
    def __init__(self):
        super().__init__("pickle holds no instances")


class XmlPickleError(PickleError):
    pass


# -- code generation --------------------------------------------------------

class BackendError(AsdlError):
    def __init__(self, path: str, reason: str):
        super().__init__(f"{path}: {reason}")
        self.path = path
        self.reason = reason


# -- mini compiler demo -----------------------------------------------------

class FrontEndError(AsdlError):
    pass


class DanglingUid(AsdlError):
    def __init__(self, uid: int):
        super().__init__(f"uid {uid} is referenced but never defined")
        self.uid = uid
