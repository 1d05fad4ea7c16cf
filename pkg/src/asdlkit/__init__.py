"""ASDL toolkit: schema parsing and checking, typed values, binary and XML
pickles, code generation, and a demo compiler pipeline built on them."""

from __future__ import annotations

from .errors import AsdlError
from .grammars import load as load_grammar
from .pickleio import append_instance, dumps, loads, read_all, read_first
from .sema import SchemaEnv, check
from .syntax import parse_spec, pretty_print
from .values import (IdentifierV, IntV, ListV, ProductV, StringV, SumV, Value, check_value,
                     equal, mk)


def load_schema(text: str) -> SchemaEnv:
    """Parse and check ASDL source text."""
    return check(parse_spec(text))


__all__ = [
    "AsdlError", "IdentifierV", "IntV", "ListV", "ProductV", "SchemaEnv", "StringV", "SumV",
    "Value", "append_instance", "check", "check_value", "dumps", "equal", "load_grammar",
    "load_schema", "loads", "mk", "parse_spec", "pretty_print", "read_all", "read_first",
]
