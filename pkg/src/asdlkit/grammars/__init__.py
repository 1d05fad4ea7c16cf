"""Bundled ASDL grammars.

``IR``, ``IR_named`` and ``IR_attrs`` are the small expression/statement
module and its named-field and attribute variants; ``rcc`` is the grammar
of lcc's code-generation interface.
"""

from __future__ import annotations

from functools import lru_cache
from importlib import resources

NAMES = ("IR", "IR_named", "IR_attrs", "rcc")


def grammar_text(name: str) -> str:
    if name not in NAMES:
        raise KeyError(f"no bundled grammar named {name!r}")
    return resources.files(__name__).joinpath(f"{name}.asdl").read_text(encoding="utf-8")


@lru_cache(maxsize=None)
def load(name: str):
    """Parse and check a bundled grammar, returning its ``SchemaEnv``."""
    from ..sema import check
    from ..syntax import parse_spec

    return check(parse_spec(grammar_text(name)))
