"""A two-program compiler pipeline for a tiny C subset.

``minircc`` compiles source to a pickle holding one ``program`` of the
bundled ``rcc`` grammar; ``pass2`` reads it back, rebuilds the symbol and
type tables from uids, and replays the recorded interface calls against a
stack-machine back end. :func:`monolithic` makes the same calls directly.
"""

from __future__ import annotations

from .driver import compile, compile_program, example_source, monolithic  # noqa: A004
from .pass2 import pass2, read_program, replay
from .types import METRICS, METRICS_32, METRICS_64, TargetMetrics, layout_type
from .uids import UidTable, uid_lint

__all__ = [
    "METRICS", "METRICS_32", "METRICS_64", "TargetMetrics", "UidTable", "compile",
    "compile_program", "example_source", "layout_type", "monolithic", "pass2",
    "read_program", "replay", "uid_lint",
]
