"""The two pipelines: split (front end -> pickle -> pass2) and monolithic."""

from __future__ import annotations

from importlib import resources

from .. import pickleio
from ..values import ProductV
from .asdlback import AsdlBackEnd
from .backend import StackBackEnd
from .frontend import compile_unit, drive
from .pass2 import pass2
from .types import METRICS_32, TargetMetrics
from .uids import rcc

__all__ = ["compile", "compile_program", "monolithic", "pass2", "example_source"]


def compile_program(src: str, metrics: TargetMetrics = METRICS_32) -> ProductV:
    """Compile ``src`` into one ``program`` value."""
    unit = compile_unit(src, metrics)
    be = AsdlBackEnd(unit.predefined)
    drive(unit, be)
    return be.program


def compile(src: str, metrics: TargetMetrics = METRICS_32) -> bytes:  # noqa: A001
    """Compile ``src`` into a pickle holding one ``program`` instance."""
    return pickleio.dumps(rcc(), "program", compile_program(src, metrics))


def monolithic(src: str, metrics: TargetMetrics = METRICS_32) -> str:
    """Compile ``src`` straight to assembly, with no pickle in between."""
    be = StackBackEnd()
    drive(compile_unit(src, metrics), be)
    return be.text()


def example_source(name: str) -> str:
    """A bundled ``.mx`` example program."""
    return resources.files(__package__).joinpath("examples").joinpath(f"{name}.mx").read_text("utf-8")
