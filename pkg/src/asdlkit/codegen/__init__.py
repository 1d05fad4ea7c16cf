"""Source generation for checked schemas.

A :class:`Backend` turns a ``SchemaEnv`` into a :class:`GeneratedUnit` by
rendering, for every type, a definition, constructor functions, and a
reader/writer pair whose bytes match :mod:`asdlkit.pickleio` exactly.
Generated names follow one policy for every backend: ``<Module>_<type>``
for types, ``<Module>_<Ctor>`` for constructors, ``<Module>_read_<type>``
and ``<Module>_write_<type>`` for the codec entry points.

New target languages plug in by subclassing :class:`Backend` and adding the
class to :data:`BACKENDS`.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Iterable, Mapping, Sequence

from ..errors import BackendError
from ..runtime import InStream, OutStream
from ..sema import CheckedConstructor, CheckedTypeDef, SchemaEnv
from ..values import ProductV, SumV, Value, equal
from .. import pickleio


@dataclass(frozen=True)
class GeneratedUnit:
    """Generated files keyed by relative path."""

    files: Mapping[str, str]

    def write(self, directory: str | os.PathLike) -> list[Path]:
        root = Path(directory)
        written = []
        for rel, text in sorted(self.files.items()):
            path = root / rel
            path.parent.mkdir(parents=True, exist_ok=True)
            path.write_text(text, encoding="utf-8", newline="\n")
            written.append(path)
        return written


class Backend:
    """Rendering hooks for one target language.

    ``generate`` drives the hooks in a fixed order so output is a pure
    function of the schema. Subclasses implement the ``render_*`` methods
    and ``layout``; ``load``, ``to_native`` and ``from_native`` are needed
    only to run the conformance harness in-process.
    """

    name = "abstract"

    # -- naming policy ------------------------------------------------------
    def type_name(self, env: SchemaEnv, t: str) -> str:
        return f"{env.name}_{t}"

    def ctor_name(self, env: SchemaEnv, c: str) -> str:
        return f"{env.name}_{c}"

    def reader_name(self, env: SchemaEnv, t: str) -> str:
        return f"{env.name}_read_{t}"

    def writer_name(self, env: SchemaEnv, t: str) -> str:
        return f"{env.name}_write_{t}"

    # -- hooks --------------------------------------------------------------
    def render_prologue(self, env: SchemaEnv) -> str:
        raise NotImplementedError

    def render_enum(self, env: SchemaEnv, td: CheckedTypeDef) -> str:
        raise NotImplementedError

    def render_sum(self, env: SchemaEnv, td: CheckedTypeDef) -> str:
        raise NotImplementedError

    def render_product(self, env: SchemaEnv, td: CheckedTypeDef) -> str:
        raise NotImplementedError

    def render_constructor(self, env: SchemaEnv, td: CheckedTypeDef,
                           ctor: CheckedConstructor) -> str:
        raise NotImplementedError

    def render_reader(self, env: SchemaEnv, td: CheckedTypeDef) -> str:
        raise NotImplementedError

    def render_writer(self, env: SchemaEnv, td: CheckedTypeDef) -> str:
        raise NotImplementedError

    def layout(self, env: SchemaEnv, sections: Mapping[str, list[str]]) -> dict[str, str]:
        """Assemble rendered sections (``prologue``, ``types``,
        ``constructors``, ``codecs``) into files."""
        raise NotImplementedError

    def check_names(self, env: SchemaEnv) -> None:
        """Reject schemas whose generated names would collide."""

    def generate(self, env: SchemaEnv) -> GeneratedUnit:
        self.check_names(env)
        sections: dict[str, list[str]] = {
            "prologue": [self.render_prologue(env)], "types": [], "constructors": [],
            "codecs": []}
        for td in env.types.values():
            if td.enum_like:
                sections["types"].append(self.render_enum(env, td))
            elif td.is_sum:
                sections["types"].append(self.render_sum(env, td))
                sections["constructors"].extend(
                    self.render_constructor(env, td, c) for c in td.constructors)
            else:
                sections["types"].append(self.render_product(env, td))
        for td in env.types.values():
            sections["codecs"].append(self.render_reader(env, td))
            sections["codecs"].append(self.render_writer(env, td))
        return GeneratedUnit(self.layout(env, sections))

    # -- in-process execution (optional) -------------------------------------
    def load(self, env: SchemaEnv, unit: GeneratedUnit) -> Any:
        raise NotImplementedError(f"backend {self.name!r} cannot be loaded in-process")

    def to_native(self, env: SchemaEnv, ns: Any, type_name: str, v: Value) -> Any:
        raise NotImplementedError

    def from_native(self, env: SchemaEnv, ns: Any, type_name: str, obj: Any) -> Value:
        raise NotImplementedError


def generate(env: SchemaEnv, backend: Backend | str = "python") -> GeneratedUnit:
    if isinstance(backend, str):
        backend = get_backend(backend)
    return backend.generate(env)


# -- conformance harness ------------------------------------------------------

@dataclass(frozen=True)
class Mismatch:
    index: int
    type_name: str
    path: str
    offset: int
    reason: str

    def __str__(self) -> str:
        return f"sample {self.index} ({self.type_name}) at byte {self.offset}, {self.path}: " \
               f"{self.reason}"


@dataclass
class ConformanceReport:
    checked: int = 0
    bytes_compared: int = 0
    mismatches: list[Mismatch] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.mismatches


def _path_at(trace: Sequence[tuple[int, str]], offset: int) -> str:
    best = trace[0][1] if trace else ""
    for start, path in trace:
        if start > offset:
            break
        best = path
    return best


def _samples(samples: Iterable[Value | tuple[str, Value]]) -> Iterable[tuple[str, Value]]:
    for s in samples:
        if isinstance(s, tuple):
            yield s
        elif isinstance(s, (SumV, ProductV)):
            yield s.type_name, s
        else:
            raise TypeError(f"sample {s!r} needs an explicit type name")


def conformance_harness(env: SchemaEnv, backend: Backend | str,
                        samples: Iterable[Value | tuple[str, Value]],
                        unit: GeneratedUnit | None = None) -> ConformanceReport:
    """Check generated codecs against the interpretive codec.

    For each sample the generated writer's bytes must equal the bytes from
    :func:`asdlkit.pickleio.write_value`, and the generated reader must
    decode those bytes back to an equal value while consuming all of them.
    """
    if isinstance(backend, str):
        backend = get_backend(backend)
    ns = backend.load(env, unit or backend.generate(env))
    report = ConformanceReport()
    for i, (type_name, v) in enumerate(_samples(samples)):
        report.checked += 1
        trace: list[tuple[int, str]] = []
        out = OutStream()
        pickleio.write_value(env, type_name, v, out, trace)
        expected = out.getvalue()

        gen_out = OutStream()
        getattr(ns, backend.writer_name(env, type_name))(
            backend.to_native(env, ns, type_name, v), gen_out)
        got = gen_out.getvalue()
        report.bytes_compared += len(expected)
        if got != expected:
            offset = next((k for k, (a, b) in enumerate(zip(got, expected)) if a != b),
                          min(len(got), len(expected)))
            report.mismatches.append(Mismatch(
                i, type_name, _path_at(trace, offset), offset,
                f"writer produced {len(got)} bytes, expected {len(expected)}"))
            continue

        s = InStream(expected)
        try:
            obj = getattr(ns, backend.reader_name(env, type_name))(s)
            back = backend.from_native(env, ns, type_name, obj)
        except Exception as e:  # report, don't abort the run
            report.mismatches.append(Mismatch(
                i, type_name, _path_at(trace, s.pos), s.pos, f"reader failed: {e}"))
            continue
        if s.pos != len(expected):
            report.mismatches.append(Mismatch(
                i, type_name, _path_at(trace, s.pos), s.pos, "reader did not consume every byte"))
        elif not equal(back, v):
            report.mismatches.append(Mismatch(i, type_name, type_name, 0,
                                              "reader produced a different value"))
    return report


def get_backend(name: str) -> Backend:
    try:
        return BACKENDS[name]()
    except KeyError:
        raise BackendError(name, f"unknown backend (available: {', '.join(BACKENDS)})") from None


from .python import PythonBackend  # noqa: E402

BACKENDS: dict[str, type[Backend]] = {"python": PythonBackend}
