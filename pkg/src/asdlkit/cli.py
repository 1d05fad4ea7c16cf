"""Command-line front door: ``asdl <command> ...``.

Exit status is 0 on success, 1 on a domain error (diagnostics on standard
error as ``<file>:<line>:<col>: <message>``) and 2 on a usage error,
including a missing input file. Output to standard output is buffered and
written only once a command has succeeded.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import BinaryIO, Sequence

from . import pickleio, textform, xmlpickle
from .codegen import BACKENDS, generate
from .errors import AsdlError
from .sema import SchemaEnv, check
from .syntax import parse_spec


class UsageError(Exception):
    pass


class Failure(Exception):
    """A domain error already rendered as a diagnostic."""


def _read_text(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except FileNotFoundError:
        raise UsageError(f"{path}: no such file") from None
    except (OSError, UnicodeDecodeError) as e:
        raise Failure(f"{path}: cannot read: {e}") from None


def load_schema(path: str) -> SchemaEnv:
    text = _read_text(path)
    try:
        return check(parse_spec(text))
    except AsdlError as e:
        raise Failure(e.diagnostic(path)) from None


def _input(path: str | None, stdin: BinaryIO) -> tuple[bytes, str]:
    if path is None or path == "-":
        return stdin.read(), "<stdin>"
    try:
        return Path(path).read_bytes(), path
    except FileNotFoundError:
        raise UsageError(f"{path}: no such file") from None
    except OSError as e:
        raise Failure(f"{path}: cannot read: {e}") from None


def _decode_utf8(data: bytes, name: str) -> str:
    try:
        return data.decode("utf-8")
    except UnicodeDecodeError as e:
        raise Failure(f"{name}: input is not UTF-8: {e}") from None


def _type(env: SchemaEnv, name: str) -> str:
    try:
        return env.resolve_type_name(name)
    except AsdlError as e:
        raise UsageError(str(e)) from None


# -- commands -----------------------------------------------------------------

def cmd_check(args, stdin) -> bytes:
    env = load_schema(args.file)
    types, ctors = env.counts()
    return f"{args.file}: module {env.name}: {types} types, {ctors} constructors\n".encode()


def cmd_gen(args, stdin) -> bytes:
    env = load_schema(args.file)
    unit = generate(env, args.backend)
    try:
        written = unit.write(args.output)
    except OSError as e:
        raise Failure(f"{args.output}: cannot write generated files: {e.strerror or e}") from None
    return "".join(f"{p}\n" for p in written).encode()


def cmd_encode(args, stdin) -> bytes:
    env = load_schema(args.schema)
    t = _type(env, args.type)
    data, name = _input(args.input, stdin)
    try:
        values = textform.parse_values(env, t, _decode_utf8(data, name))
    except AsdlError as e:
        raise Failure(e.diagnostic(name)) from None
    return b"".join(pickleio.dumps(env, t, v) for v in values)


def _read_pickle(env: SchemaEnv, t: str, data: bytes, name: str):
    try:
        return pickleio.read_all(env, t, data)
    except AsdlError as e:
        raise Failure(e.diagnostic(name)) from None


def cmd_decode(args, stdin) -> bytes:
    env = load_schema(args.schema)
    t = _type(env, args.type)
    data, name = _input(args.input, stdin)
    values = _read_pickle(env, t, data, name)
    return "".join(textform.format_value(env, t, v) + "\n" for v in values).encode()


def cmd_to_xml(args, stdin) -> bytes:
    env = load_schema(args.schema)
    t = _type(env, args.type)
    data, name = _input(args.input, stdin)
    values = _read_pickle(env, t, data, name)
    try:
        return xmlpickle.write_xml_all(env, t, values).encode("utf-8")
    except AsdlError as e:
        raise Failure(e.diagnostic(name)) from None


def cmd_from_xml(args, stdin) -> bytes:
    env = load_schema(args.schema)
    t = _type(env, args.type)
    data, name = _input(args.input, stdin)
    try:
        values = xmlpickle.read_xml_all(env, t, data)
    except AsdlError as e:
        raise Failure(e.diagnostic(name)) from None
    return b"".join(pickleio.dumps(env, t, v) for v in values)


def cmd_append(args, stdin) -> bytes:
    env = load_schema(args.schema)
    t = _type(env, args.type)
    if not Path(args.pickle).is_file():
        raise UsageError(f"{args.pickle}: no such pickle")
    data, name = _input(args.input, stdin)
    try:
        value = textform.parse_value(env, t, _decode_utf8(data, name))
    except AsdlError as e:
        raise Failure(e.diagnostic(name)) from None
    try:
        pickleio.append_instance(env, t, value, args.pickle)
    except OSError as e:
        raise Failure(f"{args.pickle}: cannot append: {e.strerror or e}") from None
    return b""


# -- parser -------------------------------------------------------------------

class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message: str):
        raise UsageError(f"{self.prog}: {message}")


def build_parser() -> argparse.ArgumentParser:
    p = _ArgumentParser(prog="asdl", description="ASDL schema checker, code generator and "
                                                 "pickle converter.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_ArgumentParser)

    c = sub.add_parser("check", help="parse and check a schema")
    c.add_argument("file")
    c.set_defaults(run=cmd_check)

    g = sub.add_parser("gen", help="generate data types and pickle code")
    g.add_argument("file")
    g.add_argument("--backend", default="python", choices=sorted(BACKENDS))
    g.add_argument("-o", "--output", required=True, help="output directory")
    g.set_defaults(run=cmd_gen)

    def data_command(name: str, run, help: str) -> argparse.ArgumentParser:
        d = sub.add_parser(name, help=help)
        d.add_argument("--schema", required=True, help="ASDL schema file")
        d.add_argument("--type", required=True, help="Module.type or bare type name")
        d.add_argument("-i", "--input", help="input file (default: standard input)")
        d.set_defaults(run=run)
        return d

    data_command("encode", cmd_encode, "text form -> binary pickle")
    data_command("decode", cmd_decode, "binary pickle -> text form")
    data_command("to-xml", cmd_to_xml, "binary pickle -> XML")
    data_command("from-xml", cmd_from_xml, "XML -> binary pickle")
    a = data_command("append", cmd_append, "append one text-form instance to a pickle")
    a.add_argument("pickle", help="existing pickle file")
    return p


def run(argv: Sequence[str] | None = None, stdin: BinaryIO | None = None,
        stdout: BinaryIO | None = None, stderr=None) -> int:
    stdin = stdin or sys.stdin.buffer
    stdout = stdout or sys.stdout.buffer
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        out = args.run(args, stdin)
    except UsageError as e:
        print(f"asdl: {e}", file=stderr)
        return 2
    except Failure as e:
        print(e, file=stderr)
        return 1
    except AsdlError as e:
        print(f"asdl: {e}", file=stderr)
        return 1
    stdout.write(out)
    stdout.flush()
    return 0


def main(argv: Sequence[str] | None = None) -> int:
    return run(argv)


if __name__ == "__main__":
    sys.exit(main())
