"""Entry points for the two halves of the demo compiler.

``minircc <src.mx> -o <out.pickle> [--metrics 32|64]`` writes one
``program`` instance; ``pass2 <in.pickle>`` prints the assembly.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Sequence

from ..errors import AsdlError
from .driver import compile
from .pass2 import pass2
from .types import METRICS


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: {message}", file=sys.stderr)
        raise SystemExit(2)


def _read(path: str, prog: str, binary: bool):
    try:
        p = Path(path)
        return p.read_bytes() if binary else p.read_text(encoding="utf-8")
    except FileNotFoundError:
        print(f"{prog}: {path}: no such file", file=sys.stderr)
        raise SystemExit(2) from None
    except (OSError, UnicodeDecodeError) as e:
        print(f"{prog}: {path}: cannot read: {e}", file=sys.stderr)
        raise SystemExit(1) from None


def minircc_main(argv: Sequence[str] | None = None) -> int:
    p = _ArgumentParser(prog="minircc", description="Compile a mini-language program to a "
                                                   "pickle of rcc.program.")
    p.add_argument("source")
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--metrics", choices=sorted(METRICS), default="32")
    args = p.parse_args(argv)
    src = _read(args.source, p.prog, binary=False)
    try:
        data = compile(src, METRICS[args.metrics])
    except AsdlError as e:
        print(e.diagnostic(args.source), file=sys.stderr)
        return 1
    try:
        Path(args.output).write_bytes(data)
    except OSError as e:
        print(f"minircc: {args.output}: cannot write: {e.strerror or e}", file=sys.stderr)
        return 1
    return 0


def pass2_main(argv: Sequence[str] | None = None) -> int:
    p = _ArgumentParser(prog="pass2", description="Generate stack-machine assembly from a "
                                                 "pickled rcc.program.")
    p.add_argument("pickle")
    args = p.parse_args(argv)
    data = _read(args.pickle, p.prog, binary=True)
    try:
        text = pass2(data)
    except AsdlError as e:
        print(e.diagnostic(args.pickle), file=sys.stderr)
        return 1
    sys.stdout.write(text)
    sys.stdout.flush()
    return 0
