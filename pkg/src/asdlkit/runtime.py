"""Runtime support for pickles: byte streams, varints, strings, identifiers.

Both the interpretive codec and generated readers/writers are built on these
primitives.

Unsigned integers are base-128 varints, low group first, high bit set on
every byte except the last. Signed integers are zigzag-mapped first
(n >= 0 -> 2n, n < 0 -> -2n-1). Encodings are canonical: at most 10 bytes,
and a multi-byte varint never ends in a zero group.
"""

from __future__ import annotations

import sys

from .errors import BadTag, IntegerRange, MalformedVarint, PickleError, TruncatedStream

__all__ = [
    "InStream", "OutStream", "BadTag", "TruncatedStream", "MalformedVarint",
    "write_uint", "read_uint", "write_int", "read_int", "zigzag", "unzigzag",
    "write_string", "read_string", "write_identifier", "read_identifier",
    "bad_tag",
]

MAX_VARINT_BYTES = 10
UINT_LIMIT = 1 << (7 * MAX_VARINT_BYTES)


class OutStream:
    """Append-only byte sink."""

    __slots__ = ("buf",)

    def __init__(self):
        self.buf = bytearray()

    def write(self, data: bytes) -> None:
        self.buf += data

    def tell(self) -> int:
        return len(self.buf)

    def getvalue(self) -> bytes:
        return bytes(self.buf)


class InStream:
    """Byte source with a read position."""

    __slots__ = ("data", "pos")

    def __init__(self, data: bytes, pos: int = 0):
        self.data = bytes(data)
        self.pos = pos

    def at_end(self) -> bool:
        return self.pos >= len(self.data)

    def read(self, n: int) -> bytes:
        end = self.pos + n
        if end > len(self.data):
            raise TruncatedStream(len(self.data))
        chunk = self.data[self.pos:end]
        self.pos = end
        return chunk


def zigzag(n: int) -> int:
    return n << 1 if n >= 0 else (-n << 1) - 1


def unzigzag(z: int) -> int:
    return z >> 1 if not z & 1 else -((z + 1) >> 1)


def write_uint(n: int, s: OutStream) -> None:
    if n < 0 or n >= UINT_LIMIT:
        raise IntegerRange(n)
    if n < 0x80:
        s.buf.append(n)
        return
    out = bytearray()
    while n >= 0x80:
        out.append((n & 0x7F) | 0x80)
        n >>= 7
    out.append(n)
    s.buf += out


def read_uint(s: InStream) -> int:
    data, pos = s.data, s.pos
    start = pos
    result = shift = 0
    for i in range(MAX_VARINT_BYTES):
        if pos >= len(data):
            raise TruncatedStream(pos)
        b = data[pos]
        pos += 1
        result |= (b & 0x7F) << shift
        if not b & 0x80:
            if b == 0 and i:
                raise MalformedVarint(start, "over-long encoding")
            s.pos = pos
            return result
        shift += 7
    raise MalformedVarint(start, f"continuation past {MAX_VARINT_BYTES} bytes")


def write_int(n: int, s: OutStream) -> None:
    z = zigzag(n)
    if z >= UINT_LIMIT:
        raise IntegerRange(n)
    write_uint(z, s)


def read_int(s: InStream) -> int:
    return unzigzag(read_uint(s))


def write_string(text: str, s: OutStream) -> None:
    data = text.encode("utf-8")
    write_uint(len(data), s)
    s.buf += data


def read_string(s: InStream) -> str:
    n = read_uint(s)
    start = s.pos
    try:
        return s.read(n).decode("utf-8")
    except UnicodeDecodeError as e:
        raise PickleError(f"invalid UTF-8 in string at byte {start}: {e.reason}") from None


write_identifier = write_string


def read_identifier(s: InStream) -> str:
    return sys.intern(read_string(s))


def bad_tag(type_name: str, tag: int, s: InStream) -> BadTag:
    return BadTag(type_name, tag, s.pos)
