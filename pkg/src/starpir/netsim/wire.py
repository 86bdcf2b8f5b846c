"""Binary framing: b"SPIR", version byte, tag byte, 4-byte big-endian
payload length, payload.  Field elements are little-endian in w bytes."""

from __future__ import annotations

import struct
from dataclasses import dataclass

from ..algebra import FieldSpec
from ..algebra.field import field_make
from ..errors import ProtocolError, ProtocolVersionMismatch, Timeout, UnknownTag

MAGIC = b"SPIR"
VERSION = 1
HEADER = struct.Struct(">4sBBI")

HELLO = 0x01
STORE = 0x02
QUERY = 0x03
RESPONSE = 0x04
ERROR = 0x05
BYE = 0x06
TAGS = {HELLO: "HELLO", STORE: "STORE", QUERY: "QUERY", RESPONSE: "RESPONSE", ERROR: "ERROR", BYE: "BYE"}

ERR_UNKNOWN_TAG = 1
ERR_FIELD_MISMATCH = 2
ERR_VERSION = 3
ERR_BAD_REQUEST = 4

MAX_PAYLOAD = 1 << 26


@dataclass(frozen=True)
class WireMessage:
    tag: int
    payload: bytes = b""
    version: int = VERSION

    @property
    def name(self) -> str:
        return TAGS.get(self.tag, f"0x{self.tag:02x}")


def encode_message(msg: WireMessage) -> bytes:
    return HEADER.pack(MAGIC, msg.version, msg.tag, len(msg.payload)) + msg.payload


def decode_header(head: bytes, check_tag: bool = True) -> tuple[int, int, int]:
    if len(head) != HEADER.size:
        raise ProtocolError("truncated header")
    magic, version, tag, length = HEADER.unpack(head)
    if magic != MAGIC:
        raise ProtocolError(f"bad magic {magic!r}")
    if version != VERSION:
        raise ProtocolVersionMismatch(f"peer speaks version {version}, expected {VERSION}")
    if length > MAX_PAYLOAD:
        raise ProtocolError(f"payload length {length} too large")
    if check_tag:
        _check_tag(tag)
    return version, tag, length


def _check_tag(tag: int):
    if tag not in TAGS:
        raise UnknownTag(f"unknown tag 0x{tag:02x}")


def decode_message(buf: bytes) -> tuple[WireMessage, bytes]:
    """Parse one frame from the front of ``buf``; returns (message, rest)."""
    version, tag, length = decode_header(buf[: HEADER.size])
    end = HEADER.size + length
    if len(buf) < end:
        raise ProtocolError("truncated payload")
    return WireMessage(tag, bytes(buf[HEADER.size : end]), version), bytes(buf[end:])


def _recv_exact(sock, size: int) -> bytes:
    chunks = []
    while size:
        try:
            chunk = sock.recv(size)
        except TimeoutError as e:
            raise Timeout("peer did not answer in time") from e
        if not chunk:
            raise ProtocolError("connection closed")
        chunks.append(chunk)
        size -= len(chunk)
    return b"".join(chunks)


def read_message(sock) -> WireMessage:
    """Read one frame; an unknown tag is reported after its payload has been
    consumed so the stream stays in sync."""
    head = _recv_exact(sock, HEADER.size)
    _, tag, length = decode_header(head, check_tag=False)
    payload = _recv_exact(sock, length) if length else b""
    _check_tag(tag)
    return WireMessage(tag, payload)


def send_message(sock, msg: WireMessage):
    sock.sendall(encode_message(msg))


# ---- payloads -------------------------------------------------------------------


def encode_elements(field: FieldSpec, values) -> bytes:
    w = field.width
    return b"".join(int(v).to_bytes(w, "little") for v in values)


def decode_elements(field: FieldSpec, data: bytes, count: int | None = None) -> list[int]:
    w = field.width
    if len(data) % w:
        raise ProtocolError("element data is not a whole number of elements")
    vals = [int.from_bytes(data[i : i + w], "little") for i in range(0, len(data), w)]
    if count is not None and len(vals) != count:
        raise ProtocolError(f"expected {count} elements, got {len(vals)}")
    for v in vals:
        if v >= field.q:
            raise ProtocolError(f"element {v} out of range for q = {field.q}")
    return vals


@dataclass(frozen=True)
class Hello:
    p: int
    s: int
    modulus: tuple[int, ...]
    n: int
    w: int

    @classmethod
    def of(cls, field: FieldSpec, n: int) -> Hello:
        return cls(field.p, field.s, tuple(field.modulus), n, field.width)

    def field(self) -> FieldSpec:
        return field_make(self.p, self.s, list(self.modulus))


def hello_payload(h: Hello) -> bytes:
    out = struct.pack(">IB", h.p, h.s)
    out += b"".join(struct.pack(">I", c) for c in h.modulus)
    return out + struct.pack(">IB", h.n, h.w)


def parse_hello(data: bytes) -> Hello:
    try:
        p, s = struct.unpack_from(">IB", data, 0)
        off = 5
        modulus = struct.unpack_from(f">{s + 1}I", data, off)
        off += 4 * (s + 1)
        n, w = struct.unpack_from(">IB", data, off)
        if off + 5 != len(data):
            raise ProtocolError("trailing bytes in HELLO")
    except struct.error as e:
        raise ProtocolError(f"malformed HELLO: {e}") from None
    return Hello(p, s, tuple(modulus), n, w)


def query_payload(field: FieldSpec, rnd: int, values) -> bytes:
    return struct.pack(">I", rnd) + encode_elements(field, values)


def parse_query(field: FieldSpec, data: bytes, length: int | None = None) -> tuple[int, list[int]]:
    if len(data) < 4:
        raise ProtocolError("QUERY too short")
    (rnd,) = struct.unpack_from(">I", data, 0)
    return rnd, decode_elements(field, data[4:], length)


def response_payload(field: FieldSpec, rnd: int, value: int) -> bytes:
    return struct.pack(">I", rnd) + encode_elements(field, [value])


def parse_response(field: FieldSpec, data: bytes) -> tuple[int, int]:
    if len(data) < 4:
        raise ProtocolError("RESPONSE too short")
    (rnd,) = struct.unpack_from(">I", data, 0)
    return rnd, decode_elements(field, data[4:], 1)[0]


def error_payload(code: int, message: str) -> bytes:
    return struct.pack(">H", code) + message.encode("utf-8")


def parse_error(data: bytes) -> tuple[int, str]:
    if len(data) < 2:
        raise ProtocolError("ERROR too short")
    (code,) = struct.unpack_from(">H", data, 0)
    return code, data[2:].decode("utf-8", errors="replace")


def store_payload(field: FieldSpec, values) -> bytes:
    values = list(values)
    return struct.pack(">I", len(values)) + encode_elements(field, values)


def parse_store(field: FieldSpec, data: bytes) -> list[int]:
    if len(data) < 4:
        raise ProtocolError("STORE too short")
    (count,) = struct.unpack_from(">I", data, 0)
    return decode_elements(field, data[4:], count)
