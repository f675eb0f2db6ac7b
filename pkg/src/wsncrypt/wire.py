"""Binary framing for encrypted telemetry and the reading batch payload.

Frame layout (all integers big-endian):

    offset 0   magic           0xA5 0x5A
    offset 2   version         0x01
    offset 3   sink_id         u16
    offset 5   sequence        u32
    offset 9   payload_length  u16
    offset 11  payload         payload_length bytes
    last byte  checksum        XOR of every preceding byte

Reading record layout: node_id (u16) | timestamp (u32) | kind (u8) |
value_length (u8) | value bytes.  A batch is a u16 record count followed by
that many records.

The checksum is a one-byte XOR fold: weak as checksums go, but it detects
every single-bit flip, which is all the delivery pipeline needs.  Frame
headers are never encrypted; the receiver must read sink_id to pick the
decryption key before it can touch the payload.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass, field
from enum import IntEnum
from typing import List, Sequence

MAGIC = b"\xa5\x5a"
VERSION = 1
HEADER_LEN = 11
MAX_PAYLOAD = 0xFFFF
MAX_READINGS = 0xFFFF
MAX_VALUE_LEN = 0xFF


class WireError(ValueError):
    kind = "wire_error"


class PayloadTooLargeError(WireError):
    kind = "payload_too_large"


class TooManyReadingsError(WireError):
    kind = "too_many_readings"


class DecodeError(WireError):
    """Base for every parse failure; `kind` names the rejection bucket."""


class BadMagicError(DecodeError):
    kind = "bad_magic"


class UnsupportedVersionError(DecodeError):
    kind = "unsupported_version"


class TruncatedError(DecodeError):
    kind = "truncated"


class TrailingBytesError(DecodeError):
    kind = "trailing_bytes"


class ChecksumMismatchError(DecodeError):
    kind = "checksum_mismatch"


class BadKindError(DecodeError):
    kind = "bad_kind"


class ReadingKind(IntEnum):
    SCALAR = 0
    AUDIO = 1
    VIDEO = 2


@dataclass(frozen=True, order=True)
class SensorReading:
    """One sensed parameter; ordering is (node_id, timestamp, ...)."""

    node_id: int
    timestamp: int
    kind: ReadingKind
    value: bytes


@dataclass(frozen=True)
class Frame:
    """Sink-to-receiver wire unit.  The checksum only exists on the wire:
    encoding computes it fresh and decoding verifies it."""

    sink_id: int
    sequence: int
    payload: bytes = field(default=b"")


def xor_fold(data: bytes) -> int:
    """One-byte XOR of all input bytes."""
    acc = 0
    for b in data:
        acc ^= b
    return acc


def encode_frame(frame: Frame) -> bytes:
    if not 0 <= frame.sink_id <= 0xFFFF:
        raise ValueError(f"sink_id {frame.sink_id} does not fit u16")
    if not 0 <= frame.sequence <= 0xFFFFFFFF:
        raise ValueError(f"sequence {frame.sequence} does not fit u32")
    if len(frame.payload) > MAX_PAYLOAD:
        raise PayloadTooLargeError(
            f"payload of {len(frame.payload)} bytes exceeds {MAX_PAYLOAD}"
        )
    body = (
        MAGIC
        + struct.pack(
            ">BHIH", VERSION, frame.sink_id, frame.sequence, len(frame.payload)
        )
        + frame.payload
    )
    return body + bytes([xor_fold(body)])


def decode_frame(data: bytes) -> Frame:
    """Parse and validate one frame; the input must be exactly one frame.

    Raises a distinct DecodeError subclass per failure so receivers can
    count rejections by kind.
    """
    if len(data) < HEADER_LEN + 1:
        raise TruncatedError(f"{len(data)} bytes is shorter than any frame")
    if data[:2] != MAGIC:
        raise BadMagicError(f"bad magic {data[:2].hex()}")
    version, sink_id, sequence, payload_len = struct.unpack(">BHIH", data[2:11])
    if version != VERSION:
        raise UnsupportedVersionError(f"version {version} not supported")
    expected = HEADER_LEN + payload_len + 1
    if len(data) < expected:
        raise TruncatedError(
            f"frame declares {payload_len} payload bytes but only "
            f"{len(data)} total bytes arrived"
        )
    if len(data) > expected:
        raise TrailingBytesError(f"{len(data) - expected} bytes after frame")
    if xor_fold(data[:-1]) != data[-1]:
        raise ChecksumMismatchError(
            f"checksum {data[-1]:#04x} != computed {xor_fold(data[:-1]):#04x}"
        )
    return Frame(
        sink_id=sink_id, sequence=sequence, payload=data[11 : 11 + payload_len]
    )


def _check_reading(reading: SensorReading) -> None:
    if not 0 <= reading.node_id <= 0xFFFF:
        raise ValueError(f"node_id {reading.node_id} does not fit u16")
    if not 0 <= reading.timestamp <= 0xFFFFFFFF:
        raise ValueError(f"timestamp {reading.timestamp} does not fit u32")
    if reading.kind not in tuple(ReadingKind):
        raise ValueError(f"unknown reading kind {reading.kind!r}")
    if len(reading.value) > MAX_VALUE_LEN:
        raise ValueError(f"value of {len(reading.value)} bytes exceeds 255")


def encode_readings(readings: Sequence[SensorReading]) -> bytes:
    if len(readings) > MAX_READINGS:
        raise TooManyReadingsError(
            f"{len(readings)} readings exceed the u16 batch count"
        )
    out = bytearray(struct.pack(">H", len(readings)))
    for reading in readings:
        _check_reading(reading)
        out += struct.pack(
            ">HIBB",
            reading.node_id,
            reading.timestamp,
            int(reading.kind),
            len(reading.value),
        )
        out += reading.value
    return bytes(out)


def decode_readings(data: bytes) -> List[SensorReading]:
    """Inverse of `encode_readings`; rejects trailing garbage."""
    if len(data) < 2:
        raise TruncatedError("batch shorter than its count field")
    (count,) = struct.unpack(">H", data[:2])
    pos = 2
    readings = []
    for _ in range(count):
        if len(data) - pos < 8:
            raise TruncatedError("record header runs past end of batch")
        node_id, timestamp, kind_code, value_len = struct.unpack(
            ">HIBB", data[pos : pos + 8]
        )
        pos += 8
        try:
            kind = ReadingKind(kind_code)
        except ValueError:
            raise BadKindError(f"kind byte {kind_code} is not defined") from None
        if len(data) - pos < value_len:
            raise TruncatedError("record value runs past end of batch")
        readings.append(
            SensorReading(
                node_id=node_id,
                timestamp=timestamp,
                kind=kind,
                value=data[pos : pos + value_len],
            )
        )
        pos += value_len
    if pos != len(data):
        raise TrailingBytesError(f"{len(data) - pos} bytes after batch")
    return readings
