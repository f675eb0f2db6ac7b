"""Lightweight secret-key cipher built from three bit-level primitives.

The pipeline works on bit streams (MSB-first within each source byte):

    encrypt:  bytes -> bits -> adjacent_swap -> XOR with the adjacent-swapped,
              cyclically repeated key bits -> complement -> bytes
    decrypt:  bytes -> bits -> complement -> XOR with the same keystream
              -> adjacent_swap -> bytes

Every stage is a position permutation or a per-bit XOR, so ciphertext length
always equals plaintext length and the two directions are exact inverses.

The public `encrypt`/`decrypt` take a byte-level fast path: the adjacent swap
never crosses a byte boundary (pairs 0-1, 2-3, ... live inside one byte), so
it reduces to a 256-entry translation table, and the whole pipeline collapses
to table lookups plus one wide XOR.  The bit-stream functions below are the
definitional forms; the test suite proves the fast path equal to them.

This is a toy cipher: one known plaintext block leaks the whole keystream
(see `wsncrypt.keyspace`).  Do not use it to protect anything real.
"""

from __future__ import annotations

from typing import List, Sequence

MAX_KEY_BYTES = 32

# Swap bit pairs (0,1), (2,3), (4,5), (6,7) of the MSB-first bit order.
_SWAP_TABLE = bytes(((b & 0x55) << 1) | ((b & 0xAA) >> 1) for b in range(256))


class EmptyKeyError(ValueError):
    """Key is empty; the keystream would be undefined."""


class KeyLengthError(ValueError):
    """Key exceeds the supported maximum of MAX_KEY_BYTES bytes."""


class NonByteAlignedError(ValueError):
    """Bit stream length is not a multiple of 8."""


def _check_key(key: bytes) -> None:
    if len(key) == 0:
        raise EmptyKeyError("key must be at least 1 byte")
    if len(key) > MAX_KEY_BYTES:
        raise KeyLengthError(
            f"key is {len(key)} bytes, maximum is {MAX_KEY_BYTES}"
        )


def bytes_to_bits(data: bytes) -> List[int]:
    """Expand bytes into a flat bit list, MSB first within each byte."""
    bits = []
    for byte in data:
        for shift in range(7, -1, -1):
            bits.append((byte >> shift) & 1)
    return bits


def bits_to_bytes(bits: Sequence[int]) -> bytes:
    """Pack a bit stream back into bytes; inverse of `bytes_to_bits`."""
    if len(bits) % 8 != 0:
        raise NonByteAlignedError(
            f"stream of {len(bits)} bits is not byte aligned"
        )
    out = bytearray()
    for i in range(0, len(bits), 8):
        value = 0
        for bit in bits[i : i + 8]:
            value = (value << 1) | (bit & 1)
        out.append(value)
    return bytes(out)


def adjacent_swap(bits: Sequence[int]) -> List[int]:
    """Interchange the bits at even and odd indices, pair by pair.

    Self-inverse.  An odd-length stream keeps its final bit in place; byte
    input can never produce one, but the operation stays total.
    """
    out = list(bits)
    for i in range(0, len(out) - 1, 2):
        out[i], out[i + 1] = out[i + 1], out[i]
    return out


def key_directed_xor(message: Sequence[int], key: Sequence[int]) -> List[int]:
    """XOR each message bit with the key bit at the same index, cycling the
    key when the message is longer.

    A set key bit flips the message bit; a clear one leaves it alone, which
    is exactly XOR, so the conditional form and this one coincide.
    """
    if len(key) == 0:
        raise EmptyKeyError("key stream must be non-empty")
    n = len(key)
    return [m ^ key[i % n] for i, m in enumerate(message)]


def complement(bits: Sequence[int]) -> List[int]:
    """Invert every bit."""
    return [b ^ 1 for b in bits]


def _keystream(key: bytes, length: int) -> bytes:
    swapped = key.translate(_SWAP_TABLE)
    reps = -(-length // len(swapped))
    return (swapped * reps)[:length]


def encrypt(plaintext: bytes, key: bytes) -> bytes:
    """Encrypt: swap adjacent bits, XOR with the swapped key stream, invert.

    Equivalent to
    ``bits_to_bytes(complement(key_directed_xor(adjacent_swap(bytes_to_bits(
    plaintext)), adjacent_swap(bytes_to_bits(key)))))`` but byte-at-a-time.
    """
    _check_key(key)
    n = len(plaintext)
    if n == 0:
        return b""
    shuffled = plaintext.translate(_SWAP_TABLE)
    stream = _keystream(key, n)
    full = (1 << (8 * n)) - 1
    value = (
        int.from_bytes(shuffled, "big") ^ int.from_bytes(stream, "big") ^ full
    )
    return value.to_bytes(n, "big")


def decrypt(ciphertext: bytes, key: bytes) -> bytes:
    """Exact inverse of `encrypt` under the same key."""
    _check_key(key)
    n = len(ciphertext)
    if n == 0:
        return b""
    stream = _keystream(key, n)
    full = (1 << (8 * n)) - 1
    value = (
        int.from_bytes(ciphertext, "big") ^ full ^ int.from_bytes(stream, "big")
    )
    return value.to_bytes(n, "big").translate(_SWAP_TABLE)
