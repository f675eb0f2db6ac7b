import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from wsncrypt.cipher import (
    EmptyKeyError,
    KeyLengthError,
    NonByteAlignedError,
    adjacent_swap,
    bits_to_bytes,
    bytes_to_bits,
    complement,
    decrypt,
    encrypt,
    key_directed_xor,
)

from reference import ref_decrypt, ref_encrypt

keys = st.binary(min_size=1, max_size=32)
bitstreams = st.lists(st.integers(0, 1), max_size=200)


def bits(text: str):
    return [int(c) for c in text]


# -- bytes_to_bits / bits_to_bytes -------------------------------------------


def test_bytes_to_bits_golden():
    assert bytes_to_bits(bytes([90])) == bits("01011010")
    assert bytes_to_bits(bytes([65])) == bits("01000001")


def test_bytes_to_bits_empty():
    assert bytes_to_bits(b"") == []


def test_bytes_to_bits_length_and_order():
    out = bytes_to_bits(b"\x80\x01")
    assert len(out) == 16
    assert out[0] == 1 and out[15] == 1
    assert sum(out) == 2


def test_bits_to_bytes_golden():
    assert bits_to_bytes(bits("11011000")) == bytes([216])
    assert bits_to_bytes(bits("11011011")) == bytes([219])
    assert bits_to_bytes([]) == b""


def test_bits_to_bytes_rejects_misaligned():
    with pytest.raises(NonByteAlignedError):
        bits_to_bytes([1, 0, 1])


@given(st.binary(max_size=128))
def test_bit_byte_round_trip(data):
    assert bits_to_bytes(bytes_to_bits(data)) == data


# -- adjacent_swap ------------------------------------------------------------


def test_adjacent_swap_golden():
    assert adjacent_swap(bits("01011010")) == bits("10100101")
    assert adjacent_swap(bits("01000001")) == bits("10000010")
    assert adjacent_swap(bits("00000000")) == bits("00000000")


def test_adjacent_swap_odd_length_keeps_tail():
    assert adjacent_swap([1, 0, 1]) == [0, 1, 1]
    assert adjacent_swap([1]) == [1]
    assert adjacent_swap([]) == []


@given(bitstreams)
def test_adjacent_swap_involution(stream):
    assert adjacent_swap(adjacent_swap(stream)) == stream


@given(bitstreams)
def test_adjacent_swap_preserves_length_and_population(stream):
    swapped = adjacent_swap(stream)
    assert len(swapped) == len(stream)
    assert sum(swapped) == sum(stream)


# -- key_directed_xor ----------------------------------------------------------


def test_key_directed_xor_golden():
    assert key_directed_xor(bits("10000010"), bits("10100101")) == bits("00100111")
    assert key_directed_xor(bits("10000001"), bits("10100101")) == bits("00100100")


def test_key_directed_xor_zero_key_is_identity():
    message = bits("1011001110001111")
    assert key_directed_xor(message, [0] * 8) == message


def test_key_directed_xor_empty_key_rejected():
    with pytest.raises(EmptyKeyError):
        key_directed_xor([1, 0], [])


@given(
    st.lists(st.integers(0, 1), min_size=1, max_size=200),
    st.lists(st.integers(0, 1), min_size=1, max_size=64),
)
def test_key_directed_xor_matches_plain_xor(message, key):
    expect = [m ^ key[i % len(key)] for i, m in enumerate(message)]
    assert key_directed_xor(message, key) == expect


# -- complement ----------------------------------------------------------------


def test_complement_golden():
    assert complement(bits("00100111")) == bits("11011000")
    assert complement(bits("00100100")) == bits("11011011")
    assert complement([]) == []


@given(bitstreams)
def test_complement_involution(stream):
    assert complement(complement(stream)) == stream


# -- encrypt / decrypt ----------------------------------------------------------


def test_encrypt_golden_single_bytes():
    assert encrypt(b"A", b"Z") == bytes([216])
    assert encrypt(b"B", b"Z") == bytes([219])
    assert encrypt(b"\x00", b"\x00") == b"\xff"


def test_decrypt_golden_single_bytes():
    assert decrypt(bytes([216]), b"Z") == b"A"
    assert decrypt(bytes([219]), b"Z") == b"B"


def test_empty_plaintext_is_not_an_error():
    assert encrypt(b"", b"Z") == b""
    assert decrypt(b"", b"Z") == b""


def test_key_validation():
    with pytest.raises(EmptyKeyError):
        encrypt(b"hello", b"")
    with pytest.raises(EmptyKeyError):
        decrypt(b"hello", b"")
    with pytest.raises(KeyLengthError):
        encrypt(b"hello", b"k" * 33)


def test_encrypt_matches_bit_pipeline_composition():
    rng = random.Random(2024)
    for _ in range(50):
        plaintext = bytes(rng.randrange(256) for _ in range(rng.randrange(0, 64)))
        key = bytes(rng.randrange(256) for _ in range(rng.randrange(1, 33)))
        composed = bits_to_bytes(
            complement(
                key_directed_xor(
                    adjacent_swap(bytes_to_bits(plaintext)),
                    adjacent_swap(bytes_to_bits(key)),
                )
            )
        )
        assert encrypt(plaintext, key) == composed


def test_decrypt_matches_bit_pipeline_composition():
    rng = random.Random(2025)
    for _ in range(50):
        ciphertext = bytes(rng.randrange(256) for _ in range(rng.randrange(0, 64)))
        key = bytes(rng.randrange(256) for _ in range(rng.randrange(1, 33)))
        composed = bits_to_bytes(
            adjacent_swap(
                key_directed_xor(
                    complement(bytes_to_bits(ciphertext)),
                    adjacent_swap(bytes_to_bits(key)),
                )
            )
        )
        assert decrypt(ciphertext, key) == composed


def test_encrypt_against_bit_at_a_time_reference():
    rng = random.Random(99)
    plaintext = bytes(rng.randrange(256) for _ in range(1000))
    key = bytes(rng.randrange(256) for _ in range(8))
    assert encrypt(plaintext, key) == ref_encrypt(plaintext, key)


@given(st.binary(max_size=512), keys)
def test_round_trip(plaintext, key):
    assert decrypt(encrypt(plaintext, key), key) == plaintext


@given(st.binary(max_size=512), keys)
def test_length_preserved(plaintext, key):
    assert len(encrypt(plaintext, key)) == len(plaintext)


@given(st.binary(max_size=128), keys)
def test_reference_equivalence(plaintext, key):
    ciphertext = encrypt(plaintext, key)
    assert ciphertext == ref_encrypt(plaintext, key)
    assert decrypt(ciphertext, key) == ref_decrypt(ciphertext, key)


def test_determinism():
    plaintext, key = b"same input, same output", b"fixed"
    assert encrypt(plaintext, key) == encrypt(plaintext, key)
    assert decrypt(plaintext, key) == decrypt(plaintext, key)
