"""Bit-sequence helpers.

Bit sequences are 1-D ``numpy.uint8`` arrays holding 0/1. Multi-bit
fields are always big-endian (most significant bit first).
"""

import numpy as np


def as_bits(bits):
    """Coerce a sequence of 0/1 values to a uint8 bit array."""
    arr = np.asarray(bits)
    if arr.ndim != 1:
        arr = arr.reshape(-1)
    if arr.size and (arr.min() < 0 or arr.max() > 1):
        raise ValueError("bit sequence may only contain 0 and 1")
    return arr.astype(np.uint8, copy=False)


def int_to_bits(value, width):
    if value < 0 or value >= 1 << width:
        raise ValueError(f"{value} does not fit in {width} bits")
    return np.array([(value >> (width - 1 - k)) & 1 for k in range(width)], dtype=np.uint8)


def bits_to_int(bits):
    value = 0
    for b in bits:
        value = (value << 1) | int(b)
    return value


def bytes_to_bits(data):
    return np.unpackbits(np.frombuffer(bytes(data), dtype=np.uint8))


def bits_to_bytes(bits):
    """Pack bits MSB-first; a ragged tail is zero-padded to a whole byte."""
    return np.packbits(as_bits(bits)).tobytes()


def pad_to_bytes(bits):
    bits = as_bits(bits)
    extra = (-bits.size) % 8
    if extra:
        bits = np.concatenate([bits, np.zeros(extra, dtype=np.uint8)])
    return bits
