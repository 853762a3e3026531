"""Bit-exact auxiliary encodings.

* payload frames: ``0x5257 | version 0x01 | 32-bit length | CRC-32 | data``
* run-length coding of sparse bit maps, with a raw fallback
* CRC-32 (IEEE, reflected) and a xorshift64* bit generator for benchmarks
"""

import zlib

import numpy as np

from .bits import as_bits, bits_to_bytes, bits_to_int, int_to_bits
from .errors import BadMagic, BadVersion, CrcMismatch, MalformedStream, Truncated, ZeroSeed

FRAME_MAGIC = 0x5257
FRAME_VERSION = 0x01
FRAME_HEADER_BITS = 88
_LENGTH_END = 56  # magic + version + length field

_MASK64 = (1 << 64) - 1
_XORSHIFT_MULT = 2685821657736338717


def crc32(data):
    """CRC-32 with polynomial 0xEDB88320, init and final XOR 0xFFFFFFFF."""
    return zlib.crc32(bytes(data)) & 0xFFFFFFFF


# ---------------------------------------------------------------- framing


def frame_encode(data):
    data = as_bits(data)
    if data.size >= 1 << 32:
        raise ValueError("payload too long for a 32-bit length field")
    return np.concatenate(
        [
            int_to_bits(FRAME_MAGIC, 16),
            int_to_bits(FRAME_VERSION, 8),
            int_to_bits(data.size, 32),
            int_to_bits(crc32(bits_to_bytes(data)), 32),
            data,
        ]
    )


def frame_length(bits):
    """Total frame length in bits, read from the first 56 bits of a frame."""
    bits = as_bits(bits)
    if bits.size < _LENGTH_END:
        raise Truncated(f"frame header needs {_LENGTH_END} bits, got {bits.size}")
    if bits_to_int(bits[:16]) != FRAME_MAGIC:
        raise BadMagic("payload frame magic not found")
    if bits_to_int(bits[16:24]) != FRAME_VERSION:
        raise BadVersion(f"unsupported frame version {bits_to_int(bits[16:24])}")
    return FRAME_HEADER_BITS + bits_to_int(bits[24:_LENGTH_END])


def frame_decode(bits):
    """Validate a frame and return its data bits. Trailing bits are ignored."""
    bits = as_bits(bits)
    total = frame_length(bits)
    if bits.size < max(total, FRAME_HEADER_BITS):
        raise Truncated(f"frame declares {total} bits, only {bits.size} present")
    data = bits[FRAME_HEADER_BITS:total]
    if crc32(bits_to_bytes(data)) != bits_to_int(bits[_LENGTH_END:FRAME_HEADER_BITS]):
        raise CrcMismatch("payload CRC-32 does not match")
    return data.copy()


# ------------------------------------------------------------ run lengths


def run_lengths(bits):
    """Lengths of the maximal runs of equal bits, in order."""
    bits = as_bits(bits)
    if bits.size == 0:
        return np.zeros(0, dtype=np.int64)
    edges = np.flatnonzero(np.diff(bits)) + 1
    bounds = np.concatenate([[0], edges, [bits.size]])
    return np.diff(bounds)


def run_bytes_needed(lengths):
    """Bytes used to code each run: 0-bytes add 255, a final byte 1..255 closes it."""
    return (np.asarray(lengths, dtype=np.int64) + 254) // 255


def _run_to_bytes(length):
    extra = (length - 1) // 255
    return [0] * extra + [length - 255 * extra]


def rle_run_bytes(bits):
    out = []
    for length in run_lengths(bits):
        out.extend(_run_to_bytes(int(length)))
    return bytes(out)


def rle_encode(bits):
    """Encode a bit map as ``raw_flag | first_bit | run bytes`` or ``1 | raw``.

    The raw form is used whenever the run form would be longer than the
    input, so the output never exceeds ``len(bits) + 1``.
    """
    bits = as_bits(bits)
    body = rle_run_bytes(bits)
    if 1 + 8 * len(body) > bits.size:
        return np.concatenate([[1], bits]).astype(np.uint8)
    first = bits[:1] if bits.size else np.zeros(1, dtype=np.uint8)
    run_bits = np.unpackbits(np.frombuffer(body, dtype=np.uint8))
    return np.concatenate([[0], first, run_bits]).astype(np.uint8)


def rle_encoded_length(bits):
    bits = as_bits(bits)
    body = 1 + 8 * int(run_bytes_needed(run_lengths(bits)).sum())
    return 1 + (bits.size if body > bits.size else body)


def rle_decode(stream, original_length):
    """Inverse of :func:`rle_encode`; the stream must be consumed exactly."""
    stream = as_bits(stream)
    if stream.size == 0:
        raise MalformedStream("empty run-length stream")
    if stream[0] == 1:
        if stream.size != original_length + 1:
            raise MalformedStream("raw map length does not match")
        return stream[1:].copy()
    if stream.size < 2 or (stream.size - 2) % 8:
        raise MalformedStream("run-length body is not whole bytes")
    value = int(stream[1])
    codes = np.packbits(stream[2:])
    out = np.empty(original_length, dtype=np.uint8)
    filled = 0
    pending = 0
    for code in codes:
        if code == 0:
            pending += 255
            continue
        run = pending + int(code)
        pending = 0
        if filled + run > original_length:
            raise MalformedStream("runs overrun the declared length")
        out[filled : filled + run] = value
        filled += run
        value ^= 1
    if pending or filled != original_length:
        raise MalformedStream(f"runs cover {filled} of {original_length} bits")
    return out


# ------------------------------------------------------------------ PRNG


def prng_bits(seed, count):
    """``count`` bits from xorshift64*, each 64-bit output MSB first."""
    s = seed & _MASK64
    if s == 0:
        raise ZeroSeed("xorshift64* needs a nonzero seed")
    words = []
    for _ in range((count + 63) // 64):
        s ^= s >> 12
        s ^= (s << 25) & _MASK64
        s ^= s >> 27
        words.append((s * _XORSHIFT_MULT) & _MASK64)
    raw = np.array(words, dtype=">u8").view(np.uint8)
    return np.unpackbits(raw)[:count].copy()
