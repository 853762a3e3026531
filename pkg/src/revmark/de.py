"""Difference-expansion reversible watermarking.

Horizontally adjacent pixels ``(x, y)`` at columns ``(2c, 2c+1)`` form a
pair; an odd trailing column is never touched. Each pair maps to an integer
average and a difference, and every *changeable* pair carries exactly one
bit of the embedded stream: expanded pairs through ``2*d + bit``, the others
by overwriting the difference LSB (whose true value is saved in the stream).

Stream layout, written across all changeable pairs in raster order::

    0xD1F0 (16) | map length (24) | payload length (24)
    | run-length coded location map | saved LSBs | payload | zero padding
"""

from dataclasses import dataclass

import numpy as np

from .bits import as_bits, bits_to_int, int_to_bits
from .codec import rle_decode, rle_encode, run_bytes_needed, run_lengths
from .errors import CapacityExceeded, MalformedStream, OutOfRange
from .image import BIT_DEPTH, GrayImage

DE_MAGIC = 0xD1F0
HEADER_BITS = 64
_LEN_FIELD = 24


@dataclass(frozen=True)
class DiffPair:
    alpha: int
    delta: int
    position: int = 0


@dataclass(frozen=True)
class DEClassification:
    bound: int
    expandable: bool
    changeable: bool


def forward_transform(x, y):
    return DiffPair((x + y) // 2, x - y)


def inverse_transform(alpha, delta, n=BIT_DEPTH):
    x = alpha + (delta + 1) // 2
    y = alpha - delta // 2
    top = (1 << n) - 1
    if not (0 <= x <= top and 0 <= y <= top):
        raise OutOfRange(f"(alpha={alpha}, delta={delta}) maps outside [0, {top}]")
    return x, y


def region_bound(alpha, n=BIT_DEPTH):
    return min(2 * ((1 << n) - 1 - alpha), 2 * alpha + 1)


def classify(alpha, delta, n=BIT_DEPTH):
    bound = region_bound(alpha, n)
    expandable = abs(2 * delta) <= bound and abs(2 * delta + 1) <= bound
    base = 2 * (delta // 2)
    changeable = abs(base) <= bound and abs(base + 1) <= bound
    return DEClassification(bound, expandable, changeable)


def expand_embed(delta, bit):
    return 2 * delta + bit


def de_recover(delta_w):
    return delta_w // 2, delta_w - 2 * (delta_w // 2)


def lsb_replace_diff(delta, bit):
    half = delta // 2
    return 2 * half + bit, delta - 2 * half


# ------------------------------------------------------- vectorized pipeline


def _pairs(img):
    """Integer averages and differences of all pixel pairs, raster order."""
    w2 = img.width // 2 * 2
    px = img.pixels[:, :w2].astype(np.int64)
    x = px[:, 0::2].reshape(-1)
    y = px[:, 1::2].reshape(-1)
    return (x + y) >> 1, x - y


def _masks(alpha, delta, n=BIT_DEPTH):
    bound = np.minimum(2 * ((1 << n) - 1 - alpha), 2 * alpha + 1)
    two = 2 * delta
    expandable = (np.abs(two) <= bound) & (np.abs(two + 1) <= bound)
    base = 2 * (delta >> 1)
    changeable = (np.abs(base) <= bound) & (np.abs(base + 1) <= bound)
    return expandable, changeable


def _rebuild(img, alpha, delta):
    x = alpha + ((delta + 1) >> 1)
    y = alpha - (delta >> 1)
    if x.size and (min(x.min(), y.min()) < 0 or max(x.max(), y.max()) > 255):
        raise OutOfRange("reconstructed pixel outside [0, 255]")
    out = img.pixels.copy()
    w2 = img.width // 2 * 2
    out[:, 0:w2:2] = x.reshape(img.height, -1)
    out[:, 1:w2:2] = y.reshape(img.height, -1)
    return GrayImage(out)


def map_stream_lengths(expandable_in_c):
    """Encoded map length for every expansion count K = 0..E.

    ``expandable_in_c`` flags which changeable positions are expandable. The
    map for K has ones on the first K expandable positions, so it equals the
    flag sequence up to the K-th one followed by zeros; this walks the run
    structure once instead of encoding E+1 maps.
    """
    e = np.asarray(expandable_in_c, dtype=bool)
    n = e.size
    raw = 1 + n
    ones = np.flatnonzero(e)
    out = np.empty(ones.size + 1, dtype=np.int64)
    if n == 0:
        out[0] = raw
        return out
    # K = 0: a single run of n zeros
    body = 1 + 8 * int(run_bytes_needed([n])[0])
    out[0] = raw if body > n else 1 + body
    if ones.size == 0:
        return out
    lengths = run_lengths(e.astype(np.uint8))
    starts = np.concatenate([[0], np.cumsum(lengths)[:-1]])
    before = np.concatenate([[0], np.cumsum(run_bytes_needed(lengths))[:-1]])
    run_of = np.searchsorted(starts, ones, side="right") - 1
    partial = ones - starts[run_of] + 1
    tail = n - 1 - ones
    nbytes = before[run_of] + run_bytes_needed(partial) + run_bytes_needed(tail)
    body = 1 + 8 * nbytes
    out[1:] = np.where(body > n, raw, 1 + body)
    return out


@dataclass(frozen=True)
class _Plan:
    alpha: np.ndarray
    delta: np.ndarray
    changeable: np.ndarray  # pair indices, raster order
    expandable_in_c: np.ndarray
    slack: np.ndarray  # payload bits that fit for each K = 0..E


def _plan(img):
    alpha, delta = _pairs(img)
    expandable, changeable = _masks(alpha, delta)
    c_idx = np.flatnonzero(changeable)
    e_in_c = expandable[c_idx]
    k = np.arange(int(e_in_c.sum()) + 1)
    slack = k - HEADER_BITS - map_stream_lengths(e_in_c)
    return _Plan(alpha, delta, c_idx, e_in_c, slack)


def de_capacity(img):
    """Largest payload, in bits, that :func:`de_embed` accepts for ``img``."""
    best = int(_plan(img).slack.max())
    return min(max(best, 0), (1 << _LEN_FIELD) - 1)


def de_embed(img, payload):
    payload = as_bits(payload)
    plan = _plan(img)
    n = plan.changeable.size
    fits = np.flatnonzero(plan.slack >= payload.size)
    if fits.size == 0 or payload.size >= 1 << _LEN_FIELD:
        raise CapacityExceeded(
            f"{payload.size} payload bits exceed DE capacity {max(int(plan.slack.max()), 0)}"
        )
    k = int(fits[0])

    loc_map = np.zeros(n, dtype=np.uint8)
    loc_map[np.flatnonzero(plan.expandable_in_c)[:k]] = 1
    map_bits = rle_encode(loc_map)
    if map_bits.size >= 1 << _LEN_FIELD:
        raise CapacityExceeded("location map too long for its length field")

    delta_c = plan.delta[plan.changeable]
    saved = (delta_c[loc_map == 0] & 1).astype(np.uint8)
    stream = np.zeros(n, dtype=np.uint8)
    parts = [
        int_to_bits(DE_MAGIC, 16),
        int_to_bits(map_bits.size, _LEN_FIELD),
        int_to_bits(payload.size, _LEN_FIELD),
        map_bits,
        saved,
        payload,
    ]
    used = np.concatenate(parts)
    stream[: used.size] = used

    expanded = loc_map == 1
    new_delta = np.where(expanded, 2 * delta_c + stream, 2 * (delta_c >> 1) + stream)
    delta = plan.delta.copy()
    delta[plan.changeable] = new_delta
    return _rebuild(img, plan.alpha, delta)


def de_extract(wimg):
    """Recover ``(payload, original_image)`` from a DE-watermarked image."""
    alpha, delta = _pairs(wimg)
    _, changeable = _masks(alpha, delta)
    c_idx = np.flatnonzero(changeable)
    n = c_idx.size
    if n < HEADER_BITS:
        raise MalformedStream(f"only {n} changeable pairs, no DE header")
    delta_c = delta[c_idx]
    stream = (delta_c & 1).astype(np.uint8)

    if bits_to_int(stream[:16]) != DE_MAGIC:
        raise MalformedStream("DE stream magic not found")
    map_len = bits_to_int(stream[16:40])
    pay_len = bits_to_int(stream[40:64])
    if HEADER_BITS + map_len > n:
        raise MalformedStream("location map runs past the stream")
    loc_map = rle_decode(stream[HEADER_BITS : HEADER_BITS + map_len], n)
    k = int(loc_map.sum())
    saved_at = HEADER_BITS + map_len
    pay_at = saved_at + (n - k)
    if pay_at + pay_len > n:
        raise MalformedStream("declared lengths exceed the stream")
    saved = stream[saved_at:pay_at]
    payload = stream[pay_at : pay_at + pay_len].copy()

    expanded = loc_map == 1
    restored_c = delta_c >> 1
    restored_c[~expanded] = 2 * restored_c[~expanded] + saved
    delta = delta.copy()
    delta[c_idx] = restored_c
    try:
        restored = _rebuild(wimg, alpha, delta)
    except OutOfRange as exc:
        raise MalformedStream(str(exc)) from exc
    return payload, restored
