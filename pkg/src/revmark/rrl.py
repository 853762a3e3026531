"""Rotational replacement of LSB (RRL).

The host is cut into 8x8 blocks in block-raster order. In each used block
the eight LSB-plane rows (leftmost pixel = most significant bit) are shifted
down by one row, the bottom row falls out, and the freed top row receives
one payload byte. The displaced bottom rows are kept in a
:class:`RestorationRecord` so extraction can restore the host exactly;
without the record the bottom row keeps its duplicated neighbour.
"""

import struct
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .bits import as_bits, pad_to_bytes
from .codec import frame_decode, frame_length
from .errors import CapacityExceeded, IoFailure, MalformedStream, RecordMismatch
from .image import GrayImage

BLOCK = 8
RECORD_MAGIC = 0xD1F1
MIN_GAMMA = 8
GAMMA_FOR_8x8 = 64
_HEAD_BLOCKS = 7  # the frame length field ends at bit 56


def gamma_ratio(host_shape, wm_shape):
    """Host-to-watermark size ratio as an exact fraction; shapes are (rows, cols)."""
    hm, hn = host_shape
    wm, wn = wm_shape
    if wm * wn < 1:
        raise ValueError("watermark must hold at least one bit")
    return Fraction(hm * hn, wm * wn)


@dataclass(frozen=True)
class RrlGeometry:
    width: int
    height: int
    block_size: int = BLOCK

    @property
    def grid(self):
        return self.height // self.block_size, self.width // self.block_size

    @property
    def block_count(self):
        rows, cols = self.grid
        return rows * cols

    @property
    def capacity(self):
        return 8 * self.block_count

    def gamma(self, wm_shape):
        return gamma_ratio((self.height, self.width), wm_shape)

    def accepts(self, wm_shape):
        return self.gamma(wm_shape) >= MIN_GAMMA


def rrl_capacity(img):
    return RrlGeometry(img.width, img.height).capacity


@dataclass(frozen=True)
class RestorationRecord:
    """Bottom LSB rows displaced by embedding, one byte per used block.

    Serialized big-endian as ``magic:u16 block_size:u8 count:u32`` followed
    by ``(block_index:u32, byte:u8)`` entries.
    """

    displaced: tuple  # ((block_index, byte), ...) in block raster order
    block_size: int = BLOCK
    magic: int = RECORD_MAGIC

    @property
    def used_block_count(self):
        return len(self.displaced)

    def to_bytes(self):
        out = [struct.pack(">HBI", self.magic, self.block_size, len(self.displaced))]
        out.extend(struct.pack(">IB", idx, byte) for idx, byte in self.displaced)
        return b"".join(out)

    @classmethod
    def from_bytes(cls, data):
        if len(data) < 7:
            raise RecordMismatch("restoration record truncated")
        magic, block_size, count = struct.unpack_from(">HBI", data, 0)
        if len(data) != 7 + 5 * count:
            raise RecordMismatch(f"record declares {count} entries but holds {len(data) - 7} bytes")
        entries = tuple(struct.unpack_from(">IB", data, 7 + 5 * k) for k in range(count))
        return cls(entries, block_size, magic)

    def save(self, path):
        try:
            with open(path, "wb") as fh:
                fh.write(self.to_bytes())
        except OSError as exc:
            raise IoFailure(f"cannot write {path}: {exc}") from exc

    @classmethod
    def load(cls, path):
        try:
            with open(path, "rb") as fh:
                return cls.from_bytes(fh.read())
        except OSError as exc:
            raise IoFailure(f"cannot read {path}: {exc}") from exc


@dataclass(frozen=True)
class RrlExtraction:
    payload: np.ndarray
    restored: GrayImage
    mode: str  # "exact" or "literal"


def _blocks(pixels):
    """(count, 8, 8) copy of the full blocks in block raster order."""
    rows, cols = pixels.shape[0] // BLOCK, pixels.shape[1] // BLOCK
    core = pixels[: rows * BLOCK, : cols * BLOCK]
    return core.reshape(rows, BLOCK, cols, BLOCK).swapaxes(1, 2).reshape(-1, BLOCK, BLOCK).copy()


def _put_blocks(pixels, blocks):
    rows, cols = pixels.shape[0] // BLOCK, pixels.shape[1] // BLOCK
    out = pixels.copy()
    out[: rows * BLOCK, : cols * BLOCK] = (
        blocks.reshape(rows, cols, BLOCK, BLOCK).swapaxes(1, 2).reshape(rows * BLOCK, cols * BLOCK)
    )
    return out


def lsb_rows(blocks):
    """LSB plane of each block row packed into a byte, shape (count, 8)."""
    return np.packbits(blocks & 1, axis=2)[..., 0]


def _set_lsb_rows(blocks, rows):
    return (blocks & 0xFE) | np.unpackbits(rows[..., None], axis=2)


def rotate_embed_rows(rows, byte):
    """Shift LSB rows down one place, insert ``byte`` on top; returns (rows, displaced)."""
    rows = np.asarray(rows, dtype=np.uint8)
    out = np.empty_like(rows)
    out[..., 1:] = rows[..., :-1]
    out[..., 0] = byte
    return out, rows[..., -1].copy()


def rotate_extract_rows(rows, displaced=None):
    """Undo :func:`rotate_embed_rows`; returns (byte, rows).

    Without ``displaced`` the bottom row is left as it is.
    """
    rows = np.asarray(rows, dtype=np.uint8)
    out = rows.copy()
    out[..., :-1] = rows[..., 1:]
    if displaced is not None:
        out[..., -1] = displaced
    return rows[..., 0].copy(), out


def rrl_embed(img, payload):
    """Embed a framed payload; returns ``(watermarked, RestorationRecord)``."""
    data = np.packbits(pad_to_bytes(as_bits(payload)))
    cap = rrl_capacity(img)
    if 8 * data.size > cap:
        raise CapacityExceeded(f"{8 * data.size} bits exceed RRL capacity {cap}")
    used = data.size
    blocks = _blocks(img.pixels)
    rows, displaced = rotate_embed_rows(lsb_rows(blocks[:used]), data)
    blocks[:used] = _set_lsb_rows(blocks[:used], rows)
    record = RestorationRecord(tuple((k, int(b)) for k, b in enumerate(displaced)))
    return GrayImage(_put_blocks(img.pixels, blocks)), record


def _check_record(record, used):
    if record.magic != RECORD_MAGIC:
        raise RecordMismatch(f"bad record magic {record.magic:#06x}")
    if record.block_size != BLOCK:
        raise RecordMismatch(f"record block size {record.block_size}, expected {BLOCK}")
    if record.used_block_count != used:
        raise RecordMismatch(f"record covers {record.used_block_count} blocks, stream uses {used}")
    if any(idx != k for k, (idx, _) in enumerate(record.displaced)):
        raise RecordMismatch("record block indices are not the used blocks in order")


def rrl_extract(wimg, record=None):
    """Read the payload frame and restore the host.

    With a record the restore is exact; without one the bottom LSB row of
    every used block keeps the copy of its upper neighbour.
    """
    blocks = _blocks(wimg.pixels)
    if blocks.shape[0] < _HEAD_BLOCKS:
        raise MalformedStream("image too small to hold an RRL frame header")
    head = np.unpackbits(lsb_rows(blocks[:_HEAD_BLOCKS])[:, 0])
    total_bits = frame_length(head)
    used = -(-total_bits // 8)
    if used > blocks.shape[0]:
        raise MalformedStream(f"frame needs {used} blocks, image has {blocks.shape[0]}")
    displaced = None
    if record is not None:
        _check_record(record, used)
        displaced = np.array([b for _, b in record.displaced], dtype=np.uint8)
    data, rows = rotate_extract_rows(lsb_rows(blocks[:used]), displaced)
    payload = frame_decode(np.unpackbits(data))
    blocks[:used] = _set_lsb_rows(blocks[:used], rows)
    mode = "literal" if record is None else "exact"
    return RrlExtraction(payload, GrayImage(_put_blocks(wimg.pixels, blocks)), mode)
