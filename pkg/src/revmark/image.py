"""8-bit grayscale rasters, binary PGM I/O and bit-plane comparison."""

from dataclasses import dataclass

import numpy as np

from .errors import CorruptFile, DimensionMismatch, IoFailure, OutOfRange, UnsupportedFormat

BIT_DEPTH = 8
MAXVAL = (1 << BIT_DEPTH) - 1


@dataclass(frozen=True, eq=False)
class GrayImage:
    """Immutable row-major grayscale raster.

    ``pixels`` is a read-only ``(height, width)`` uint8 array; the origin is
    the top-left sample.
    """

    pixels: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.pixels)
        if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
            raise ValueError(f"expected a non-empty 2-D raster, got shape {arr.shape}")
        if arr.dtype != np.uint8:
            if arr.size and (arr.min() < 0 or arr.max() > MAXVAL):
                raise OutOfRange(f"samples must lie in [0, {MAXVAL}]")
            arr = arr.astype(np.uint8)
        else:
            arr = arr.copy()
        arr.flags.writeable = False
        object.__setattr__(self, "pixels", arr)

    @classmethod
    def from_samples(cls, width, height, samples):
        samples = np.asarray(samples)
        if samples.size != width * height:
            raise ValueError(f"{samples.size} samples for a {width}x{height} image")
        return cls(samples.reshape(height, width))

    @property
    def width(self):
        return self.pixels.shape[1]

    @property
    def height(self):
        return self.pixels.shape[0]

    @property
    def bit_depth(self):
        return BIT_DEPTH

    @property
    def samples(self):
        return self.pixels.reshape(-1)

    @property
    def shape(self):
        return self.pixels.shape

    def __eq__(self, other):
        if not isinstance(other, GrayImage):
            return NotImplemented
        return self.shape == other.shape and bool(np.array_equal(self.pixels, other.pixels))

    def __hash__(self):
        return hash((self.shape, self.pixels.tobytes()))

    def __repr__(self):
        return f"GrayImage({self.width}x{self.height})"


def _header_tokens(data):
    """Yield (token, end_offset) for the four PGM header fields."""
    pos = 0
    n = len(data)
    found = 0
    while found < 4:
        while pos < n and (data[pos : pos + 1].isspace() or data[pos : pos + 1] == b"#"):
            if data[pos : pos + 1] == b"#":
                while pos < n and data[pos : pos + 1] not in (b"\n", b"\r"):
                    pos += 1
            else:
                pos += 1
        start = pos
        while pos < n and not data[pos : pos + 1].isspace() and data[pos : pos + 1] != b"#":
            pos += 1
        if start == pos:
            raise CorruptFile("truncated PGM header")
        found += 1
        yield data[start:pos], pos


def parse_pgm(data):
    """Decode the bytes of a binary (P5) PGM file."""
    tokens = _header_tokens(data)
    magic, _ = next(tokens)
    if magic != b"P5":
        raise UnsupportedFormat(f"not a binary PGM (magic {magic[:8]!r})")
    fields = []
    end = 0
    for tok, end in tokens:
        if not tok.isdigit():
            raise CorruptFile(f"malformed PGM header field {tok[:16]!r}")
        fields.append(int(tok))
    width, height, maxval = fields
    if maxval != MAXVAL:
        raise UnsupportedFormat(f"maxval {maxval} unsupported, only {MAXVAL}")
    if width < 1 or height < 1:
        raise CorruptFile(f"bad dimensions {width}x{height}")
    if end >= len(data) or not data[end : end + 1].isspace():
        raise CorruptFile("missing whitespace after PGM header")
    body = data[end + 1 :]
    count = width * height
    if len(body) < count:
        raise CorruptFile(f"expected {count} samples, found {len(body)}")
    samples = np.frombuffer(body, dtype=np.uint8, count=count)
    return GrayImage(samples.reshape(height, width))


def format_pgm(img):
    header = f"P5\n{img.width} {img.height}\n{MAXVAL}\n".encode("ascii")
    return header + img.pixels.tobytes()


def load_pgm(path):
    try:
        with open(path, "rb") as fh:
            data = fh.read()
    except OSError as exc:
        raise IoFailure(f"cannot read {path}: {exc}") from exc
    return parse_pgm(data)


def save_pgm(img, path):
    try:
        with open(path, "wb") as fh:
            fh.write(format_pgm(img))
    except OSError as exc:
        raise IoFailure(f"cannot write {path}: {exc}") from exc


@dataclass(frozen=True)
class BitplaneDiff:
    plane_counts: tuple  # index k = number of samples whose bit k differs
    positions: np.ndarray  # raster indices where the samples differ

    @property
    def total(self):
        return sum(self.plane_counts)

    def rows_cols(self, width):
        return np.divmod(self.positions, width)


def bitplane_diff(a, b):
    if a.shape != b.shape:
        raise DimensionMismatch(f"{a.shape} vs {b.shape}")
    x = np.bitwise_xor(a.samples, b.samples)
    planes = np.unpackbits(x[:, None], axis=1, bitorder="little")
    counts = tuple(int(c) for c in planes.sum(axis=0))
    return BitplaneDiff(counts, np.flatnonzero(x))
