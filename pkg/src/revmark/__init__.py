"""Reversible watermarking of 8-bit grayscale images.

Difference expansion (``revmark.de``) and rotational replacement of LSB
(``revmark.rrl``), with SSIM/PSNR quality metrics and a payload sweep.
"""

from .bench import BenchRow, run_bench, write_csv
from .codec import crc32, frame_decode, frame_encode, prng_bits, rle_decode, rle_encode
from .de import de_capacity, de_embed, de_extract
from .errors import (
    CapacityExceeded,
    DimensionMismatch,
    MalformedStream,
    RecordMismatch,
    WatermarkError,
)
from .image import GrayImage, bitplane_diff, load_pgm, save_pgm
from .metrics import SsimParams, mssim, psnr, ssim
from .rrl import RestorationRecord, rrl_capacity, rrl_embed, rrl_extract

__version__ = "0.1.0"
