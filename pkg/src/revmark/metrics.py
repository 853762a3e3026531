"""SSIM index (global or 8x8 sliding-window mean) and PSNR.

Moments are accumulated as exact integer sums over the 8-bit samples and
only converted to floating point for the final ratio, so results do not
depend on summation order and SSIM(x, x) is exactly 1.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, TooSmall

K1 = 0.01
K2 = 0.03


@dataclass(frozen=True)
class SsimParams:
    k1: float = K1
    k2: float = K2
    dynamic_range: int = 255
    mode: str = "global"  # or "windowed"
    window_size: int = 8

    def __post_init__(self):
        if self.mode not in ("global", "windowed"):
            raise ValueError(f"unknown SSIM mode {self.mode!r}")

    @property
    def c1(self):
        return (self.k1 * self.dynamic_range) ** 2

    @property
    def c2(self):
        return (self.k2 * self.dynamic_range) ** 2


GLOBAL = SsimParams()
WINDOWED = SsimParams(mode="windowed")


@dataclass(frozen=True)
class SsimStats:
    mu_x: float
    mu_y: float
    sigma_x: float
    sigma_y: float
    sigma_xy: float


def _check_pair(x, y):
    if x.shape != y.shape:
        raise DimensionMismatch(f"{x.shape} vs {y.shape}")


def _ssim_from_sums(n, sx, sy, sxx, syy, sxy, c1, c2):
    # all sums are exact; (n*sxx - sx*sx) / (n*(n-1)) is the unbiased variance
    mu_x = sx / n
    mu_y = sy / n
    norm = n * (n - 1)
    var_x = (n * sxx - sx * sx) / norm
    var_y = (n * syy - sy * sy) / norm
    cov = (n * sxy - sx * sy) / norm
    num = (2 * mu_x * mu_y + c1) * (2 * cov + c2)
    den = (mu_x * mu_x + mu_y * mu_y + c1) * (var_x + var_y + c2)
    return num / den


def ssim_stats(x, y):
    """Means, unbiased standard deviations and cross-covariance of two images."""
    _check_pair(x, y)
    a = x.samples.astype(np.int64)
    b = y.samples.astype(np.int64)
    n = a.size
    if n < 2:
        raise TooSmall("SSIM needs at least two samples")
    sx, sy = int(a.sum()), int(b.sum())
    sxx, syy, sxy = int(a @ a), int(b @ b), int(a @ b)
    norm = n * (n - 1)
    return SsimStats(
        sx / n,
        sy / n,
        math.sqrt((n * sxx - sx * sx) / norm),
        math.sqrt((n * syy - sy * sy) / norm),
        (n * sxy - sx * sy) / norm,
    )


def _window_sums(arr, w):
    """Sum of every w x w window (step 1) via an integral image."""
    ii = np.zeros((arr.shape[0] + 1, arr.shape[1] + 1), dtype=np.int64)
    ii[1:, 1:] = arr.cumsum(axis=0).cumsum(axis=1)
    return ii[w:, w:] - ii[:-w, w:] - ii[w:, :-w] + ii[:-w, :-w]


def ssim(x, y, params=GLOBAL):
    _check_pair(x, y)
    c1, c2 = params.c1, params.c2
    a = x.pixels.astype(np.int64)
    b = y.pixels.astype(np.int64)
    if params.mode == "global":
        n = a.size
        if n < 2:
            raise TooSmall("SSIM needs at least two samples")
        a, b = a.reshape(-1), b.reshape(-1)
        return float(
            _ssim_from_sums(n, int(a.sum()), int(b.sum()), int(a @ a), int(b @ b), int(a @ b), c1, c2)
        )

    w = params.window_size
    if w < 2 or a.shape[0] < w or a.shape[1] < w:
        raise TooSmall(f"image {a.shape} smaller than the {w}x{w} window")
    n = w * w
    per_window = _ssim_from_sums(
        n,
        _window_sums(a, w).astype(np.float64),
        _window_sums(b, w).astype(np.float64),
        _window_sums(a * a, w).astype(np.float64),
        _window_sums(b * b, w).astype(np.float64),
        _window_sums(a * b, w).astype(np.float64),
        c1,
        c2,
    )
    return float(per_window.mean())


def mssim(x, y, window_size=8):
    return ssim(x, y, SsimParams(mode="windowed", window_size=window_size))


def mse(x, y):
    _check_pair(x, y)
    d = x.samples.astype(np.int64) - y.samples.astype(np.int64)
    return int(d @ d) / d.size


def psnr(x, y, peak=255):
    """PSNR in dB; ``math.inf`` for identical images."""
    err = mse(x, y)
    if err == 0:
        return math.inf
    return 10 * math.log10(peak * peak / err)
