"""Seeded synthetic host images for tests, demos and benchmarks."""

import numpy as np

from .image import GrayImage


def fingerprint_like(size=512, seed=1, background=236, noise=1.5):
    """Ridge pattern inside an ellipse on a bright, slightly noisy background.

    Stands in for a scanned fingerprint: a near-flat blank border around a
    high-contrast ridge area.
    """
    rng = np.random.default_rng(seed)
    yy, xx = np.mgrid[0:size, 0:size].astype(np.float64)
    cy = size * (0.62 + 0.02 * rng.uniform(-1, 1))
    cx = size * (0.5 + 0.05 * rng.uniform(-1, 1))
    dy, dx = (yy - cy) / size, (xx - cx) / size

    # whorl-like ridges: concentric rings warped by a low-order distortion
    radius = np.hypot(dx * 1.1, dy)
    warp = 0.015 * np.sin(6 * np.arctan2(dy, dx) + rng.uniform(0, 2 * np.pi))
    period = 9.0 / size
    ridges = 0.5 + 0.5 * np.cos(2 * np.pi * (radius + warp) / period)

    inside = (dx / 0.32) ** 2 + (dy / 0.30) ** 2
    weight = np.clip((1.0 - inside) / 0.08, 0.0, 1.0)
    ink = background - 190 * ridges * weight
    pixels = ink + rng.normal(0.0, noise, size=(size, size))
    return GrayImage(np.clip(np.rint(pixels), 0, 255).astype(np.uint8))


def smooth_random(height, width, seed, lo=0, hi=255, noise=2.0):
    """Low-frequency random field plus small noise, clipped to [lo, hi].

    Neighbouring pixels stay close, so most difference-expansion pairs are
    expandable; extreme ``lo``/``hi`` settings push pixels against the range
    limits where classification matters.
    """
    rng = np.random.default_rng(seed)
    coarse = rng.uniform(lo, hi, size=(height // 16 + 2, width // 16 + 2))
    ys = np.linspace(0, coarse.shape[0] - 1, height)
    xs = np.linspace(0, coarse.shape[1] - 1, width)
    rows = np.array([np.interp(xs, np.arange(coarse.shape[1]), r) for r in coarse])
    field = np.array([np.interp(ys, np.arange(coarse.shape[0]), c) for c in rows.T]).T
    pixels = field + rng.normal(0.0, noise, size=(height, width))
    return GrayImage(np.clip(np.rint(pixels), 0, 255).astype(np.uint8))


def uniform_random(height, width, seed):
    rng = np.random.default_rng(seed)
    return GrayImage(rng.integers(0, 256, size=(height, width), dtype=np.uint8))
