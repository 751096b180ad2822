"""PSNR and correlation between 8-bit images."""

import math

import numpy as np

from .imageio import as_image


class UndefinedCorrelationError(ValueError):
    """Correlation requested for an image with zero variance."""


def _pair(a, b):
    a, b = as_image(a), as_image(b)
    if a.shape != b.shape:
        raise ValueError(f"image shapes differ: {a.shape} vs {b.shape}")
    return a.astype(np.float64), b.astype(np.float64)


def mse(a, b) -> float:
    a, b = _pair(a, b)
    return float(np.mean((a - b) ** 2))


def psnr(a, b) -> float:
    """Peak signal-to-noise ratio in dB for peak 255; ``inf`` for identical images."""
    err = mse(a, b)
    if err == 0:
        return math.inf
    return 10.0 * math.log10(255.0**2 / err)


def ncc(a, b) -> float:
    """Pearson correlation of the mean-centred pixel vectors."""
    a, b = _pair(a, b)
    da = a.ravel() - a.mean()
    db = b.ravel() - b.mean()
    na, nb = np.linalg.norm(da), np.linalg.norm(db)
    if na == 0 or nb == 0:
        raise UndefinedCorrelationError("correlation is undefined for a constant image")
    return float(np.clip(da @ db / (na * nb), -1.0, 1.0))
