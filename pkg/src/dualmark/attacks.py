"""Image degradations used to probe watermark robustness.

Every attack maps a 2-D ``uint8`` image to a ``uint8`` image of the same
shape. Specs serialize to short strings such as ``median:3``,
``gauss:10:42``, ``resize:512x512``, ``rotate:80`` or ``crop:32,32,64,64``.
"""

import math
from dataclasses import dataclass

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from .imageio import as_image, from_matrix


@dataclass(frozen=True)
class NoAttack:
    def __str__(self):
        return "none"


@dataclass(frozen=True)
class MedianFilter:
    k: int = 3

    def __post_init__(self):
        _check_window(self.k)

    def __str__(self):
        return f"median:{self.k}"


@dataclass(frozen=True)
class AverageFilter:
    k: int = 3

    def __post_init__(self):
        _check_window(self.k)

    def __str__(self):
        return f"average:{self.k}"


@dataclass(frozen=True)
class GaussianNoise:
    sigma: float
    seed: int = 0

    def __post_init__(self):
        if not (self.sigma >= 0 and math.isfinite(self.sigma)):
            raise ValueError(f"sigma must be finite and >= 0, got {self.sigma}")
        if not (0 <= self.seed < 2**64):
            raise ValueError("seed must be a 64-bit unsigned integer")

    def __str__(self):
        return f"gauss:{self.sigma:g}:{self.seed}"


@dataclass(frozen=True)
class Resize:
    new_w: int
    new_h: int

    def __post_init__(self):
        if self.new_w < 1 or self.new_h < 1:
            raise ValueError("resize dimensions must be positive")

    def __str__(self):
        return f"resize:{self.new_w}x{self.new_h}"


@dataclass(frozen=True)
class Rotate:
    degrees: float

    def __post_init__(self):
        if not math.isfinite(self.degrees):
            raise ValueError("rotation angle must be finite")

    def __str__(self):
        return f"rotate:{self.degrees:g}"


@dataclass(frozen=True)
class Crop:
    x: int
    y: int
    w: int
    h: int

    def __post_init__(self):
        if self.x < 0 or self.y < 0 or self.w < 1 or self.h < 1:
            raise ValueError(f"invalid crop rectangle {self}")

    def __str__(self):
        return f"crop:{self.x},{self.y},{self.w},{self.h}"


def _check_window(k):
    if k < 3 or k % 2 == 0:
        raise ValueError(f"filter window must be odd and >= 3, got {k}")


def parse(text: str):
    """Parse an attack string such as ``gauss:10:42`` into a spec object."""
    name, _, rest = text.strip().partition(":")
    args = rest.split(":") if rest else []
    try:
        if name == "none" and not args:
            return NoAttack()
        if name == "median" and len(args) <= 1:
            return MedianFilter(int(args[0]) if args else 3)
        if name in ("average", "mean") and len(args) <= 1:
            return AverageFilter(int(args[0]) if args else 3)
        if name in ("gauss", "gaussian") and 1 <= len(args) <= 2:
            return GaussianNoise(float(args[0]), int(args[1]) if len(args) > 1 else 0)
        if name == "resize" and len(args) == 1:
            w, h = args[0].lower().split("x")
            return Resize(int(w), int(h))
        if name == "rotate" and len(args) == 1:
            return Rotate(float(args[0]))
        if name == "crop" and len(args) == 1:
            x, y, w, h = (int(v) for v in args[0].split(","))
            return Crop(x, y, w, h)
    except ValueError as exc:
        raise ValueError(f"invalid attack spec {text!r}: {exc}") from None
    raise ValueError(
        f"unknown attack spec {text!r}; expected none, median:K, average:K, gauss:SIGMA:SEED, "
        "resize:WxH, rotate:DEG or crop:X,Y,W,H"
    )


def median_filter(img, k=3):
    img = as_image(img)
    r = k // 2
    windows = sliding_window_view(np.pad(img, r, mode="edge"), (k, k))
    return np.median(windows, axis=(-2, -1)).astype(np.uint8)


def average_filter(img, k=3):
    img = as_image(img)
    r = k // 2
    windows = sliding_window_view(np.pad(img.astype(np.float64), r, mode="edge"), (k, k))
    return from_matrix(windows.mean(axis=(-2, -1)))


def gaussian_samples(n, seed):
    """``n`` standard normal samples: Box-Muller over PCG64 uniforms.

    Pairs ``(u1, u2)`` are drawn consecutively; ``u1`` is mapped into (0, 1]
    to keep the logarithm finite. Each pair yields the cosine then the sine
    branch, so the sequence depends only on ``seed``.
    """
    pairs = (n + 1) // 2
    u = np.random.Generator(np.random.PCG64(seed)).random((pairs, 2))
    radius = np.sqrt(-2.0 * np.log(1.0 - u[:, 0]))
    angle = 2.0 * np.pi * u[:, 1]
    z = np.column_stack([radius * np.cos(angle), radius * np.sin(angle)]).ravel()
    return z[:n]


def gaussian_noise(img, sigma, seed=0):
    img = as_image(img)
    if sigma == 0:
        return img.copy()
    noise = gaussian_samples(img.size, seed).reshape(img.shape)
    return from_matrix(img + sigma * noise)


def _bilinear_sample(src, ys, xs):
    """Sample ``src`` at float coordinates; coordinates must lie in range."""
    h, w = src.shape
    y0 = np.clip(np.floor(ys).astype(int), 0, h - 1)
    x0 = np.clip(np.floor(xs).astype(int), 0, w - 1)
    y1 = np.minimum(y0 + 1, h - 1)
    x1 = np.minimum(x0 + 1, w - 1)
    fy = ys - y0
    fx = xs - x0
    top = src[y0, x0] * (1 - fx) + src[y0, x1] * fx
    bottom = src[y1, x0] * (1 - fx) + src[y1, x1] * fx
    return top * (1 - fy) + bottom * fy


def resize_bilinear(img, new_w, new_h):
    """Bilinear resampling with pixel-centre alignment and edge clamping."""
    img = as_image(img)
    h, w = img.shape
    ys = np.clip((np.arange(new_h) + 0.5) * (h / new_h) - 0.5, 0, h - 1)
    xs = np.clip((np.arange(new_w) + 0.5) * (w / new_w) - 0.5, 0, w - 1)
    yy, xx = np.meshgrid(ys, xs, indexing="ij")
    return from_matrix(_bilinear_sample(img.astype(np.float64), yy, xx))


def resize_roundtrip(img, new_w, new_h):
    img = as_image(img)
    h, w = img.shape
    return resize_bilinear(resize_bilinear(img, new_w, new_h), w, h)


def rotate(img, degrees):
    """Rotate counter-clockwise about the image centre on the same canvas.

    Output pixels whose source falls outside the input are set to 0.
    """
    img = as_image(img)
    h, w = img.shape
    theta = math.radians(degrees)
    cos, sin = math.cos(theta), math.sin(theta)
    cy, cx = (h - 1) / 2.0, (w - 1) / 2.0
    yy, xx = np.meshgrid(np.arange(h, dtype=np.float64) - cy, np.arange(w, dtype=np.float64) - cx, indexing="ij")
    # inverse map, with y pointing down on screen
    xs = cos * xx - sin * yy + cx
    ys = sin * xx + cos * yy + cy
    eps = 1e-9
    inside = (xs >= -eps) & (xs <= w - 1 + eps) & (ys >= -eps) & (ys <= h - 1 + eps)
    xs = np.clip(xs, 0, w - 1)
    ys = np.clip(ys, 0, h - 1)
    out = _bilinear_sample(img.astype(np.float64), ys, xs)
    return from_matrix(np.where(inside, out, 0.0))


def crop(img, x, y, w, h):
    img = as_image(img)
    rows, cols = img.shape
    if x < 0 or y < 0 or x + w > cols or y + h > rows:
        raise ValueError(f"crop rectangle ({x}, {y}, {w}, {h}) exceeds image bounds {cols}x{rows}")
    out = np.zeros_like(img)
    out[y : y + h, x : x + w] = img[y : y + h, x : x + w]
    return out


def apply(img, spec):
    """Apply an attack spec (object or string) to ``img``."""
    if isinstance(spec, str):
        spec = parse(spec)
    img = as_image(img)
    if isinstance(spec, NoAttack):
        return img.copy()
    if isinstance(spec, MedianFilter):
        return median_filter(img, spec.k)
    if isinstance(spec, AverageFilter):
        return average_filter(img, spec.k)
    if isinstance(spec, GaussianNoise):
        return gaussian_noise(img, spec.sigma, spec.seed)
    if isinstance(spec, Resize):
        return resize_roundtrip(img, spec.new_w, spec.new_h)
    if isinstance(spec, Rotate):
        return rotate(img, spec.degrees)
    if isinstance(spec, Crop):
        return crop(img, spec.x, spec.y, spec.w, spec.h)
    raise TypeError(f"not an attack spec: {spec!r}")
