"""Separable 2-D orthogonal wavelet transform with periodic boundaries.

Subband naming: the first letter is the filter applied along rows
(horizontal direction), the second the filter along columns. So ``hl``
holds horizontal differences and ``lh`` vertical differences.
"""

import enum
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .linalg import as_matrix

_SQRT2 = np.sqrt(2.0)
_SQRT3 = np.sqrt(3.0)


class WaveletKind(enum.Enum):
    HAAR = "haar"
    DB4 = "db4"

    @property
    def lowpass(self) -> np.ndarray:
        if self is WaveletKind.HAAR:
            return np.array([1.0, 1.0]) / _SQRT2
        return np.array([1 + _SQRT3, 3 + _SQRT3, 3 - _SQRT3, 1 - _SQRT3]) / (4 * _SQRT2)

    @property
    def highpass(self) -> np.ndarray:
        h = self.lowpass
        return np.array([(-1) ** k * h[len(h) - 1 - k] for k in range(len(h))])

    @classmethod
    def parse(cls, name):
        if isinstance(name, cls):
            return name
        aliases = {"haar": cls.HAAR, "db1": cls.HAAR, "db4": cls.DB4, "daubechies4": cls.DB4, "d4": cls.DB4}
        try:
            return aliases[str(name).lower()]
        except KeyError:
            raise ValueError(f"unknown wavelet {name!r}; expected 'haar' or 'db4'") from None


@dataclass(frozen=True)
class SubbandSet:
    ll: np.ndarray
    lh: np.ndarray
    hl: np.ndarray
    hh: np.ndarray
    kind: WaveletKind

    NAMES = ("ll", "lh", "hl", "hh")

    def __post_init__(self):
        shapes = {np.shape(b) for b in self.bands()}
        if len(shapes) != 1:
            raise ValueError(f"subbands must share dimensions, got {sorted(shapes)}")

    def bands(self):
        return (self.ll, self.lh, self.hl, self.hh)

    def items(self):
        return zip(self.NAMES, self.bands())

    @property
    def shape(self):
        return self.ll.shape

    def replace(self, **bands):
        fields = dict(self.items())
        fields.update(bands)
        return SubbandSet(kind=self.kind, **fields)


@dataclass(frozen=True)
class WaveletPyramid:
    """Multi-level decomposition; ``levels[-1]`` is the deepest, with its LL kept."""

    levels: tuple

    @property
    def kind(self):
        return self.levels[0].kind

    @property
    def deepest(self) -> SubbandSet:
        return self.levels[-1]

    def with_deepest(self, bands: SubbandSet) -> "WaveletPyramid":
        return WaveletPyramid(self.levels[:-1] + (bands,))


@lru_cache(maxsize=64)
def _analysis_matrix(kind: WaveletKind, n: int) -> np.ndarray:
    """Orthogonal ``n x n`` matrix mapping a signal to [approximation; detail]."""
    h, g = kind.lowpass, kind.highpass
    w = np.zeros((n, n))
    half = n // 2
    for i in range(half):
        for k in range(len(h)):
            col = (2 * i + k) % n
            w[i, col] += h[k]
            w[half + i, col] += g[k]
    w.setflags(write=False)
    return w


def _check_input(x, kind):
    rows, cols = x.shape
    support = len(kind.lowpass)
    if rows < support or cols < support:
        raise ValueError(f"input {x.shape} is smaller than the {kind.value} filter support ({support})")
    if rows % 2 or cols % 2:
        raise ValueError(f"input dimensions must be even, got {x.shape}")


def dwt2(x, kind=WaveletKind.HAAR) -> SubbandSet:
    """One level of the 2-D transform."""
    kind = WaveletKind.parse(kind)
    x = as_matrix(x)
    _check_input(x, kind)
    rows, cols = x.shape
    coeffs = _analysis_matrix(kind, rows) @ x @ _analysis_matrix(kind, cols).T
    r, c = rows // 2, cols // 2
    return SubbandSet(
        ll=coeffs[:r, :c],
        hl=coeffs[:r, c:],
        lh=coeffs[r:, :c],
        hh=coeffs[r:, c:],
        kind=kind,
    )


def idwt2(bands: SubbandSet) -> np.ndarray:
    """Inverse of :func:`dwt2`."""
    shapes = {np.shape(b) for b in bands.bands()}
    if len(shapes) != 1:
        raise ValueError(f"mismatched subband dimensions: {sorted(shapes)}")
    r, c = bands.shape
    coeffs = np.block([[bands.ll, bands.hl], [bands.lh, bands.hh]])
    w_rows = _analysis_matrix(bands.kind, 2 * r)
    w_cols = _analysis_matrix(bands.kind, 2 * c)
    return w_rows.T @ coeffs @ w_cols


def dwt2_multi(x, kind=WaveletKind.HAAR, levels: int = 1) -> WaveletPyramid:
    kind = WaveletKind.parse(kind)
    if levels < 1:
        raise ValueError("levels must be >= 1")
    x = as_matrix(x)
    support = len(kind.lowpass)
    rows, cols = x.shape
    for level in range(levels):
        if rows % 2 or cols % 2 or rows < support or cols < support:
            raise ValueError(f"{x.shape} input cannot be decomposed to {levels} levels ({kind.value}); fails at level {level + 1}")
        rows, cols = rows // 2, cols // 2
    out = []
    current = x
    for _ in range(levels):
        bands = dwt2(current, kind)
        out.append(bands)
        current = bands.ll
    return WaveletPyramid(tuple(out))


def idwt2_multi(p: WaveletPyramid) -> np.ndarray:
    current = idwt2(p.deepest)
    for bands in reversed(p.levels[:-1]):
        if current.shape != bands.shape:
            raise ValueError(f"level shape mismatch: {current.shape} vs {bands.shape}")
        current = idwt2(bands.replace(ll=current))
    return current
