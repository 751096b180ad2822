"""Dual DWT-SVD watermarking with chaotic encryption of the inner mark.

Pipeline (``seal``):

1. the secondary mark is added to the singular values of every subband of
   the primary mark's wavelet decomposition, ``S* = alpha * S_secondary + S_band``;
2. the watermarked primary is quantized to 8 bits and XOR-encrypted with
   the chaotic keystream;
3. the encrypted primary is embedded the same way, with strength ``beta``,
   into the deepest decomposition level of the host.

Extraction is non-blind: it needs the original host and primary plus the
singular vectors and reference singular values kept in :class:`SideInfo`.
When the payload is larger than the carrier's subbands (a 128x128 primary
against the 64x64 level-2 subbands of a 256x256 host) the payload is split
into its own one-level Haar subbands and each one goes into the matching
carrier subband.
"""

from dataclasses import dataclass, field

import numpy as np

from . import linalg
from .chaoscipher import ChaosKey, xor_cipher
from .imageio import as_image, from_matrix, to_matrix
from .wavelet import SubbandSet, WaveletKind, dwt2, dwt2_multi, idwt2, idwt2_multi

BANDS = SubbandSet.NAMES


@dataclass(frozen=True)
class EmbedParams:
    alpha: float = 0.1
    beta: float = 0.05
    primary_wavelet: WaveletKind = WaveletKind.HAAR
    primary_levels: int = 1
    host_wavelet: WaveletKind = WaveletKind.DB4
    host_levels: int = 2

    def __post_init__(self):
        for name in ("alpha", "beta"):
            value = getattr(self, name)
            if not (np.isfinite(value) and value > 0):
                raise ValueError(f"{name} must be finite and positive, got {value!r}")
        for name in ("primary_levels", "host_levels"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be >= 1")
        object.__setattr__(self, "primary_wavelet", WaveletKind.parse(self.primary_wavelet))
        object.__setattr__(self, "host_wavelet", WaveletKind.parse(self.host_wavelet))


@dataclass
class StageInfo:
    """What one embedding stage must remember for non-blind extraction."""

    wavelet: WaveletKind
    levels: int
    strength: float
    image_shape: tuple
    pad: tuple
    payload_shape: tuple
    split_payload: bool
    payload_u: dict = field(default_factory=dict)
    payload_v: dict = field(default_factory=dict)
    reference_s: dict = field(default_factory=dict)

    @property
    def band_shape(self):
        rows = self.image_shape[0] + self.pad[0]
        cols = self.image_shape[1] + self.pad[1]
        return rows >> self.levels, cols >> self.levels

    def check(self):
        for name in BANDS:
            for label, factor in (("u", self.payload_u[name]), ("v", self.payload_v[name])):
                gram = factor.T @ factor
                if np.abs(gram - np.eye(gram.shape[0])).max() > 1e-6:
                    raise ValueError(f"stored {label} factor for {name} is not orthonormal")
            if self.reference_s[name].size != min(self.band_shape):
                raise ValueError(f"reference singular values for {name} do not match subband shape {self.band_shape}")


@dataclass
class SideInfo:
    params: EmbedParams
    primary_stage: StageInfo
    host_stage: StageInfo


@dataclass
class SealedResult:
    watermarked_host: np.ndarray
    side_info: SideInfo
    watermarked_primary: np.ndarray
    encrypted_primary: np.ndarray


def _padding(shape, levels):
    block = 1 << levels
    return tuple((-n) % block for n in shape)


def _decompose(img, kind, levels, pad):
    x = np.pad(to_matrix(img), ((0, pad[0]), (0, pad[1])), mode="edge")
    return dwt2_multi(x, kind, levels)


def _payload_parts(payload, band_shape):
    """Return ``(per-band payload matrices, split flag)``."""
    rows, cols = payload.shape
    if rows <= band_shape[0] and cols <= band_shape[1]:
        return {name: payload for name in BANDS}, False
    if rows % 2 or cols % 2 or rows // 2 > band_shape[0] or cols // 2 > band_shape[1]:
        raise ValueError(
            f"payload {rows}x{cols} does not fit carrier subbands {band_shape[0]}x{band_shape[1]} "
            f"(nor as half-size Haar subbands)"
        )
    return dict(dwt2(payload, WaveletKind.HAAR).items()), True


def _padded(s, n):
    out = np.zeros(n)
    out[: s.size] = s
    return out


def embed_singular_values(carrier: SubbandSet, payloads: dict, strength: float):
    """Add ``strength`` times each payload's singular values to its carrier band.

    Returns the modified subbands, the payload SVD factors and the carrier's
    original singular values, each keyed by band name.
    """
    modified, factors, reference = {}, {}, {}
    cache = {}
    for name, band in carrier.items():
        payload = payloads[name]
        key = id(payload)
        if key not in cache:
            cache[key] = linalg.svd(payload)
        pf = cache[key]
        cf = linalg.svd(band)
        new_s = cf.s + strength * _padded(pf.s, cf.s.size)
        modified[name] = linalg.reconstruct(linalg.SvdFactors(cf.u, new_s, cf.v))
        factors[name] = pf
        reference[name] = cf.s
    return carrier.replace(**modified), factors, reference


def _embed_stage(carrier_img, payload, strength, kind, levels):
    carrier_img = as_image(carrier_img)
    pad = _padding(carrier_img.shape, levels)
    pyramid = _decompose(carrier_img, kind, levels, pad)
    band_shape = pyramid.deepest.shape
    parts, split = _payload_parts(payload, band_shape)
    bands, factors, reference = embed_singular_values(pyramid.deepest, parts, strength)
    out = idwt2_multi(pyramid.with_deepest(bands))
    out = out[: carrier_img.shape[0], : carrier_img.shape[1]]
    info = StageInfo(
        wavelet=kind,
        levels=levels,
        strength=strength,
        image_shape=carrier_img.shape,
        pad=pad,
        payload_shape=payload.shape,
        split_payload=split,
        payload_u={n: factors[n].u for n in BANDS},
        payload_v={n: factors[n].v for n in BANDS},
        reference_s=reference,
    )
    return from_matrix(out), info


def extract_singular_values(received: SubbandSet, reference_s: dict, payload_u: dict, payload_v: dict, strength: float):
    """Per-band payload estimates ``U diag((S_received - S_reference) / strength) V^T``."""
    parts = {}
    for name, band in received.items():
        u, v = payload_u[name], payload_v[name]
        s = (linalg.singular_values(band) - reference_s[name]) / strength
        parts[name] = linalg.reconstruct(linalg.SvdFactors(u, s[: u.shape[1]], v))
    return parts


def _check_reference(bands: SubbandSet, reference_s: dict):
    # sum of squared singular values equals the squared Frobenius norm
    for name, band in bands.items():
        stored = reference_s[name]
        energy = float(np.sum(band * band))
        if stored.size != min(band.shape) or abs(energy - stored @ stored) > 1e-6 * max(1.0, energy):
            raise ValueError(f"original image does not match side information ({name} subband energy differs)")


def _extract_stage(received, original, stage: StageInfo):
    received, original = as_image(received), as_image(original)
    for label, img in (("received", received), ("original", original)):
        if img.shape != tuple(stage.image_shape):
            raise ValueError(f"{label} image is {img.shape}, side information expects {tuple(stage.image_shape)}")
    got = _decompose(received, stage.wavelet, stage.levels, stage.pad).deepest
    ref = _decompose(original, stage.wavelet, stage.levels, stage.pad).deepest
    if got.shape != stage.band_shape:
        raise ValueError("wavelet configuration does not match side information")
    _check_reference(ref, stage.reference_s)
    parts = extract_singular_values(got, stage.reference_s, stage.payload_u, stage.payload_v, stage.strength)
    if stage.split_payload:
        return idwt2(SubbandSet(kind=WaveletKind.HAAR, **parts))
    return np.mean([parts[n] for n in BANDS], axis=0)


def embed_secondary(primary, secondary, alpha, wavelet=WaveletKind.HAAR, levels=1):
    """Hide ``secondary`` in every subband of ``primary``; returns ``(image, StageInfo)``."""
    secondary = to_matrix(secondary)
    primary = as_image(primary)
    band_shape = tuple((n + p) >> levels for n, p in zip(primary.shape, _padding(primary.shape, levels)))
    if secondary.shape[0] > band_shape[0] or secondary.shape[1] > band_shape[1]:
        raise ValueError(
            f"secondary {secondary.shape[0]}x{secondary.shape[1]} exceeds primary subbands "
            f"{band_shape[0]}x{band_shape[1]}"
        )
    return _embed_stage(primary, secondary, alpha, WaveletKind.parse(wavelet), levels)


def embed_host(host, payload, beta, wavelet=WaveletKind.DB4, levels=2):
    """Hide ``payload`` in the deepest subbands of ``host``; returns ``(image, StageInfo)``."""
    return _embed_stage(host, to_matrix(payload), beta, WaveletKind.parse(wavelet), levels)


def extract_primary(watermarked_host, host, info: SideInfo):
    """Recover the (still encrypted) watermarked primary from the host channel."""
    return from_matrix(_extract_stage(watermarked_host, host, info.host_stage))


def extract_secondary(recovered_primary, original_primary, info: SideInfo):
    return from_matrix(_extract_stage(recovered_primary, original_primary, info.primary_stage))


def seal(host, primary, secondary, key: ChaosKey, params: EmbedParams = EmbedParams()) -> SealedResult:
    wm_primary, primary_stage = embed_secondary(
        primary, secondary, params.alpha, params.primary_wavelet, params.primary_levels
    )
    encrypted = xor_cipher(wm_primary, key)
    wm_host, host_stage = embed_host(host, encrypted, params.beta, params.host_wavelet, params.host_levels)
    info = SideInfo(params=params, primary_stage=primary_stage, host_stage=host_stage)
    return SealedResult(wm_host, info, wm_primary, encrypted)


def unseal(watermarked_host, host, primary_original, key: ChaosKey, info: SideInfo):
    """Return ``(recovered_primary, recovered_secondary)``."""
    encrypted = extract_primary(watermarked_host, host, info)
    recovered_primary = xor_cipher(encrypted, key)
    return recovered_primary, extract_secondary(recovered_primary, primary_original, info)
