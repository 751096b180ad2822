# %% [markdown]
# # Singular values and wavelet subbands
#
# The watermark lives in the singular values of wavelet subbands, so the two
# kernels worth looking at first are `dualmark.linalg.svd` (one-sided Jacobi)
# and `dualmark.wavelet`.

# %%
import numpy as np

from dualmark import linalg
from dualmark.testimages import host_image
from dualmark.wavelet import WaveletKind, dwt2, dwt2_multi, idwt2_multi

rng = np.random.default_rng(0)
a = rng.normal(size=(6, 4))
f = linalg.svd(a)
print("singular values:", np.round(f.s, 4))
print("reconstruction error:", np.linalg.norm(linalg.reconstruct(f) - a))

# %% [markdown]
# Geometric edits that only permute or pad the matrix leave the non-zero
# singular values alone. Repeating every row L times scales them by sqrt(L).

# %%
for label, b in [
    ("transpose", a.T),
    ("row flip", a[::-1]),
    ("column flip", a[:, ::-1]),
    ("quarter turn", np.rot90(a)),
    ("zero padding", np.pad(a, 2)),
]:
    s = linalg.singular_values(b)
    print(f"{label:>13}: {np.round(s[s > 1e-12], 4)}")
print("rows x3 / sqrt(3):", np.round(linalg.singular_values(np.repeat(a, 3, axis=0)) / np.sqrt(3), 4))

# %% [markdown]
# A two-level Daubechies-4 decomposition of the 256x256 host leaves 64x64
# subbands at the deepest level, which is where the encrypted payload goes.

# %%
host = host_image().astype(float)
pyramid = dwt2_multi(host, WaveletKind.DB4, levels=2)
for name, band in pyramid.deepest.items():
    print(f"{name}: shape {band.shape}, energy share {np.sum(band**2) / np.sum(host**2):.5f}")
print("round trip error:", np.abs(idwt2_multi(pyramid) - host).max())

bands = dwt2([[1.0, 7.0], [-2.0, 5.0]], WaveletKind.HAAR)
print("2x2 Haar:", {name: float(b[0, 0]) for name, b in bands.items()})
