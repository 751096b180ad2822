# %% [markdown]
# # Robustness suite
#
# Seal once, attack the watermarked host, extract, and score the recovered
# marks against the originals. Published reference correlations for the
# same four attack types are shown for comparison only; they came from
# different (natural) images.

# %%
import numpy as np

from dualmark import attacks
from dualmark.chaoscipher import ChaosKey
from dualmark.evaluation import DEFAULT_SUITE, evaluate
from dualmark.testimages import standard_triple
from dualmark.watermark import EmbedParams

REFERENCE = {"median:3": (0.8967, 0.4157), "gauss:10:42": (0.8966, 0.4161), "resize:512x512": (0.8968, 0.4154), "rotate:80": (0.8969, 0.4153)}

host, primary, secondary = standard_triple()
key = ChaosKey(3.99, 0.3, 100)
rows = evaluate(host, primary, secondary, key, EmbedParams(0.1, 0.05), DEFAULT_SUITE)

print(f"{'attack':<16}{'ncc_p':>9}{'ncc_s':>9}{'psnr':>8}   reference")
for r in rows:
    ref = REFERENCE.get(r.attack, ("", ""))
    print(f"{r.attack:<16}{r.ncc_primary:9.4f}{r.ncc_secondary:9.4f}{r.psnr_db:8.2f}   {ref[0]} {ref[1]}")

# %% [markdown]
# Small, dense perturbations (noise, resampling) leave many ciphertext pixels
# within a few gray levels. XOR with the keystream then flips mostly low
# bits, and the primary stays recognisable. Filtering and rotation move the
# payload far enough that decryption turns it into noise. The secondary is
# rebuilt from stored singular vectors, which keeps its correlation above
# zero even then.

# %%
for spec in ["median:3", "gauss:10:42", "rotate:80", "crop:32,32,192,192"]:
    out = attacks.apply(host, spec)
    print(f"{spec:<20} mean abs change {np.abs(out.astype(int) - host).mean():6.2f}")
