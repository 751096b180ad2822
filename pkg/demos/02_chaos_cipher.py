# %% [markdown]
# # Coupled logistic-map stream cipher
#
# The first map (parameter `b`, seed `x0`) runs `warmup + 1` steps. Its final
# state picks the second map's parameter inside the chaotic band
# [3.57, 4]. Each step of the second map gives one keystream byte.

# %%
import numpy as np

from dualmark.chaoscipher import ChaosKey, derive_second_map, is_chaotic, keystream_bytes, xor_cipher
from dualmark.metrics import ncc
from dualmark.testimages import primary_image

key = ChaosKey(b=3.99, x0=0.3, warmup=100)
print("second map (r2, x2):", derive_second_map(key))
print("first bytes:", keystream_bytes(key, 8))
print(key.to_text())

# %% [markdown]
# Encryption is XOR, so applying it twice gives the image back.

# %%
img = primary_image()
cipher = xor_cipher(img, key)
print("restored exactly:", np.array_equal(xor_cipher(cipher, key), img))
print("ncc(plain, cipher):", round(ncc(img, cipher), 4))

# %% [markdown]
# A 1e-10 change in `x0` gives an unrelated keystream, and the wrong key only
# matches pixels at chance level (1/256).

# %%
near = ChaosKey(key.b, key.x0 + 1e-10, key.warmup)
a, b = keystream_bytes(key, 16384), keystream_bytes(near, 16384)
print("bytes changed:", np.mean(a != b))
print("wrong-key pixel agreement:", np.mean(xor_cipher(cipher, near) == img), "vs", 1 / 256)

# %% [markdown]
# Not every `b` is usable: inside periodic windows (around 3.83, for
# example) nearby keys fall onto the same cycle. `ChaosKey.random` skips
# those keys.

# %%
window = ChaosKey(3.8308533835798873, 0.7249066297643184)
other = ChaosKey(window.b, window.x0 + 1e-10)
print("periodic-window key chaotic?", is_chaotic(window))
print("bytes changed:", np.mean(keystream_bytes(window, 16384) != keystream_bytes(other, 16384)))
print("random key:", ChaosKey.random())
