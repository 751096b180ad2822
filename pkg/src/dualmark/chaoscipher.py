"""Coupled logistic-map keystream generator and XOR image cipher.

A first logistic map ``x -> b x (1 - x)`` is run ``warmup + 1`` steps from
``x0``; its final state ``h`` sets the second map's parameter
``r2 = 3.57 + 0.43 h`` and seed ``x2 = r2 h (1 - h)``. Each step of the
second map yields one byte: the first 16 fractional bits of the state, high
byte XOR low byte.
"""

import math
import random
from dataclasses import dataclass

import numpy as np

CHAOS_MIN = 3.57
CHAOS_MAX = 4.0
DEFAULT_WARMUP = 100
_MAX_STALL = 16


class DegenerateKeyError(ValueError):
    """The keystream orbit collapsed to 0 or to a fixed point."""


@dataclass(frozen=True)
class ChaosKey:
    b: float
    x0: float
    warmup: int = DEFAULT_WARMUP

    def __post_init__(self):
        if not (CHAOS_MIN <= self.b <= CHAOS_MAX):
            raise ValueError(f"b must lie in [{CHAOS_MIN}, {CHAOS_MAX}], got {self.b!r}")
        if not (0.0 < self.x0 < 1.0):
            raise ValueError(f"x0 must lie in (0, 1), got {self.x0!r}")
        if int(self.warmup) != self.warmup or self.warmup < 0:
            raise ValueError(f"warmup must be a non-negative integer, got {self.warmup!r}")

    @classmethod
    def random(cls, warmup=DEFAULT_WARMUP):
        """Draw a key from OS entropy, skipping keys caught in a periodic window."""
        rng = random.SystemRandom()
        while True:
            key = cls(b=rng.uniform(3.6, 3.999), x0=rng.uniform(0.01, 0.99), warmup=warmup)
            if is_chaotic(key):
                return key

    def to_text(self) -> str:
        return f"b={self.b!r}\nx0={self.x0!r}\nwarmup={self.warmup}\n"

    @classmethod
    def from_text(cls, text: str) -> "ChaosKey":
        fields = {}
        for lineno, line in enumerate(text.splitlines(), 1):
            line = line.strip()
            if not line:
                continue
            name, sep, value = line.partition("=")
            if not sep:
                raise ValueError(f"key file line {lineno}: expected name=value, got {line!r}")
            fields[name.strip()] = value.strip()
        missing = {"b", "x0", "warmup"} - fields.keys()
        if missing:
            raise ValueError(f"key file missing fields: {', '.join(sorted(missing))}")
        extra = fields.keys() - {"b", "x0", "warmup"}
        if extra:
            raise ValueError(f"key file has unknown fields: {', '.join(sorted(extra))}")
        return cls(b=float(fields["b"]), x0=float(fields["x0"]), warmup=int(fields["warmup"]))

    def save(self, path):
        with open(path, "w") as f:
            f.write(self.to_text())

    @classmethod
    def load(cls, path) -> "ChaosKey":
        with open(path) as f:
            return cls.from_text(f.read())


def logistic_next(x: float, r: float) -> float:
    if not (0.0 <= x <= 1.0):
        raise ValueError(f"logistic state must lie in [0, 1], got {x!r}")
    if not (0.0 <= r <= 4.0):
        raise ValueError(f"logistic parameter must lie in [0, 4], got {r!r}")
    return r * x * (1.0 - x)


def derive_second_map(key: ChaosKey):
    """Return ``(r2, x2)`` for the keystream map, driven by the first map."""
    h = key.x0
    for _ in range(key.warmup + 1):
        h = logistic_next(h, key.b)
    r2 = CHAOS_MIN + (CHAOS_MAX - CHAOS_MIN) * h
    return r2, logistic_next(h, r2)


def lyapunov_exponent(r: float, x0: float, steps: int = 2000, skip: int = 200) -> float:
    """Mean of ``log|r (1 - 2x)|`` along the orbit; positive means chaotic."""
    x = x0
    total = 0.0
    for i in range(skip + steps):
        if i >= skip:
            total += math.log(max(abs(r * (1.0 - 2.0 * x)), 1e-300))
        x = r * x * (1.0 - x)
    return total / steps


def is_chaotic(key: ChaosKey, threshold: float = 0.05) -> bool:
    """Both coupled maps have a clearly positive Lyapunov exponent."""
    if lyapunov_exponent(key.b, key.x0) < threshold:
        return False
    r2, x2 = derive_second_map(key)
    return x2 != 0.0 and lyapunov_exponent(r2, x2) >= threshold


def real_to_byte(x: float) -> int:
    """Fold the first 16 fractional bits of ``x`` into one byte.

    Scaling by 2**16 is exact for binary doubles, so ``bits`` is the exact
    16-bit prefix of the binary expansion. ``x == 1.0`` has an all-zero
    fractional part.
    """
    bits = int(x * 65536.0) & 0xFFFF
    return (bits >> 8) ^ (bits & 0xFF)


def keystream_bytes(key: ChaosKey, n: int) -> np.ndarray:
    if n < 0:
        raise ValueError("n must be non-negative")
    r2, x = derive_second_map(key)
    states = [0.0] * n
    stall = 0
    for i in range(n):
        if x == 0.0:
            raise DegenerateKeyError(f"keystream orbit collapsed to 0 at step {i} for {key}")
        nxt = r2 * x * (1.0 - x)
        stall = stall + 1 if nxt == x else 0
        if stall > _MAX_STALL:
            raise DegenerateKeyError(f"keystream orbit stuck at fixed point {x!r} for {key}")
        x = nxt
        states[i] = x
    # same folding as real_to_byte, vectorized
    bits = (np.array(states) * 65536.0).astype(np.int64) & 0xFFFF
    return ((bits >> 8) ^ (bits & 0xFF)).astype(np.uint8)


def xor_cipher(img, key: ChaosKey) -> np.ndarray:
    """XOR pixels (row-major) with the keystream; applying it twice is the identity."""
    img = np.asarray(img)
    if img.dtype != np.uint8 or img.ndim != 2:
        raise ValueError(f"expected a 2-D uint8 image, got {img.dtype} {img.shape}")
    stream = keystream_bytes(key, img.size).reshape(img.shape)
    return np.bitwise_xor(img, stream)


encrypt = decrypt = xor_cipher
