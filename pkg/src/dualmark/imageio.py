"""8-bit grayscale images as ``uint8`` arrays, plus binary PGM (P5) I/O."""

import numpy as np

from .linalg import as_matrix


class PGMFormatError(ValueError):
    def __init__(self, message, offset):
        super().__init__(f"{message} (at byte offset {offset})")
        self.offset = offset


def as_image(img) -> np.ndarray:
    img = np.asarray(img)
    if img.ndim != 2 or img.size == 0:
        raise ValueError(f"expected a non-empty 2-D image, got shape {img.shape}")
    if img.dtype != np.uint8:
        raise ValueError(f"expected uint8 pixels, got {img.dtype}")
    return img


def to_matrix(img) -> np.ndarray:
    return as_image(img).astype(np.float64)


def from_matrix(m) -> np.ndarray:
    """Round half away from zero, then clamp to [0, 255]."""
    m = as_matrix(m)
    rounded = np.sign(m) * np.floor(np.abs(m) + 0.5)
    return np.clip(rounded, 0, 255).astype(np.uint8)


def _read_token(data, pos):
    """Next whitespace-delimited header token; ``#`` comments run to end of line."""
    n = len(data)
    while pos < n:
        ch = data[pos : pos + 1]
        if ch.isspace():
            pos += 1
        elif ch == b"#":
            while pos < n and data[pos : pos + 1] not in (b"\n", b"\r"):
                pos += 1
        else:
            break
    start = pos
    while pos < n and not data[pos : pos + 1].isspace() and data[pos : pos + 1] != b"#":
        pos += 1
    if start == pos:
        raise PGMFormatError("unexpected end of header", start)
    return data[start:pos], start, pos


def parse_pgm(data: bytes) -> np.ndarray:
    if data[:2] != b"P5":
        raise PGMFormatError(f"bad magic number {data[:2]!r}, expected b'P5'", 0)
    pos = 2
    values = []
    for name in ("width", "height", "maxval"):
        token, start, pos = _read_token(data, pos)
        if not token.isdigit() or int(token) <= 0:
            raise PGMFormatError(f"invalid {name} {token!r}", start)
        values.append(int(token))
    width, height, maxval = values
    if maxval != 255:
        raise PGMFormatError(f"unsupported maxval {maxval}, only 255 is accepted", start)
    if pos >= len(data) or not data[pos : pos + 1].isspace():
        raise PGMFormatError("missing whitespace after maxval", pos)
    pos += 1
    expected = width * height
    payload = data[pos : pos + expected]
    if len(payload) < expected:
        raise PGMFormatError(f"truncated pixel data: expected {expected} bytes, found {len(payload)}", pos + len(payload))
    return np.frombuffer(payload, dtype=np.uint8).reshape(height, width).copy()


def read_pgm(path) -> np.ndarray:
    with open(path, "rb") as f:
        return parse_pgm(f.read())


def format_pgm(img) -> bytes:
    img = as_image(img)
    height, width = img.shape
    return f"P5\n{width} {height}\n255\n".encode("ascii") + img.tobytes()


def write_pgm(img, path):
    with open(path, "wb") as f:
        f.write(format_pgm(img))
