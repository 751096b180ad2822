"""Deterministic synthetic gradient-plus-noise images (the standard test triple)."""

import numpy as np

from .imageio import from_matrix


def _render(base, lo, hi, noise, seed):
    rng = np.random.default_rng(seed)
    base = lo + (hi - lo) * (base - base.min()) / np.ptp(base)
    return from_matrix(base + rng.normal(0.0, noise, base.shape))


def _grid(n):
    y, x = np.mgrid[0:n, 0:n] / n
    return x, y


def host_image(n=256, seed=1):
    x, y = _grid(n)
    base = x + 0.5 * np.sin(6 * y) + 0.3 * np.cos(9 * x * y)
    return _render(base, 40, 215, 6.0, seed)


def primary_image(n=128, seed=2):
    x, y = _grid(n)
    disc = ((x - 0.5) ** 2 + (y - 0.5) ** 2) < 0.1
    base = np.sin(4 * x) + np.cos(5 * y) + disc
    return _render(base, 30, 225, 6.0, seed)


def secondary_image(n=64, seed=3):
    x, y = _grid(n)
    cross = (np.abs(x - 0.5) < 0.15) | (np.abs(y - 0.5) < 0.15)
    base = y + cross
    return _render(base, 30, 225, 6.0, seed)


def standard_triple():
    """``(host 256x256, primary 128x128, secondary 64x64)`` as uint8 arrays."""
    return host_image(), primary_image(), secondary_image()


def main(argv=None):
    import argparse
    import os

    from .imageio import write_pgm

    parser = argparse.ArgumentParser(description="Write the standard test triple as PGM files.")
    parser.add_argument("outdir")
    args = parser.parse_args(argv)
    os.makedirs(args.outdir, exist_ok=True)
    for name, img in zip(("host", "primary", "secondary"), standard_triple()):
        write_pgm(img, os.path.join(args.outdir, f"{name}.pgm"))


if __name__ == "__main__":
    main()
