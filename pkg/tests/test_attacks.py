import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from hypothesis.extra.numpy import arrays

from dualmark import attacks
from dualmark.attacks import (
    AverageFilter,
    Crop,
    GaussianNoise,
    MedianFilter,
    NoAttack,
    Resize,
    Rotate,
    apply,
    gaussian_samples,
    parse,
)

rng = np.random.default_rng(0)
RANDOM = rng.integers(0, 256, (32, 32), dtype=np.uint8)

SPECS = [
    NoAttack(),
    MedianFilter(3),
    MedianFilter(5),
    AverageFilter(3),
    GaussianNoise(10, 42),
    Resize(48, 20),
    Rotate(80),
    Rotate(-33.3),
    Crop(2, 3, 10, 12),
]


def bilinear_oracle(img, new_w, new_h):
    """Per-pixel scalar bilinear resampling with pixel-centre alignment."""
    h, w = img.shape
    out = np.zeros((new_h, new_w))
    for i in range(new_h):
        for j in range(new_w):
            y = min(max((i + 0.5) * h / new_h - 0.5, 0.0), h - 1.0)
            x = min(max((j + 0.5) * w / new_w - 0.5, 0.0), w - 1.0)
            y0, x0 = int(math.floor(y)), int(math.floor(x))
            y1, x1 = min(y0 + 1, h - 1), min(x0 + 1, w - 1)
            fy, fx = y - y0, x - x0
            v = (
                img[y0, x0] * (1 - fy) * (1 - fx)
                + img[y0, x1] * (1 - fy) * fx
                + img[y1, x0] * fy * (1 - fx)
                + img[y1, x1] * fy * fx
            )
            out[i, j] = math.floor(v + 0.5)
    return np.clip(out, 0, 255).astype(np.uint8)


def assert_matches_oracle(out, expected):
    # the oracle sums four weighted corners, the implementation lerps twice;
    # a value landing on .5 can round differently
    diff = np.abs(out.astype(int) - expected)
    assert diff.max() <= 1
    assert np.mean(diff != 0) < 0.01


def test_median_constant():
    img = np.full((9, 9), 77, dtype=np.uint8)
    np.testing.assert_array_equal(apply(img, MedianFilter(3)), img)


def test_median_center():
    img = np.arange(1, 10, dtype=np.uint8).reshape(3, 3)
    assert apply(img, "median:3")[1, 1] == 5


def test_noise_zero_sigma_is_identity():
    np.testing.assert_array_equal(apply(RANDOM, GaussianNoise(0, 5)), RANDOM)


def test_noise_reproducible_and_seed_dependent():
    a = apply(RANDOM, "gauss:10:42")
    np.testing.assert_array_equal(a, apply(RANDOM, "gauss:10:42"))
    assert not np.array_equal(a, apply(RANDOM, "gauss:10:43"))


def test_box_muller_statistics():
    z = gaussian_samples(200_000, 1)
    assert abs(z.mean()) < 0.01
    assert abs(z.std() - 1) < 0.01
    np.testing.assert_array_equal(gaussian_samples(5, 1), z[:5])


def test_rotation_identities():
    np.testing.assert_array_equal(apply(RANDOM, Rotate(0)), RANDOM)
    assert np.abs(apply(RANDOM, Rotate(360)).astype(int) - RANDOM).max() <= 1


def test_quarter_rotation_matches_array_rotation():
    np.testing.assert_array_equal(apply(RANDOM, Rotate(90)), np.rot90(RANDOM))


def test_resize_matches_scalar_oracle():
    small = np.random.default_rng(10).integers(0, 256, (12, 17), dtype=np.uint8)
    big = bilinear_oracle(small, 29, 31)
    assert_matches_oracle(attacks.resize_bilinear(small, 29, 31), big)
    assert_matches_oracle(apply(small, Resize(29, 31)), bilinear_oracle(attacks.resize_bilinear(small, 29, 31), 17, 12))


def test_resize_256_512_256_matches_oracle():
    img = np.random.default_rng(11).integers(0, 256, (256, 256), dtype=np.uint8)
    out = apply(img, "resize:512x512")
    assert_matches_oracle(attacks.resize_bilinear(img, 512, 512), bilinear_oracle(img, 512, 512))
    expected = bilinear_oracle(bilinear_oracle(img, 512, 512), 256, 256)
    assert_matches_oracle(out, expected)
    # the round trip behaves like a mild blur
    dev = out.astype(int) - img
    assert abs(dev.mean()) < 0.5 and dev.std() < img.std()


def test_crop():
    out = apply(RANDOM, Crop(2, 3, 10, 12))
    np.testing.assert_array_equal(out[3:15, 2:12], RANDOM[3:15, 2:12])
    assert out.sum() == RANDOM[3:15, 2:12].astype(int).sum()
    with pytest.raises(ValueError):
        apply(RANDOM, Crop(30, 0, 5, 5))


def test_average_preserves_mean():
    img = np.zeros((40, 40), dtype=np.uint8) + 50
    img[5:35, 5:35] = np.random.default_rng(2).integers(0, 256, (30, 30))
    assert abs(apply(img, AverageFilter(3)).mean() - img.mean()) <= 1


@pytest.mark.parametrize(
    "text,spec",
    [
        ("none", NoAttack()),
        ("median:3", MedianFilter(3)),
        ("average:5", AverageFilter(5)),
        ("gauss:10:42", GaussianNoise(10.0, 42)),
        ("resize:512x512", Resize(512, 512)),
        ("rotate:80", Rotate(80.0)),
        ("crop:32,32,64,64", Crop(32, 32, 64, 64)),
    ],
)
def test_spec_strings(text, spec):
    assert parse(text) == spec
    assert str(spec) == text


@pytest.mark.parametrize("text", ["blur:3", "median:4", "median:x", "gauss", "resize:10", "crop:1,2,3"])
def test_bad_spec_strings(text):
    with pytest.raises(ValueError):
        parse(text)


@settings(max_examples=30, deadline=None)
@given(arrays(np.uint8, st.tuples(st.integers(4, 24), st.integers(4, 24))), st.sampled_from(SPECS))
def test_attacks_are_total(img, spec):
    if isinstance(spec, Crop) and (spec.x + spec.w > img.shape[1] or spec.y + spec.h > img.shape[0]):
        return
    out = apply(img, spec)
    assert out.dtype == np.uint8 and out.shape == img.shape
