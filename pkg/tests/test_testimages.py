"""Synthetic stand-in generators."""

import numpy as np

from svdc.ppm import read_ppm
from svdc.testimages import (
    STANDIN_BUILDERS,
    find_standard_images,
    noise_texture,
    piecewise_flat,
    smooth_gradient,
    write_standins,
)


def test_generators_are_deterministic():
    for build in (smooth_gradient, noise_texture, piecewise_flat):
        a = build(64)
        b = build(64)
        assert np.array_equal(a.to_array(), b.to_array())


def test_default_size_and_range():
    img = smooth_gradient(32)
    assert (img.height, img.width) == (32, 32)
    arr = img.to_array()
    assert arr.dtype == np.uint8


def test_builders_cover_three_profiles():
    assert set(STANDIN_BUILDERS) == {"gradient", "noise", "blocks"}


def test_write_standins(tmp_path):
    paths = write_standins(tmp_path, size=16)
    assert sorted(paths) == ["blocks", "gradient", "noise"]
    for name, path in paths.items():
        img = read_ppm(path)
        assert (img.height, img.width) == (16, 16)


def test_find_standard_images_empty_dir(tmp_path):
    assert find_standard_images(tmp_path) == {}
    assert find_standard_images(tmp_path / "missing") == {}


def test_find_standard_images_picks_up_ppm(tmp_path, rng):
    from conftest import random_rgb
    from svdc.ppm import write_ppm

    write_ppm(tmp_path / "lena.ppm", random_rgb(rng, 8, 8))
    found = find_standard_images(tmp_path)
    assert list(found) == ["lena"]
