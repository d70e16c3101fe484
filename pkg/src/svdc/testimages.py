"""Deterministic synthetic test rasters, plus discovery of the standard
512x512 images (lena, mandrill, plane) when a local copy exists.

The three stand-ins span the codec's difficulty range: a smooth gradient
(energy concentrates in the leading singular values), a high-frequency noise
texture (worst case, nearly flat spectrum), and a piecewise-flat mosaic
(sharp edges, moderate spectral decay)."""

import os
from pathlib import Path

import numpy as np

from .colorspace import RgbImage

STANDARD_NAMES = ("lena", "mandrill", "plane")
STANDARD_DIR_ENV = "SVDC_TEST_IMAGES"


def smooth_gradient(size=512):
    """Smooth non-separable color field; quantization keeps the tail alive."""
    y, x = np.mgrid[0:size, 0:size] / size
    r = 110 + 80 * np.sin(2 * np.pi * (0.6 * x + 0.3 * y)) * np.cos(2 * np.pi * 0.7 * x * y)
    g = 120 + 70 * np.cos(2 * np.pi * (0.4 * x - 0.6 * y + 0.2 * x * y))
    b = 128 + 60 * np.sin(2 * np.pi * 0.8 * (x * x + y * y)) * (0.4 + 0.6 * y)
    texture = 5 * np.sin(2 * np.pi * 11 * x * y)
    stack = np.stack([r + texture, g + texture, b - texture], axis=2)
    return RgbImage.from_array(np.clip(np.round(stack), 0, 255).astype(np.uint8))


def noise_texture(size=512, seed=1207):
    """Independent uniform noise per channel; the adversarial stand-in."""
    rng = np.random.default_rng(seed)
    return RgbImage.from_array(rng.integers(0, 256, (size, size, 3), dtype=np.uint8))


def piecewise_flat(size=512, seed=5150, rectangles=220):
    """Random constant-color rectangles over a gray background.

    Rectangle colors are mildly saturated offsets from a random gray, which
    keeps the energy luma-dominated the way photographic content is."""
    rng = np.random.default_rng(seed)
    arr = np.full((size, size, 3), 96, dtype=np.uint8)
    for _ in range(rectangles):
        r0, c0 = rng.integers(0, size, 2)
        h = int(rng.integers(size // 16, size // 2))
        w = int(rng.integers(size // 16, size // 2))
        gray = rng.integers(16, 240)
        color = np.clip(gray + rng.integers(-32, 33, 3), 0, 255).astype(np.uint8)
        arr[r0:r0 + h, c0:c0 + w] = color
    return RgbImage.from_array(arr)


STANDIN_BUILDERS = {
    "gradient": smooth_gradient,
    "noise": noise_texture,
    "blocks": piecewise_flat,
}


def write_standins(directory, size=512):
    """Write the three stand-ins as PPM files; returns name -> path."""
    from .ppm import write_ppm

    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    paths = {}
    for name, build in STANDIN_BUILDERS.items():
        path = directory / f"{name}.ppm"
        write_ppm(path, build(size))
        paths[name] = path
    return paths


def find_standard_images(directory=None):
    """Locate lena/mandrill/plane rasters; returns name -> path for those found.

    Looks in *directory*, else $SVDC_TEST_IMAGES, else testdata/standard
    relative to the current directory.
    """
    if directory is None:
        directory = os.environ.get(STANDARD_DIR_ENV, "testdata/standard")
    directory = Path(directory)
    found = {}
    if not directory.is_dir():
        return found
    for name in STANDARD_NAMES:
        for suffix in (".ppm", ".pnm", ".png", ".tiff", ".bmp"):
            candidate = directory / f"{name}{suffix}"
            if candidate.is_file():
                found[name] = candidate
                break
    return found
