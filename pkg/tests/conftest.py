import numpy as np
import pytest

from svdc.colorspace import RgbImage


@pytest.fixture
def rng():
    return np.random.default_rng(20240607)


def random_rgb(rng, height, width):
    return RgbImage.from_array(
        rng.integers(0, 256, (height, width, 3), dtype=np.uint8)
    )


def gray_rgb(value, height, width):
    plane = np.full((height, width), value, dtype=np.uint8)
    return RgbImage(r=plane, g=plane.copy(), b=plane.copy())
