"""Whole-pipeline compression tests."""

import numpy as np
import pytest

from svdc import codec, metrics
from svdc.codec import (
    SCHEME_RGB,
    SCHEME_YCBCR,
    CompressedImage,
    RankThresholdWarning,
    coefficient_count,
    coefficient_ratio,
    compress,
    compress_rgb_baseline,
    decompress,
    k_prime_for,
)
from svdc.colorspace import downsample, rgb_to_ycbcr, upsample, ycbcr_to_rgb
from svdc.linalg import reconstruct, svd, truncate

from conftest import gray_rgb, random_rgb


def grayscale_image(rng, size):
    """R = G = B random: chroma is exactly the constant 128."""
    plane = rng.integers(0, 256, (size, size), dtype=np.uint8)
    return codec.RgbImage(r=plane, g=plane.copy(), b=plane.copy())


class TestCompress:
    def test_uniform_gray_k1_exact_round_trip(self):
        img = gray_rgb(128, 16, 16)
        restored = decompress(compress(img, 1, 1))
        assert np.array_equal(restored.to_array(), img.to_array())

    def test_zero_image_round_trip(self):
        img = gray_rgb(0, 12, 10)
        restored = decompress(compress(img, 2, 1))
        assert np.array_equal(restored.to_array(), img.to_array())

    def test_header_fields(self, rng):
        c = compress(random_rgb(rng, 24, 18), 6, 3)
        assert (c.width, c.height) == (18, 24)
        assert c.scheme == SCHEME_YCBCR
        assert (c.k, c.k_prime, c.subsample_factor) == (6, 3, 2)
        assert c.planes[0].k == 6
        assert c.planes[1].k == c.planes[2].k == 3

    def test_coefficient_accounting_even_dims(self, rng):
        # 2*k'*(m/2 + n/2 + 1) == k'*(m+n+2) for even m, n
        m = n = 32
        k, kp = 8, 2
        c = compress(random_rgb(rng, m, n), k, kp)
        assert coefficient_count(c) == k * (m + n + 1) + kp * (m + n + 2)
        assert coefficient_ratio(c) == pytest.approx(
            metrics.ratio_ycbcr(m, n, k, kp)
        )

    def test_k_prime_above_k_rejected(self, rng):
        with pytest.raises(ValueError, match="k_prime"):
            compress(random_rgb(rng, 16, 16), 4, 5)

    def test_k_out_of_range(self, rng):
        img = random_rgb(rng, 8, 8)
        with pytest.raises(ValueError):
            compress(img, 0, 0)
        with pytest.raises(ValueError):
            compress(img, 9, 1)

    def test_k_prime_capped_at_chroma_rank(self, rng):
        img = random_rgb(rng, 16, 16)
        c = compress(img, 16, 16)  # chroma planes are 8x8
        assert c.k_prime == 8

    def test_warns_at_k_seuil(self, rng):
        img = random_rgb(rng, 8, 8)  # threshold 64/17 ~ 3.76
        with pytest.warns(RankThresholdWarning):
            compress(img, 4, 2)

    def test_no_warning_below_threshold(self, rng):
        import warnings

        with warnings.catch_warnings():
            warnings.simplefilter("error")
            compress(random_rgb(rng, 16, 16), 3, 1)


class TestDecompress:
    def test_full_rank_constant_chroma_exact(self, rng):
        img = grayscale_image(rng, 20)
        restored = decompress(compress(img, 20, 20))
        assert np.array_equal(restored.to_array(), img.to_array())

    def test_output_is_8bit(self, rng):
        restored = decompress(compress(random_rgb(rng, 17, 13), 5, 2))
        arr = restored.to_array()
        assert arr.dtype == np.uint8
        assert (restored.height, restored.width) == (17, 13)

    def test_odd_dimensions_round_trip(self, rng):
        img = random_rgb(rng, 15, 9)
        restored = decompress(compress(img, 9, 4))
        assert (restored.height, restored.width) == (15, 9)

    def test_psnr_monotone_in_k_at_fixed_k_prime(self, rng):
        img = random_rgb(rng, 48, 48)
        values = [
            metrics.psnr(img, decompress(compress(img, k, 3))) for k in (6, 12, 24, 48)
        ]
        assert all(b >= a - 1e-6 for a, b in zip(values, values[1:]))

    def test_matches_manual_plane_pipeline(self, rng):
        # s=1, k'=k: the codec must equal hand-built per-plane SVD-k
        img = random_rgb(rng, 14, 14)
        k = 5
        c = compress(img, k, k, subsample_factor=1)
        got = decompress(c).to_array()

        y, cb, cr = rgb_to_ycbcr(img)
        planes = []
        for plane in (y, cb, cr):
            rec = np.clip(reconstruct(truncate(svd(plane), k)), 0.0, 255.0)
            planes.append(upsample(rec, 14, 14, 1))
        expected = ycbcr_to_rgb(*planes).to_array()
        assert np.array_equal(got, expected)


class TestRgbBaseline:
    def test_uniform_image_k1_exact(self):
        img = gray_rgb(77, 10, 10)
        restored = decompress(compress_rgb_baseline(img, 1))
        assert np.array_equal(restored.to_array(), img.to_array())

    def test_header_and_counts(self, rng):
        m = n = 20
        c = compress_rgb_baseline(random_rgb(rng, m, n), 4)
        assert c.scheme == SCHEME_RGB
        assert c.subsample_factor == 1
        assert coefficient_count(c) == 3 * 4 * (m + n + 1)
        assert coefficient_ratio(c) == pytest.approx(metrics.ratio_rgb(m, n, 4))

    def test_rank_out_of_range(self, rng):
        with pytest.raises(ValueError):
            compress_rgb_baseline(random_rgb(rng, 8, 8), 9)

    def test_reconstruction_quality_tracks_rank(self, rng):
        img = random_rgb(rng, 32, 32)
        low = metrics.psnr(img, decompress(compress_rgb_baseline(img, 2)))
        high = metrics.psnr(img, decompress(compress_rgb_baseline(img, 24)))
        assert high > low


class TestCompressedImageValidation:
    def test_rejects_bad_scheme(self, rng):
        c = compress(random_rgb(rng, 8, 8), 2, 1)
        with pytest.raises(ValueError, match="scheme"):
            CompressedImage(
                width=8, height=8, scheme="bogus", k=2, k_prime=1,
                subsample_factor=2, planes=c.planes,
            )

    def test_rejects_rank_disorder(self, rng):
        c = compress(random_rgb(rng, 8, 8), 2, 1)
        with pytest.raises(ValueError, match="k_prime"):
            CompressedImage(
                width=8, height=8, scheme=SCHEME_YCBCR, k=1, k_prime=2,
                subsample_factor=2, planes=c.planes,
            )

    def test_rejects_plane_shape_mismatch(self, rng):
        c = compress(random_rgb(rng, 8, 8), 2, 1)
        with pytest.raises(ValueError, match="do not match"):
            CompressedImage(
                width=9, height=8, scheme=SCHEME_YCBCR, k=2, k_prime=1,
                subsample_factor=2, planes=c.planes,
            )


@pytest.mark.parametrize("k,v,expected", [(40, 4, 10), (40, 16, 3), (10, 16, 1), (7, 2, 4)])
def test_k_prime_for(k, v, expected):
    assert k_prime_for(k, v) == expected


def test_chroma_stays_in_range_after_every_stage(rng):
    # saturated colors push Cb/Cr to the clamp boundary
    arr = np.zeros((12, 12, 3), dtype=np.uint8)
    arr[:, :6, 0] = 255
    arr[:, 6:, 2] = 255
    img = codec.RgbImage.from_array(arr)
    y, cb, cr = rgb_to_ycbcr(img)
    for plane in (cb, cr):
        small = downsample(plane, 2)
        assert small.min() >= 0.0 and small.max() <= 255.0
    restored = decompress(compress(img, 6, 3))
    assert restored.to_array().min() >= 0
    assert restored.to_array().max() <= 255
