"""End-to-end compression: dual-rank YCbCr coding with 2x2 chroma
subsampling, plus the uniform-rank full-resolution RGB baseline."""

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .colorspace import (
    RgbImage,
    YcbcrImage,
    downsample,
    rgb_to_ycbcr,
    subsampled_shape,
    upsample,
    ycbcr_to_rgb,
)
from .linalg import TruncatedPlane, reconstruct, svd, truncate
from .metrics import k_seuil

SCHEME_YCBCR = "ycbcr-dual-rank"
SCHEME_RGB = "rgb-uniform-rank"
SCHEMES = (SCHEME_YCBCR, SCHEME_RGB)


class RankThresholdWarning(UserWarning):
    """k at or above the break-even threshold: the file will not shrink."""


@dataclass
class CompressedImage:
    """Header data plus three truncated planes (Y, Cb, Cr or R, G, B)."""

    width: int
    height: int
    scheme: str
    k: int
    k_prime: int
    subsample_factor: int
    planes: tuple

    def __post_init__(self):
        if self.scheme not in SCHEMES:
            raise ValueError(f"unknown scheme {self.scheme!r}")
        if self.width < 1 or self.height < 1:
            raise ValueError("image dimensions must be positive")
        if self.subsample_factor < 1:
            raise ValueError("subsample_factor must be >= 1")
        if not 1 <= self.k_prime <= self.k <= min(self.height, self.width):
            raise ValueError(
                f"need 1 <= k_prime <= k <= min(h, w); got k={self.k}, "
                f"k_prime={self.k_prime}, image {self.height}x{self.width}"
            )
        if len(self.planes) != 3:
            raise ValueError("expected exactly three planes")
        for plane, (rows, cols) in zip(self.planes, self.plane_shapes()):
            if (plane.original_rows, plane.original_cols) != (rows, cols):
                raise ValueError(
                    f"plane dims {plane.original_rows}x{plane.original_cols} "
                    f"do not match expected {rows}x{cols}"
                )

    def plane_shapes(self):
        """Stored (rows, cols) of the three planes, derived from the header."""
        return plane_shapes(self.width, self.height, self.scheme, self.subsample_factor)


def plane_shapes(width, height, scheme, subsample_factor):
    """Stored (rows, cols) of the three planes for the given header fields."""
    full = (height, width)
    if scheme == SCHEME_RGB:
        return (full, full, full)
    chroma = subsampled_shape(full, subsample_factor)
    return (full, chroma, chroma)


def coefficient_count(c):
    """Stored coefficients: sum over planes of k*(rows + cols + 1)."""
    return sum(
        p.k * (p.original_rows + p.original_cols + 1) for p in c.planes
    )


def coefficient_ratio(c):
    """Raw sample count 3*m*n over stored coefficient count."""
    return (3 * c.height * c.width) / coefficient_count(c)


def _warn_if_uncompressive(k, height, width):
    threshold = k_seuil(height, width)
    if k >= threshold:
        warnings.warn(
            f"k={k} is at or above k_seuil={threshold:.2f} for "
            f"{height}x{width}: per-plane storage exceeds the raw plane",
            RankThresholdWarning,
            stacklevel=3,
        )


def compress(img, k, k_prime, subsample_factor=2):
    """Encode: YCbCr conversion, chroma downsampling, per-plane SVD truncated
    at rank k (luma) and k_prime (chroma).

    k_prime is silently capped at the subsampled chroma planes' full rank, so
    k = k_prime = min(h, w) stays a valid lossless-luma configuration.
    """
    height, width = img.height, img.width
    if not 1 <= k <= min(height, width):
        raise ValueError(f"k must be in [1, {min(height, width)}], got {k}")
    if not 1 <= k_prime <= k:
        raise ValueError(f"need 1 <= k_prime <= k, got k_prime={k_prime}, k={k}")
    _warn_if_uncompressive(k, height, width)

    y, cb, cr = rgb_to_ycbcr(img)
    ycc = YcbcrImage(
        y=y,
        cb=downsample(cb, subsample_factor),
        cr=downsample(cr, subsample_factor),
        subsample_factor=subsample_factor,
    )
    k_chroma = min(k_prime, min(ycc.cb.shape))

    planes = (
        truncate(svd(ycc.y), k),
        truncate(svd(ycc.cb), k_chroma),
        truncate(svd(ycc.cr), k_chroma),
    )
    return CompressedImage(
        width=width,
        height=height,
        scheme=SCHEME_YCBCR,
        k=k,
        k_prime=k_chroma,
        subsample_factor=subsample_factor,
        planes=planes,
    )


def compress_rgb_baseline(img, k):
    """Uniform-rank baseline: SVD-k independently on full-resolution R, G, B."""
    height, width = img.height, img.width
    if not 1 <= k <= min(height, width):
        raise ValueError(f"k must be in [1, {min(height, width)}], got {k}")
    _warn_if_uncompressive(k, height, width)

    planes = tuple(
        truncate(svd(plane.astype(np.float64)), k)
        for plane in (img.r, img.g, img.b)
    )
    return CompressedImage(
        width=width,
        height=height,
        scheme=SCHEME_RGB,
        k=k,
        k_prime=k,
        subsample_factor=1,
        planes=planes,
    )


def _clamped(plane):
    return np.clip(plane, 0.0, 255.0)


def decompress(c):
    """Decode: reconstruct planes, clamp, upsample chroma, convert to RGB."""
    if c.scheme == SCHEME_RGB:
        restored = [np.floor(_clamped(reconstruct(p)) + 0.5) for p in c.planes]
        return RgbImage(r=restored[0], g=restored[1], b=restored[2])

    y = _clamped(reconstruct(c.planes[0]))
    s = c.subsample_factor
    cb = upsample(_clamped(reconstruct(c.planes[1])), c.height, c.width, s)
    cr = upsample(_clamped(reconstruct(c.planes[2])), c.height, c.width, s)
    return ycbcr_to_rgb(y, cb, cr)


def k_prime_for(k, v):
    """Chroma rank ceil(k / v) for a divisor v; the ceiling keeps it >= 1."""
    if v < 1:
        raise ValueError("v must be >= 1")
    return math.ceil(k / v)
