"""RGB <-> YCbCr conversion (BT.601 full range, the JPEG/JFIF convention)
and box-average chroma downsampling with nearest-neighbor upsampling."""

import math
from dataclasses import dataclass

import numpy as np

# Forward matrix rows: Y, Cb, Cr coefficients for (R, G, B).
_FORWARD = np.array(
    [
        [0.299, 0.587, 0.114],
        [-0.168736, -0.331264, 0.5],
        [0.5, -0.418688, -0.081312],
    ]
)
_OFFSET = np.array([0.0, 128.0, 128.0])
_INVERSE = np.linalg.inv(_FORWARD)


@dataclass
class RgbImage:
    """8-bit RGB raster held as three equally sized planes."""

    r: np.ndarray
    g: np.ndarray
    b: np.ndarray

    def __post_init__(self):
        planes = []
        for name, plane in (("r", self.r), ("g", self.g), ("b", self.b)):
            arr = np.asarray(plane)
            if arr.ndim != 2:
                raise ValueError(f"plane {name} must be 2-D, got ndim={arr.ndim}")
            if arr.size == 0:
                raise ValueError(f"plane {name} is empty")
            if arr.dtype != np.uint8:  # uint8 is in range and integral by type
                values = np.asarray(arr, dtype=np.float64)
                if not np.isfinite(values).all():
                    raise ValueError(f"plane {name} has non-finite entries")
                if (values < 0).any() or (values > 255).any():
                    raise ValueError(f"plane {name} entries must lie in [0, 255]")
                if not np.array_equal(values, np.floor(values)):
                    raise ValueError(f"plane {name} entries must be integers")
                arr = values.astype(np.uint8)
            planes.append(arr)
        if planes[0].shape != planes[1].shape or planes[0].shape != planes[2].shape:
            raise ValueError("r, g, b planes must share one shape")
        self.r, self.g, self.b = planes

    @property
    def height(self):
        return self.r.shape[0]

    @property
    def width(self):
        return self.r.shape[1]

    @classmethod
    def from_array(cls, arr):
        """Build from an (height, width, 3) array."""
        arr = np.asarray(arr)
        if arr.ndim != 3 or arr.shape[2] != 3:
            raise ValueError(f"expected shape (h, w, 3), got {arr.shape}")
        return cls(r=arr[:, :, 0], g=arr[:, :, 1], b=arr[:, :, 2])

    def to_array(self):
        return np.stack([self.r, self.g, self.b], axis=2)


@dataclass
class YcbcrImage:
    """Full-resolution luma plus two chroma planes subsampled by *subsample_factor*."""

    y: np.ndarray
    cb: np.ndarray
    cr: np.ndarray
    subsample_factor: int = 2

    def __post_init__(self):
        if self.subsample_factor < 1:
            raise ValueError("subsample_factor must be >= 1")
        if self.cb.shape != self.cr.shape:
            raise ValueError("cb and cr must share one shape")
        expected = subsampled_shape(self.y.shape, self.subsample_factor)
        if self.cb.shape != expected:
            raise ValueError(
                f"chroma shape {self.cb.shape} does not match luma "
                f"{self.y.shape} at factor {self.subsample_factor}"
            )


def subsampled_shape(shape, s):
    return (math.ceil(shape[0] / s), math.ceil(shape[1] / s))


def rgb_to_ycbcr(img):
    """Convert to full-resolution (y, cb, cr) float planes, clamped to [0, 255]."""
    rgb = np.stack(
        [
            img.r.astype(np.float64),
            img.g.astype(np.float64),
            img.b.astype(np.float64),
        ],
        axis=-1,
    )
    ycc = rgb @ _FORWARD.T + _OFFSET
    np.clip(ycc, 0.0, 255.0, out=ycc)
    return ycc[:, :, 0], ycc[:, :, 1], ycc[:, :, 2]


def ycbcr_to_rgb(y, cb, cr):
    """Exact inverse of the forward transform, clamped and rounded half-up."""
    if y.shape != cb.shape or y.shape != cr.shape:
        raise ValueError("y, cb, cr must share one shape")
    ycc = np.stack([y, cb, cr], axis=-1) - _OFFSET
    rgb = ycc @ _INVERSE.T
    np.clip(rgb, 0.0, 255.0, out=rgb)
    rgb = np.floor(rgb + 0.5)  # round half-up; np.round would go half-to-even
    return RgbImage(r=rgb[:, :, 0], g=rgb[:, :, 1], b=rgb[:, :, 2])


def downsample(plane, s):
    """Mean over s x s blocks; ragged edge blocks average the pixels present."""
    if s < 1:
        raise ValueError("subsample factor must be >= 1")
    plane = np.asarray(plane, dtype=np.float64)
    if s == 1:
        return plane.copy()
    rows, cols = plane.shape
    row_starts = np.arange(0, rows, s)
    col_starts = np.arange(0, cols, s)
    sums = np.add.reduceat(np.add.reduceat(plane, row_starts, axis=0), col_starts, axis=1)
    row_counts = np.minimum(row_starts + s, rows) - row_starts
    col_counts = np.minimum(col_starts + s, cols) - col_starts
    return sums / np.outer(row_counts, col_counts)


def upsample(plane, target_rows, target_cols, s):
    """Nearest-neighbor replication: output(i, j) = plane(i // s, j // s)."""
    if s < 1:
        raise ValueError("subsample factor must be >= 1")
    plane = np.asarray(plane, dtype=np.float64)
    expected = subsampled_shape((target_rows, target_cols), s)
    if plane.shape != expected:
        raise ValueError(
            f"plane shape {plane.shape} does not cover {target_rows}x{target_cols} "
            f"at factor {s} (expected {expected})"
        )
    return np.repeat(np.repeat(plane, s, axis=0), s, axis=1)[:target_rows, :target_cols]
