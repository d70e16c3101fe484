"""svdc: lossy color-image compression by truncated SVD with luma/chroma
rank separation and 2x2 chroma subsampling."""

from .codec import (
    SCHEME_RGB,
    SCHEME_YCBCR,
    CompressedImage,
    RankThresholdWarning,
    compress,
    compress_rgb_baseline,
    decompress,
)
from .colorspace import RgbImage, YcbcrImage
from .container import deserialize, read_svdc, serialize, write_svdc
from .linalg import (
    SvdConvergenceError,
    SvdFactorization,
    TruncatedPlane,
    frobenius_energy,
    reconstruct,
    svd,
    truncate,
)
from .metrics import (
    QualityReport,
    TimingResolutionError,
    energy_ratio,
    eqm,
    k_seuil,
    psnr,
    ratio_rgb,
    ratio_ycbcr,
    speed_ratio,
)

__version__ = "0.1.0"

__all__ = [
    "CompressedImage",
    "QualityReport",
    "RankThresholdWarning",
    "RgbImage",
    "SCHEME_RGB",
    "SCHEME_YCBCR",
    "SvdConvergenceError",
    "SvdFactorization",
    "TimingResolutionError",
    "TruncatedPlane",
    "YcbcrImage",
    "compress",
    "compress_rgb_baseline",
    "decompress",
    "deserialize",
    "energy_ratio",
    "eqm",
    "frobenius_energy",
    "k_seuil",
    "psnr",
    "ratio_rgb",
    "ratio_ycbcr",
    "read_svdc",
    "reconstruct",
    "serialize",
    "speed_ratio",
    "svd",
    "truncate",
    "write_svdc",
]
