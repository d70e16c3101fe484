"""Quality and rate measures: EQM, PSNR, energy ratio, coefficient-count
compression ratios, the rank break-even threshold, and the encode speed ratio."""

import math
import statistics
import time
from dataclasses import dataclass

import numpy as np


class TimingResolutionError(RuntimeError):
    """Encode times are too close to the clock tick to be trustworthy."""


@dataclass
class QualityReport:
    """One measured configuration; psnr_db is math.inf when images are identical."""

    psnr_db: float
    eqm: float
    energy_ratio: float
    ratio_g: float
    k: int
    k_prime: int
    scheme: str


def quality_report(original, restored, compressed, peak="image-max"):
    """Measure *restored* against *original* for one compressed configuration."""
    from . import codec

    return QualityReport(
        psnr_db=psnr(original, restored, peak=peak),
        eqm=eqm(original, restored),
        energy_ratio=energy_ratio(original, restored),
        ratio_g=codec.coefficient_ratio(compressed),
        k=compressed.k,
        k_prime=compressed.k_prime,
        scheme=compressed.scheme,
    )


def _paired_float_planes(original, restored):
    if (original.height, original.width) != (restored.height, restored.width):
        raise ValueError(
            f"dimension mismatch: {original.height}x{original.width} vs "
            f"{restored.height}x{restored.width}"
        )
    a = original.to_array().astype(np.float64)
    b = restored.to_array().astype(np.float64)
    return a, b


def eqm(original, restored):
    """Mean squared error pooled over all 3*m*n channel samples."""
    a, b = _paired_float_planes(original, restored)
    diff = a - b
    return float(np.mean(diff * diff))


def psnr(original, restored, peak="image-max"):
    """10*log10(peak^2 / EQM) in dB; math.inf marks identical images.

    peak is the original image's maximum sample by default; pass peak=255
    for fixed-peak values comparable across tools.
    """
    if peak == "image-max":
        peak_value = float(original.to_array().max())
    elif peak == 255 or peak == "255":
        peak_value = 255.0
    else:
        raise ValueError(f"peak must be 'image-max' or 255, got {peak!r}")
    err = eqm(original, restored)
    if err == 0.0:
        return math.inf
    if peak_value == 0.0:
        return -math.inf  # degenerate all-black original
    return 10.0 * math.log10(peak_value * peak_value / err)


def energy_ratio(original, restored):
    """Sum of squared restored samples over sum of squared original samples."""
    a, b = _paired_float_planes(original, restored)
    denom = float(np.sum(a * a))
    if denom == 0.0:
        raise ValueError("energy ratio undefined for an all-zero original")
    return float(np.sum(b * b)) / denom


def ratio_rgb(m, n, k):
    """Per-plane coefficient ratio (m*n) / (k*(m+n+1)) of uniform-rank coding.

    Equals the whole-image ratio for the RGB scheme since all planes share k.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    return (m * n) / (k * (m + n + 1))


def ratio_ycbcr(m, n, k, k_prime):
    """Dual-rank coefficient ratio (3*m*n) / (k*(m+n+1) + k'*(m+n+2))."""
    if k < 1:
        raise ValueError("k must be >= 1")
    if not 0 <= k_prime <= k:
        raise ValueError(f"need 0 <= k_prime <= k, got k_prime={k_prime}, k={k}")
    return (3 * m * n) / (k * (m + n + 1) + k_prime * (m + n + 2))


def k_seuil(m, n):
    """Rank threshold (m*n)/(m+n+1); at or above it SVD-k stops compressing."""
    if m < 1 or n < 1:
        raise ValueError("dimensions must be >= 1")
    return (m * n) / (m + n + 1)


def _median_encode_seconds(fn, trials):
    times = []
    for _ in range(trials):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return statistics.median(times)


def speed_ratio(img, k, k_prime, trials=5, subsample_factor=2):
    """Median baseline encode time over median dual-rank encode time.

    Both encodes run on a single stream (no concurrent SVDs), one warm-up
    each, then *trials* timed runs. Raises TimingResolutionError when either
    median is under 1 ms.
    """
    from . import codec  # local import: codec depends on this module's k_seuil

    if trials < 3:
        raise ValueError(f"trials must be >= 3, got {trials}")

    def run_baseline():
        codec.compress_rgb_baseline(img, k)

    def run_proposed():
        codec.compress(img, k, k_prime, subsample_factor=subsample_factor)

    run_baseline()
    run_proposed()
    baseline = _median_encode_seconds(run_baseline, trials)
    proposed = _median_encode_seconds(run_proposed, trials)
    if min(baseline, proposed) < 1e-3:
        raise TimingResolutionError(
            f"median encode times {baseline * 1e3:.3f} ms / {proposed * 1e3:.3f} ms "
            "are below the 1 ms reliability floor"
        )
    return baseline / proposed
