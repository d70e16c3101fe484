"""Rate/distortion sweep harness: run the codec over a (k, v) grid and emit
deterministic CSV rows, the data behind the PSNR/ratio/energy curves."""

import math
import time
import warnings
from dataclasses import dataclass
from pathlib import Path

from . import codec, metrics
from .ppm import load_image

SCHEME_LABELS = ("ycbcr", "rgb-baseline")

CSV_COLUMNS = (
    "image",
    "scheme",
    "k",
    "v",
    "k_prime",
    "ratio_g",
    "psnr_db",
    "eqm",
    "energy_ratio",
    "encode_ms",
    "note",
)

DEFAULT_K_VALUES = (10, 20, 40, 80)
DEFAULT_V_VALUES = (1, 2, 4, 8, 16)


@dataclass
class SweepSpec:
    images: tuple
    k_values: tuple = DEFAULT_K_VALUES
    v_values: tuple = DEFAULT_V_VALUES
    schemes: tuple = ("ycbcr",)
    trials: int = 1
    subsample_factor: int = 2
    peak: str = "image-max"

    def __post_init__(self):
        unknown = set(self.schemes) - set(SCHEME_LABELS)
        if unknown:
            raise ValueError(f"unknown schemes {sorted(unknown)}")
        if self.trials < 1:
            raise ValueError("trials must be >= 1")


@dataclass
class SweepRow:
    image: str
    scheme: str = ""
    k: object = ""
    v: object = ""
    k_prime: object = ""
    ratio_g: object = ""
    psnr_db: object = ""
    eqm: object = ""
    energy_ratio: object = ""
    encode_ms: object = ""
    note: str = ""

    @property
    def failed(self):
        return self.note.startswith("error:")


def _fmt(value, spec):
    if value == "":
        return ""
    if isinstance(value, float) and math.isinf(value):
        return "inf" if value > 0 else "-inf"
    return format(value, spec)


def format_csv(rows, include_timing=True):
    """Render rows as CSV text; identical inputs give identical text except
    for the encode_ms column (drop it with include_timing=False)."""
    columns = CSV_COLUMNS if include_timing else tuple(
        c for c in CSV_COLUMNS if c != "encode_ms"
    )
    lines = [",".join(columns)]
    for row in rows:
        cells = {
            "image": row.image,
            "scheme": row.scheme,
            "k": _fmt(row.k, "d"),
            "v": _fmt(row.v, "d"),
            "k_prime": _fmt(row.k_prime, "d"),
            "ratio_g": _fmt(row.ratio_g, ".6f"),
            "psnr_db": _fmt(row.psnr_db, ".6f"),
            "eqm": _fmt(row.eqm, ".6f"),
            "energy_ratio": _fmt(row.energy_ratio, ".8f"),
            "encode_ms": _fmt(row.encode_ms, ".3f"),
            "note": row.note.replace(",", ";"),
        }
        lines.append(",".join(cells[c] for c in columns))
    return "\n".join(lines) + "\n"


def write_csv(path, rows):
    Path(path).write_text(format_csv(rows), encoding="ascii", newline="\n")


def _timed_encode(encode, trials):
    times = []
    result = None
    for _ in range(trials):
        t0 = time.perf_counter()
        result = encode()
        times.append((time.perf_counter() - t0) * 1e3)
    times.sort()
    return result, times[len(times) // 2]


def _run_cell(img, name, scheme, k, v, spec):
    row = SweepRow(image=name, scheme=scheme, k=k, v=v)
    if scheme == "rgb-baseline":
        k_prime = k
        encode = lambda: codec.compress_rgb_baseline(img, k)
    else:
        k_prime = codec.k_prime_for(k, v)
        encode = lambda: codec.compress(
            img, k, k_prime, subsample_factor=spec.subsample_factor
        )
    try:
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always", codec.RankThresholdWarning)
            compressed, encode_ms = _timed_encode(encode, spec.trials)
            restored = codec.decompress(compressed)
        report = metrics.quality_report(img, restored, compressed, peak=spec.peak)
        row.k_prime = report.k_prime
        row.ratio_g = report.ratio_g
        row.psnr_db = report.psnr_db
        row.eqm = report.eqm
        row.energy_ratio = report.energy_ratio
        row.encode_ms = encode_ms
        if caught:
            row.note = f"warning: {caught[0].message}"
    except Exception as exc:
        row.note = f"error: {exc}"
    return row


def run_sweep(spec):
    """One row per (image, scheme, k, v) cell; failures become error rows."""
    rows = []
    for image_path in spec.images:
        name = Path(image_path).stem
        try:
            img = load_image(image_path)
        except Exception as exc:
            rows.append(SweepRow(image=name, note=f"error: {exc}"))
            continue
        for scheme in spec.schemes:
            for k in spec.k_values:
                if scheme == "rgb-baseline":
                    # v does not parameterize the baseline; emit one cell
                    rows.append(_run_cell(img, name, scheme, k, 1, spec))
                    continue
                for v in spec.v_values:
                    rows.append(_run_cell(img, name, scheme, k, v, spec))
    return rows
