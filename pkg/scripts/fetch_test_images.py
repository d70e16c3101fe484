#!/usr/bin/env python3
"""Fetch the standard 512x512 test images (lena, mandrill, plane) into
testdata/standard/ as PPM, for the paper-anchored acceptance checks.

Best effort: needs network access and Pillow (for TIFF decoding). When the
images cannot be fetched, the test suite falls back to the synthetic
stand-ins automatically.
"""

import io
import sys
import urllib.request
from pathlib import Path

SOURCES = {
    # USC-SIPI misc volume identifiers
    "lena": "https://sipi.usc.edu/database/download.php?vol=misc&img=4.2.04",
    "mandrill": "https://sipi.usc.edu/database/download.php?vol=misc&img=4.2.03",
    "plane": "https://sipi.usc.edu/database/download.php?vol=misc&img=4.2.05",
}


def fetch(name, url, out_dir):
    target = out_dir / f"{name}.ppm"
    if target.exists():
        print(f"{name}: already present")
        return True
    try:
        with urllib.request.urlopen(url, timeout=30) as response:
            payload = response.read()
    except OSError as exc:
        print(f"{name}: download failed ({exc})")
        return False
    try:
        from PIL import Image
    except ImportError:
        print(f"{name}: Pillow is required to convert the download (pip install Pillow)")
        return False
    try:
        with Image.open(io.BytesIO(payload)) as im:
            rgb = im.convert("RGB")
            if rgb.size != (512, 512):
                rgb = rgb.resize((512, 512))
            rgb.save(target, format="PPM")
    except OSError as exc:
        print(f"{name}: conversion failed ({exc})")
        return False
    print(f"{name}: wrote {target}")
    return True


def main():
    out_dir = Path(__file__).resolve().parent.parent / "testdata" / "standard"
    out_dir.mkdir(parents=True, exist_ok=True)
    results = [fetch(name, url, out_dir) for name, url in SOURCES.items()]
    if not all(results):
        print("some images missing; the suite will use the synthetic stand-ins")
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
