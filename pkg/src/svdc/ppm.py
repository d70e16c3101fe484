"""Binary PPM (P6, 8-bit) reader and writer, plus extension-based dispatch
to Pillow for other raster formats when Pillow is installed."""

from pathlib import Path

import numpy as np

from .colorspace import RgbImage


class PpmError(ValueError):
    pass


def _next_token(data, pos):
    """Skip whitespace and '#' comments, return (token_bytes, new_pos)."""
    n = len(data)
    while pos < n:
        byte = data[pos]
        if byte in b" \t\r\n\x0b\x0c":
            pos += 1
        elif byte in b"#":
            while pos < n and data[pos] not in b"\n":
                pos += 1
        else:
            break
    start = pos
    while pos < n and data[pos] not in b" \t\r\n\x0b\x0c":
        pos += 1
    if start == pos:
        raise PpmError("unexpected end of header")
    return data[start:pos], pos


def parse_ppm(data):
    """Decode P6 bytes into an RgbImage."""
    magic, pos = _next_token(data, 0)
    if magic != b"P6":
        raise PpmError(f"not a binary PPM (magic {magic!r}, expected b'P6')")
    fields = []
    for name in ("width", "height", "maxval"):
        token, pos = _next_token(data, pos)
        try:
            value = int(token)
        except ValueError:
            raise PpmError(f"invalid {name} field {token!r}") from None
        if value <= 0:
            raise PpmError(f"{name} must be positive, got {value}")
        fields.append(value)
    width, height, maxval = fields
    if maxval != 255:
        raise PpmError(f"unsupported maxval {maxval}; only 8-bit (255) PPM is handled")
    if pos >= len(data) or data[pos] not in b" \t\r\n":
        raise PpmError("missing whitespace between header and raster")
    pos += 1  # exactly one whitespace byte separates header and raster
    expected = width * height * 3
    raster = data[pos:pos + expected]
    if len(raster) != expected:
        raise PpmError(
            f"raster truncated: wanted {expected} bytes, have {len(raster)}"
        )
    pixels = np.frombuffer(raster, dtype=np.uint8).reshape((height, width, 3))
    return RgbImage.from_array(pixels)


def encode_ppm(img):
    """Encode an RgbImage as P6 bytes."""
    header = f"P6\n{img.width} {img.height}\n255\n".encode("ascii")
    return header + img.to_array().tobytes()


def read_ppm(path):
    return parse_ppm(Path(path).read_bytes())


def write_ppm(path, img):
    Path(path).write_bytes(encode_ppm(img))


def load_image(path):
    """Read an RGB raster; PPM natively, anything else through Pillow."""
    path = Path(path)
    if path.suffix.lower() in (".ppm", ".pnm"):
        return read_ppm(path)
    try:
        from PIL import Image
    except ImportError:
        raise PpmError(
            f"cannot read {path.name}: only PPM is supported unless Pillow "
            "is installed (pip install svdc[png])"
        ) from None
    with Image.open(path) as im:
        return RgbImage.from_array(np.asarray(im.convert("RGB")))


def save_image(path, img):
    """Write an RGB raster; PPM natively, anything else through Pillow."""
    path = Path(path)
    if path.suffix.lower() in (".ppm", ".pnm"):
        write_ppm(path, img)
        return
    try:
        from PIL import Image
    except ImportError:
        raise PpmError(
            f"cannot write {path.name}: only PPM is supported unless Pillow "
            "is installed (pip install svdc[png])"
        ) from None
    Image.fromarray(img.to_array(), mode="RGB").save(path)
