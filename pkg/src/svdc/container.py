"""The .svdc binary container: a fixed 22-byte header followed by three
truncated planes as 32-bit little-endian floats. See FORMAT.md."""

import struct
from dataclasses import dataclass

import numpy as np

from .codec import SCHEME_RGB, SCHEME_YCBCR, CompressedImage, plane_shapes
from .linalg import TruncatedPlane

MAGIC = b"SVDC"
VERSION = 1

_SCHEME_CODES = {SCHEME_YCBCR: 0, SCHEME_RGB: 1}
_SCHEME_NAMES = {code: name for name, code in _SCHEME_CODES.items()}

_HEADER = struct.Struct("<4sBBIIHHB3s")
HEADER_SIZE = _HEADER.size  # 22
_RANK_PREFIX = struct.Struct("<H")


class ContainerError(ValueError):
    """Base class for malformed .svdc data."""


class BadMagicError(ContainerError):
    pass


class UnsupportedVersionError(ContainerError):
    pass


class StructureError(ContainerError):
    """Rank or dimension fields are mutually inconsistent."""


class TruncatedStreamError(ContainerError):
    pass


@dataclass(frozen=True)
class ContainerHeader:
    magic: bytes
    version: int
    scheme_code: int
    width: int
    height: int
    k: int
    k_prime: int
    subsample_factor: int


def serialized_size(width, height, scheme, k, k_prime, subsample_factor):
    """Byte length of a container; a pure function of the header fields."""
    shapes = plane_shapes(width, height, scheme, subsample_factor)
    ranks = (k, k, k) if scheme == SCHEME_RGB else (k, k_prime, k_prime)
    size = HEADER_SIZE
    for rank, (rows, cols) in zip(ranks, shapes):
        size += _RANK_PREFIX.size + 4 * rank * (rows + cols + 1)
    return size


def serialize(c):
    """Encode a CompressedImage; factors are narrowed to 32-bit floats."""
    for rank in (c.k, c.k_prime):
        if rank > 0xFFFF:
            raise ValueError(f"rank {rank} exceeds the 16-bit header field")
    parts = [
        _HEADER.pack(
            MAGIC,
            VERSION,
            _SCHEME_CODES[c.scheme],
            c.width,
            c.height,
            c.k,
            c.k_prime,
            c.subsample_factor,
            b"\x00\x00\x00",
        )
    ]
    for plane in c.planes:
        parts.append(_RANK_PREFIX.pack(plane.k))
        parts.append(plane.sigma_k.astype("<f4").tobytes())
        parts.append(plane.u_k.astype("<f4").tobytes(order="F"))
        parts.append(plane.v_k.astype("<f4").tobytes(order="F"))
    return b"".join(parts)


class _Reader:
    def __init__(self, data):
        self.data = data
        self.pos = 0

    def take(self, count, what):
        end = self.pos + count
        if end > len(self.data):
            raise TruncatedStreamError(
                f"short read: wanted {count} bytes for {what}, "
                f"have {len(self.data) - self.pos}"
            )
        chunk = self.data[self.pos:end]
        self.pos = end
        return chunk

    def take_floats(self, count, what):
        raw = self.take(4 * count, what)
        return np.frombuffer(raw, dtype="<f4").astype(np.float64)


def _read_plane(reader, expected_rank, rows, cols, label):
    (rank,) = _RANK_PREFIX.unpack(reader.take(_RANK_PREFIX.size, f"{label} rank"))
    if rank != expected_rank:
        raise StructureError(
            f"{label} plane stores rank {rank}, header implies {expected_rank}"
        )
    sigma = reader.take_floats(rank, f"{label} singular values")
    u = reader.take_floats(rows * rank, f"{label} left factor")
    v = reader.take_floats(cols * rank, f"{label} right factor")
    return TruncatedPlane(
        original_rows=rows,
        original_cols=cols,
        k=rank,
        u_k=u.reshape((rows, rank), order="F"),
        sigma_k=sigma,
        v_k=v.reshape((cols, rank), order="F"),
    )


def deserialize(data):
    """Decode bytes into a CompressedImage, widening factors to 64-bit.

    Raises BadMagicError, UnsupportedVersionError, StructureError, or
    TruncatedStreamError depending on what is wrong.
    """
    reader = _Reader(data)
    fields = _HEADER.unpack(reader.take(HEADER_SIZE, "header"))
    magic, version, scheme_code, width, height, k, k_prime, subsample, reserved = fields
    if magic != MAGIC:
        raise BadMagicError(f"bad magic {magic!r}, expected {MAGIC!r}")
    if version != VERSION:
        raise UnsupportedVersionError(f"unsupported version {version}")
    if scheme_code not in _SCHEME_NAMES:
        raise StructureError(f"unknown scheme code {scheme_code}")
    if reserved != b"\x00\x00\x00":
        raise StructureError("reserved header bytes must be zero")
    if width < 1 or height < 1:
        raise StructureError("image dimensions must be positive")
    if subsample < 1:
        raise StructureError("subsample factor must be positive")
    scheme = _SCHEME_NAMES[scheme_code]
    if not 1 <= k_prime <= k <= min(height, width):
        raise StructureError(
            f"need 1 <= k_prime <= k <= min(h, w); got k={k}, k_prime={k_prime}, "
            f"image {height}x{width}"
        )

    shapes = plane_shapes(width, height, scheme, subsample)
    if scheme == SCHEME_RGB:
        ranks_labels = ((k, "R"), (k, "G"), (k, "B"))
    else:
        ranks_labels = ((k, "Y"), (k_prime, "Cb"), (k_prime, "Cr"))
    planes = []
    for (rank, label), (rows, cols) in zip(ranks_labels, shapes):
        if rank > min(rows, cols):
            raise StructureError(
                f"{label} plane rank {rank} exceeds its {rows}x{cols} dimensions"
            )
        planes.append(_read_plane(reader, rank, rows, cols, label))
    if reader.pos != len(data):
        raise StructureError(f"{len(data) - reader.pos} trailing bytes after planes")

    return CompressedImage(
        width=width,
        height=height,
        scheme=scheme,
        k=k,
        k_prime=k_prime,
        subsample_factor=subsample,
        planes=tuple(planes),
    )


def write_svdc(path, c):
    with open(path, "wb") as fh:
        fh.write(serialize(c))


def read_svdc(path):
    with open(path, "rb") as fh:
        return deserialize(fh.read())
