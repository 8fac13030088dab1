"""On-disk index format.

Layout (all integers little-endian):

    header   "DRIX"  u16 version  u64 n  u64 r
    s1       u64 count, then one byte per run head
    s2       u64 count, then u64 run lengths in text order
    s3       u64 count, then u64 run lengths in (head, run) order
    s4       u64 count, then u64 head gaps (r + 1 entries)
    sa_s     u64 count, then u64 values
    sa_e     u64 count, then u64 values
    crc      u32 CRC32 of every preceding byte

Files are replaced atomically: the new image is written to a temporary file
in the target directory and renamed over the old one.
"""

import logging
import os
import struct
import tempfile
import zlib
from pathlib import Path

from src.index.r_index import DynamicRIndex
from src.index.rlbwt import Run
from src.structures.block_tree import DEFAULT_FANOUT
from src.utils.errors import ChecksumError, DrIndexError, IndexFormatError

logger = logging.getLogger(__name__)

MAGIC = b"DRIX"
FORMAT_VERSION = 1
HEADER = struct.Struct("<4sHQQ")
COUNT = struct.Struct("<Q")
CRC = struct.Struct("<I")


def _pack_values(values: list[int]) -> bytes:
    return COUNT.pack(len(values)) + struct.pack(f"<{len(values)}Q", *values)


def encode_index(index: DynamicRIndex) -> bytes:
    """Serialize index to the file image, checksum included."""
    rlbwt = index.rlbwt
    heads = bytes(rlbwt.s1)
    parts = [
        HEADER.pack(MAGIC, FORMAT_VERSION, index.n, index.r),
        COUNT.pack(len(heads)) + heads,
        _pack_values(list(rlbwt.s2)),
        _pack_values(list(rlbwt.s3)),
        _pack_values(list(rlbwt.s4)),
        _pack_values(index.sa_s.values()),
        _pack_values(index.sa_e.values()),
    ]
    payload = b"".join(parts)
    return payload + CRC.pack(zlib.crc32(payload))


class _Reader:
    """Bounds-checked cursor over a file image."""

    def __init__(self, data: bytes):
        self.data = data
        self.offset = 0

    def take(self, size: int) -> bytes:
        if self.offset + size > len(self.data):
            raise IndexFormatError(f"index file truncated at byte {self.offset}")
        chunk = self.data[self.offset : self.offset + size]
        self.offset += size
        return chunk

    def values(self, name: str, expected: int) -> list[int]:
        (count,) = COUNT.unpack(self.take(COUNT.size))
        if count != expected:
            raise IndexFormatError(f"{name} has {count} entries, expected {expected}")
        return list(struct.unpack(f"<{count}Q", self.take(8 * count)))


def decode_index(data: bytes, fanout: int = DEFAULT_FANOUT) -> DynamicRIndex:
    """Rebuild an index from a file image.

    Raises:
        ChecksumError: If the CRC32 does not match
        IndexFormatError: If the image is malformed or inconsistent
    """
    if len(data) < HEADER.size + CRC.size:
        raise IndexFormatError(f"index file too short ({len(data)} bytes)")
    payload, trailer = data[: -CRC.size], data[-CRC.size :]
    (stored,) = CRC.unpack(trailer)
    actual = zlib.crc32(payload)
    if stored != actual:
        raise ChecksumError(f"checksum mismatch: stored {stored:08x}, computed {actual:08x}")

    reader = _Reader(payload)
    magic, version, n, r = HEADER.unpack(reader.take(HEADER.size))
    if magic != MAGIC:
        raise IndexFormatError(f"not a drindex file (magic {magic!r})")
    if version != FORMAT_VERSION:
        raise IndexFormatError(f"unsupported format version {version}")

    (head_count,) = COUNT.unpack(reader.take(COUNT.size))
    if head_count != r:
        raise IndexFormatError(f"s1 has {head_count} entries, expected {r}")
    heads = reader.take(r)
    lengths = reader.values("s2", r)
    sorted_lengths = reader.values("s3", r)
    gaps = reader.values("s4", r + 1)
    sa_s = reader.values("sa_s", r)
    sa_e = reader.values("sa_e", r)
    if reader.offset != len(payload):
        raise IndexFormatError(f"{len(payload) - reader.offset} trailing bytes after sa_e")

    try:
        index = DynamicRIndex.from_components(
            [Run(ch, length) for ch, length in zip(heads, lengths, strict=True)],
            sa_s,
            sa_e,
            fanout=fanout,
        )
        index.check_invariants()
    except DrIndexError as e:
        raise IndexFormatError(f"index file is inconsistent: {e}") from e
    if index.n != n:
        raise IndexFormatError(f"header says n={n}, runs add up to {index.n}")
    if list(index.rlbwt.s3) != sorted_lengths or list(index.rlbwt.s4) != gaps:
        raise IndexFormatError("s3/s4 disagree with the run list")
    return index


def write_index(index: DynamicRIndex, path: Path | str) -> int:
    """Atomically write index to path. Returns the number of bytes written."""
    target = Path(path)
    image = encode_index(index)
    target.parent.mkdir(parents=True, exist_ok=True)
    with tempfile.NamedTemporaryFile(
        dir=target.parent, prefix=f".{target.name}.", suffix=".tmp", delete=False
    ) as tmp:
        tmp.write(image)
        tmp.flush()
        os.fsync(tmp.fileno())
        tmp_path = Path(tmp.name)
    try:
        os.replace(tmp_path, target)
    except OSError:
        tmp_path.unlink(missing_ok=True)
        raise
    logger.debug(f"Wrote {len(image)} bytes to {target}")
    return len(image)


def read_index(path: Path | str, fanout: int = DEFAULT_FANOUT) -> DynamicRIndex:
    """Load an index file written by write_index."""
    data = Path(path).read_bytes()
    index = decode_index(data, fanout=fanout)
    logger.debug(f"Read {path}: n={index.n}, r={index.r}")
    return index
