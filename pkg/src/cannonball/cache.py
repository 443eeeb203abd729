"""Binary cache of (n, a_n) pairs.

Layout: the 8 magic bytes ``PYRSEQ1\\n``, a little-endian uint64 record
count, then per record two little-endian uint64 fields n and a_n.
"""
from __future__ import annotations

import struct

import numpy as np

MAGIC = b"PYRSEQ1\n"
HEADER = len(MAGIC) + 8
RECORD = 16
MAX_N = 2**42


class CacheFormatError(ValueError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (byte offset {offset})")
        self.offset = offset


def cache_write(path, records) -> int:
    """Write (n, a_n) pairs (or SequenceRecord objects); return the count."""
    pairs = []
    for i, rec in enumerate(records):
        n, a = (rec.n, rec.a) if hasattr(rec, "a") else rec
        n, a = int(n), int(a)
        offset = HEADER + i * RECORD
        if not 0 <= n < MAX_N:
            raise CacheFormatError(f"record {i}: n={n} outside [0, 2^42)", offset)
        if not 0 <= a < 2**64:
            raise CacheFormatError(f"record {i}: a={a} does not fit in 64 bits", offset + 8)
        pairs.append((n, a))
    body = np.array(pairs, dtype="<u8").reshape(-1, 2)
    with open(path, "wb") as fh:
        fh.write(MAGIC)
        fh.write(struct.pack("<Q", len(pairs)))
        fh.write(body.tobytes())
    return len(pairs)


def cache_read(path) -> list[tuple[int, int]]:
    with open(path, "rb") as fh:
        data = fh.read()
    if data[: len(MAGIC)] != MAGIC:
        raise CacheFormatError("bad magic", 0)
    if len(data) < HEADER:
        raise CacheFormatError("truncated header", len(data))
    (count,) = struct.unpack_from("<Q", data, len(MAGIC))
    expected = HEADER + count * RECORD
    if len(data) < expected:
        raise CacheFormatError(
            f"truncated: header declares {count} records, file holds "
            f"{(len(data) - HEADER) // RECORD}",
            len(data),
        )
    if len(data) > expected:
        raise CacheFormatError("trailing bytes after the last record", expected)
    body = np.frombuffer(data, dtype="<u8", offset=HEADER).reshape(-1, 2)
    return [(int(n), int(a)) for n, a in body.tolist()]
