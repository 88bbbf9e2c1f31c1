"""Truncated FNV-1a, a deliberately weak hash for collision-search demos."""
from __future__ import annotations

from ..bits import BitString
from ..errors import InputError

FNV_OFFSET = 2166136261
FNV_PRIME = 16777619
DIGEST_WIDTHS = (8, 16, 24)


def fnv1a32(data: bytes) -> int:
    h = FNV_OFFSET
    for byte in data:
        h ^= byte
        h = (h * FNV_PRIME) & 0xFFFFFFFF
    return h


def toy_hash(data: BitString | None, t: int = 16) -> BitString:
    """Low ``t`` bits of FNV-1a-32 over the bytes of ``data`` (``None`` = empty input)."""
    if t not in DIGEST_WIDTHS:
        raise InputError(f"digest width must be one of {DIGEST_WIDTHS}, got {t}")
    if data is None:
        raw = b""
    elif data.width % 8:
        raise InputError(f"hash input must be whole bytes, got {data.width} bits")
    else:
        raw = data.to_bytes()
    return BitString(fnv1a32(raw) & ((1 << t) - 1), t)
