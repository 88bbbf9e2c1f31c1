"""Fixed-width bit strings.

Index 0 is the most significant bit, so ``BitString.from_hex("80").bits[0] == 1``.
This matches the way cipher test vectors are written.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import InputError


@dataclass(frozen=True, order=True)
class BitString:
    value: int
    width: int

    def __post_init__(self):
        if self.width <= 0:
            raise InputError(f"width must be positive, got {self.width}")
        if not 0 <= self.value < (1 << self.width):
            raise InputError(f"value {self.value} does not fit in {self.width} bits")

    @classmethod
    def from_bits(cls, bits: Iterable[int]) -> "BitString":
        bits = list(bits)
        value = 0
        for b in bits:
            if b not in (0, 1):
                raise InputError(f"bits must be 0/1, got {b!r}")
            value = (value << 1) | int(b)
        return cls(value, len(bits))

    @classmethod
    def from_str(cls, text: str) -> "BitString":
        """Parse a string of '0'/'1' characters (spaces and underscores ignored)."""
        text = text.replace(" ", "").replace("_", "")
        if not text or set(text) - {"0", "1"}:
            raise InputError(f"not a binary string: {text!r}")
        return cls(int(text, 2), len(text))

    @classmethod
    def from_hex(cls, text: str, width: int | None = None) -> "BitString":
        text = text.strip().lower()
        if text.startswith("0x"):
            text = text[2:]
        if not text:
            raise InputError("empty hex string")
        try:
            value = int(text, 16)
        except ValueError:
            raise InputError(f"not a hex string: {text!r}") from None
        return cls(value, 4 * len(text) if width is None else width)

    @classmethod
    def from_bytes(cls, data: bytes) -> "BitString":
        if not data:
            raise InputError("empty byte string")
        return cls(int.from_bytes(data, "big"), 8 * len(data))

    @property
    def bits(self) -> tuple[int, ...]:
        return tuple((self.value >> (self.width - 1 - i)) & 1 for i in range(self.width))

    def to_hex(self) -> str:
        return format(self.value, f"0{(self.width + 3) // 4}x")

    def to_bytes(self) -> bytes:
        if self.width % 8:
            raise InputError(f"width {self.width} is not a whole number of bytes")
        return self.value.to_bytes(self.width // 8, "big")

    def __str__(self) -> str:
        return format(self.value, f"0{self.width}b")

    def __len__(self) -> int:
        return self.width

    def __getitem__(self, i: int) -> int:
        if not -self.width <= i < self.width:
            raise IndexError(i)
        i %= self.width
        return (self.value >> (self.width - 1 - i)) & 1

    def __xor__(self, other: "BitString") -> "BitString":
        _same_width(self, other)
        return BitString(self.value ^ other.value, self.width)

    def concat(self, other: "BitString") -> "BitString":
        return BitString((self.value << other.width) | other.value, self.width + other.width)

    def slice(self, start: int, stop: int) -> "BitString":
        """Bits ``start..stop-1`` (MSB-first indexing)."""
        if not 0 <= start < stop <= self.width:
            raise InputError(f"bad slice {start}:{stop} of {self.width}-bit string")
        shift = self.width - stop
        return BitString((self.value >> shift) & ((1 << (stop - start)) - 1), stop - start)

    def popcount(self) -> int:
        return self.value.bit_count()


def concat_all(parts: Sequence[BitString]) -> BitString:
    out = parts[0]
    for p in parts[1:]:
        out = out.concat(p)
    return out


def _same_width(a: BitString, b: BitString) -> None:
    if a.width != b.width:
        raise InputError(f"width mismatch: {a.width} vs {b.width}")
