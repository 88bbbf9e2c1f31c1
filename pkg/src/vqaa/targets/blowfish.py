"""Blowfish (64-bit block, 32..448-bit key).

The initial P-array and S-boxes are the fractional hexadecimal digits of pi,
computed once with mpmath rather than pasted in as a table.
"""
from __future__ import annotations

from functools import lru_cache

from ..bits import BitString
from ..errors import InputError

ROUNDS = 16
BLOCK_WIDTH = 64
MIN_KEY_BITS, MAX_KEY_BITS = 32, 448
_MASK = 0xFFFFFFFF
_N_WORDS = 18 + 4 * 256


@lru_cache(maxsize=1)
def pi_words() -> tuple[int, ...]:
    """First 1042 32-bit words of the fractional part of pi."""
    import mpmath

    bits = 32 * _N_WORDS
    with mpmath.workprec(bits + 64):
        scaled = int(mpmath.floor(mpmath.pi * mpmath.mpf(2) ** bits))
    frac = scaled - (3 << bits)
    return tuple((frac >> (bits - 32 * (i + 1))) & _MASK for i in range(_N_WORDS))


def initial_state() -> tuple[list[int], list[list[int]]]:
    w = pi_words()
    p = list(w[:18])
    s = [list(w[18 + 256 * i : 18 + 256 * (i + 1)]) for i in range(4)]
    return p, s


class Blowfish:
    """Keyed Blowfish instance; ``setup_encryptions`` counts key-schedule block encryptions."""

    def __init__(self, key: bytes):
        if not MIN_KEY_BITS <= 8 * len(key) <= MAX_KEY_BITS:
            raise InputError(f"Blowfish key must be 4..56 bytes, got {len(key)}")
        self.setup_encryptions = 0
        self._schedule(key)

    def _schedule(self, key: bytes) -> None:
        p, s = initial_state()
        n = len(key)
        j = 0
        for i in range(18):
            word = 0
            for _ in range(4):
                word = (word << 8) | key[j]
                j = (j + 1) % n
            p[i] ^= word
        self.p, self.s = p, s
        left = right = 0
        for i in range(0, 18, 2):
            left, right = self.encrypt_words(left, right)
            self.setup_encryptions += 1
            p[i], p[i + 1] = left, right
        for box in s:
            for i in range(0, 256, 2):
                left, right = self.encrypt_words(left, right)
                self.setup_encryptions += 1
                box[i], box[i + 1] = left, right

    def encrypt_words(self, left: int, right: int) -> tuple[int, int]:
        p = self.p
        s0, s1, s2, s3 = self.s
        for i in range(ROUNDS):
            left ^= p[i]
            right ^= ((((s0[left >> 24] + s1[(left >> 16) & 0xFF]) & _MASK) ^ s2[(left >> 8) & 0xFF]) + s3[left & 0xFF]) & _MASK
            left, right = right, left
        left, right = right, left
        return left ^ p[17], right ^ p[16]

    def decrypt_words(self, left: int, right: int) -> tuple[int, int]:
        p = self.p
        s0, s1, s2, s3 = self.s
        for i in range(17, 1, -1):
            left ^= p[i]
            right ^= ((((s0[left >> 24] + s1[(left >> 16) & 0xFF]) & _MASK) ^ s2[(left >> 8) & 0xFF]) + s3[left & 0xFF]) & _MASK
            left, right = right, left
        left, right = right, left
        return left ^ p[0], right ^ p[1]

    def encrypt_block(self, block: int) -> int:
        left, right = self.encrypt_words(block >> 32, block & _MASK)
        return (left << 32) | right

    def decrypt_block(self, block: int) -> int:
        left, right = self.decrypt_words(block >> 32, block & _MASK)
        return (left << 32) | right


def _key_bytes(key: BitString) -> bytes:
    if key.width % 8 or not MIN_KEY_BITS <= key.width <= MAX_KEY_BITS:
        raise InputError(f"Blowfish key must be a whole number of bytes in 32..448 bits, got {key.width}")
    return key.to_bytes()


def _check_block(block: BitString) -> None:
    if block.width != BLOCK_WIDTH:
        raise InputError(f"Blowfish block must be 64 bits, got {block.width}")


def encrypt(key: BitString, block: BitString) -> BitString:
    _check_block(block)
    return BitString(Blowfish(_key_bytes(key)).encrypt_block(block.value), BLOCK_WIDTH)


def decrypt(key: BitString, block: BitString) -> BitString:
    _check_block(block)
    return BitString(Blowfish(_key_bytes(key)).decrypt_block(block.value), BLOCK_WIDTH)
