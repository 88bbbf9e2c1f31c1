"""Simplified AES: 16-bit key, 16-bit block, two rounds over GF(2^4).

State nibbles s0..s3 (s0 most significant) form the column-major matrix
[[s0, s2], [s1, s3]].
"""
from __future__ import annotations

from ..bits import BitString
from ..errors import InputError

SBOX = (0x9, 0x4, 0xA, 0xB, 0xD, 0x1, 0x8, 0x5, 0x6, 0x2, 0x0, 0x3, 0xC, 0xE, 0xF, 0x7)
INV_SBOX = tuple(SBOX.index(i) for i in range(16))
RCON1, RCON2 = 0x80, 0x30
MIX = ((1, 4), (4, 1))
INV_MIX = ((9, 2), (2, 9))

KEY_WIDTH = 16
BLOCK_WIDTH = 16


def gf16_mul(a: int, b: int) -> int:
    """Multiply in GF(2^4) modulo x^4 + x + 1."""
    out = 0
    for _ in range(4):
        if b & 1:
            out ^= a
        b >>= 1
        a <<= 1
        if a & 0x10:
            a ^= 0x13
    return out & 0xF


def _nibbles(x: int) -> list[int]:
    return [(x >> 12) & 0xF, (x >> 8) & 0xF, (x >> 4) & 0xF, x & 0xF]


def _join(n: list[int]) -> int:
    return (n[0] << 12) | (n[1] << 8) | (n[2] << 4) | n[3]


def _sub_word(w: int, box=SBOX) -> int:
    return (box[w >> 4] << 4) | box[w & 0xF]


def _rot_word(w: int) -> int:
    return ((w << 4) | (w >> 4)) & 0xFF


def expand_key(key: int) -> tuple[int, int, int]:
    """Round keys K0, K1, K2 as 16-bit integers."""
    w0, w1 = key >> 8, key & 0xFF
    w2 = w0 ^ RCON1 ^ _sub_word(_rot_word(w1))
    w3 = w2 ^ w1
    w4 = w2 ^ RCON2 ^ _sub_word(_rot_word(w3))
    w5 = w4 ^ w3
    return (w0 << 8) | w1, (w2 << 8) | w3, (w4 << 8) | w5


def nibble_sub(x: int, box=SBOX) -> int:
    return _join([box[n] for n in _nibbles(x)])


def shift_row(x: int) -> int:
    s0, s1, s2, s3 = _nibbles(x)
    return _join([s0, s3, s2, s1])


def mix_columns(x: int, m=MIX) -> int:
    s0, s1, s2, s3 = _nibbles(x)
    return _join(
        [
            gf16_mul(m[0][0], s0) ^ gf16_mul(m[0][1], s1),
            gf16_mul(m[1][0], s0) ^ gf16_mul(m[1][1], s1),
            gf16_mul(m[0][0], s2) ^ gf16_mul(m[0][1], s3),
            gf16_mul(m[1][0], s2) ^ gf16_mul(m[1][1], s3),
        ]
    )


def encrypt_int(key: int, plain: int) -> int:
    k0, k1, k2 = expand_key(key)
    s = plain ^ k0
    s = mix_columns(shift_row(nibble_sub(s))) ^ k1
    return shift_row(nibble_sub(s)) ^ k2


def decrypt_int(key: int, cipher: int) -> int:
    k0, k1, k2 = expand_key(key)
    s = nibble_sub(shift_row(cipher ^ k2), INV_SBOX)
    s = mix_columns(s ^ k1, INV_MIX)
    return nibble_sub(shift_row(s), INV_SBOX) ^ k0


def _check(key: BitString, block: BitString) -> None:
    if key.width != KEY_WIDTH:
        raise InputError(f"S-AES key must be 16 bits, got {key.width}")
    if block.width != BLOCK_WIDTH:
        raise InputError(f"S-AES block must be 16 bits, got {block.width}")


def encrypt(key: BitString, plain: BitString) -> BitString:
    _check(key, plain)
    return BitString(encrypt_int(key.value, plain.value), BLOCK_WIDTH)


def decrypt(key: BitString, cipher: BitString) -> BitString:
    _check(key, cipher)
    return BitString(decrypt_int(key.value, cipher.value), BLOCK_WIDTH)
