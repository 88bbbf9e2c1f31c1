"""Simplified DES: 10-bit key, 8-bit block, two Feistel rounds."""
from __future__ import annotations

from ..bits import BitString
from ..errors import InputError

P10 = (3, 5, 2, 7, 4, 10, 1, 9, 8, 6)
P8 = (6, 3, 7, 4, 8, 5, 10, 9)
IP = (2, 6, 3, 1, 4, 8, 5, 7)
IP_INV = (4, 1, 3, 5, 7, 2, 8, 6)
EP = (4, 1, 2, 3, 2, 3, 4, 1)
P4 = (2, 4, 3, 1)
S0 = ((1, 0, 3, 2), (3, 2, 1, 0), (0, 2, 1, 3), (3, 1, 3, 2))
S1 = ((0, 1, 2, 3), (2, 0, 1, 3), (3, 0, 1, 0), (2, 1, 0, 3))

KEY_WIDTH = 10
BLOCK_WIDTH = 8


def _permute(x: int, table, in_width: int) -> int:
    out = 0
    for pos in table:
        out = (out << 1) | ((x >> (in_width - pos)) & 1)
    return out


def _rotl5(x: int, n: int) -> int:
    return ((x << n) | (x >> (5 - n))) & 0x1F


def subkeys(key: int) -> tuple[int, int]:
    k = _permute(key, P10, 10)
    left, right = k >> 5, k & 0x1F
    left, right = _rotl5(left, 1), _rotl5(right, 1)
    k1 = _permute((left << 5) | right, P8, 10)
    left, right = _rotl5(left, 2), _rotl5(right, 2)
    k2 = _permute((left << 5) | right, P8, 10)
    return k1, k2


def _sbox(box, nibble: int) -> int:
    row = ((nibble >> 2) & 0b10) | (nibble & 1)
    col = (nibble >> 1) & 0b11
    return box[row][col]


def _f(right: int, sk: int) -> int:
    t = _permute(right, EP, 4) ^ sk
    return _permute((_sbox(S0, t >> 4) << 2) | _sbox(S1, t & 0xF), P4, 4)


def _fk(block: int, sk: int) -> int:
    left, right = block >> 4, block & 0xF
    return ((left ^ _f(right, sk)) << 4) | right


def _swap(block: int) -> int:
    return ((block & 0xF) << 4) | (block >> 4)


def encrypt_int(key: int, plain: int) -> int:
    k1, k2 = subkeys(key)
    b = _permute(plain, IP, 8)
    b = _fk(_swap(_fk(b, k1)), k2)
    return _permute(b, IP_INV, 8)


def decrypt_int(key: int, cipher: int) -> int:
    k1, k2 = subkeys(key)
    b = _permute(cipher, IP, 8)
    b = _fk(_swap(_fk(b, k2)), k1)
    return _permute(b, IP_INV, 8)


def _check(key: BitString, block: BitString) -> None:
    if key.width != KEY_WIDTH:
        raise InputError(f"S-DES key must be 10 bits, got {key.width}")
    if block.width != BLOCK_WIDTH:
        raise InputError(f"S-DES block must be 8 bits, got {block.width}")


def encrypt(key: BitString, plain: BitString) -> BitString:
    _check(key, plain)
    return BitString(encrypt_int(key.value, plain.value), BLOCK_WIDTH)


def decrypt(key: BitString, cipher: BitString) -> BitString:
    _check(key, cipher)
    return BitString(decrypt_int(key.value, cipher.value), BLOCK_WIDTH)
