"""Classical functions under attack, all behind one ``AttackTarget`` interface.

A target maps a candidate key to an output bit string and carries the output
produced by the secret key. Nothing here knows about qubits.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from ..bits import BitString
from ..errors import ConfigError, InputError
from . import blowfish, hashes, saes, sdes
from .hashes import toy_hash


@dataclass(frozen=True)
class Cipher:
    name: str
    encrypt: Callable[[BitString, BitString], BitString]
    decrypt: Callable[[BitString, BitString], BitString]
    key_widths: tuple[int, ...]
    block_width: int


CIPHERS = {
    "sdes": Cipher("sdes", sdes.encrypt, sdes.decrypt, (10,), 8),
    "saes": Cipher("saes", saes.encrypt, saes.decrypt, (16,), 16),
    "blowfish": Cipher("blowfish", blowfish.encrypt, blowfish.decrypt, tuple(range(32, 449, 8)), 64),
}


def get_cipher(name: str) -> Cipher:
    try:
        return CIPHERS[name.lower()]
    except KeyError:
        raise ConfigError(f"unknown cipher {name!r}; choose from {sorted(CIPHERS)}") from None


@dataclass(eq=False)
class AttackTarget:
    """Keyed one-way evaluation with a known output.

    ``excluded`` holds keys that reproduce ``known_output`` but do not count as
    an answer (the original segment of a hash-collision target).
    """

    name: str
    key_width: int
    evaluate_fn: Callable[[BitString], BitString]
    known_output: BitString
    public_input: BitString | None = None
    excluded: frozenset = frozenset()
    memoize: bool = True
    _cache: dict = field(default_factory=dict, repr=False)

    @property
    def output_width(self) -> int:
        return self.known_output.width

    def evaluate(self, key: BitString) -> BitString:
        if key.width != self.key_width:
            raise InputError(f"{self.name}: key must be {self.key_width} bits, got {key.width}")
        if not self.memoize:
            return self.evaluate_fn(key)
        out = self._cache.get(key.value)
        if out is None:
            out = self._cache[key.value] = self.evaluate_fn(key)
        return out

    def is_solution(self, key: BitString) -> bool:
        return key.value not in self.excluded and self.evaluate(key) == self.known_output


def make_cipher_target(cipher: str | Cipher, secret_key: BitString, plaintext: BitString) -> AttackTarget:
    c = get_cipher(cipher) if isinstance(cipher, str) else cipher
    if secret_key.width not in c.key_widths:
        raise ConfigError(f"{c.name}: unsupported key width {secret_key.width}")
    if plaintext.width != c.block_width:
        raise ConfigError(f"{c.name}: plaintext must be {c.block_width} bits, got {plaintext.width}")

    def evaluate_fn(key: BitString) -> BitString:
        return c.encrypt(key, plaintext)

    return AttackTarget(
        name=c.name,
        key_width=secret_key.width,
        evaluate_fn=evaluate_fn,
        known_output=c.encrypt(secret_key, plaintext),
        public_input=plaintext,
    )


def splice(document: BitString, offset: int, segment: BitString) -> BitString:
    """Replace ``segment.width`` bits of ``document`` starting at ``offset``."""
    shift = document.width - offset - segment.width
    if offset < 0 or shift < 0:
        raise ConfigError(f"segment of {segment.width} bits at {offset} does not fit a {document.width}-bit document")
    mask = ((1 << segment.width) - 1) << shift
    return BitString((document.value & ~mask) | (segment.value << shift), document.width)


def make_hash_collision_target(
    document: BitString, mutable_segment_width: int, t: int = 16, segment_offset: int | None = None
) -> AttackTarget:
    """Search for a replacement of one segment of ``document`` with the same digest.

    The segment defaults to the trailing ``mutable_segment_width`` bits.
    """
    if document.width % 8:
        raise ConfigError("document must be a whole number of bytes")
    if not 1 <= mutable_segment_width <= document.width:
        raise ConfigError(f"bad segment width {mutable_segment_width}")
    if t not in hashes.DIGEST_WIDTHS:
        raise ConfigError(f"digest width must be one of {hashes.DIGEST_WIDTHS}, got {t}")
    offset = document.width - mutable_segment_width if segment_offset is None else segment_offset
    original = document.slice(offset, offset + mutable_segment_width)

    def evaluate_fn(segment: BitString) -> BitString:
        return toy_hash(splice(document, offset, segment), t)

    return AttackTarget(
        name=f"fnv1a-{t}",
        key_width=mutable_segment_width,
        evaluate_fn=evaluate_fn,
        known_output=toy_hash(document, t),
        public_input=document,
        excluded=frozenset({original.value}),
    )


def fix_prefix(target: AttackTarget, prefix: BitString) -> AttackTarget:
    """Restrict ``target`` to keys starting with ``prefix``; the new key is the suffix."""
    if prefix.width >= target.key_width:
        raise ConfigError(f"prefix of {prefix.width} bits leaves no key bits to search")
    suffix_width = target.key_width - prefix.width

    def evaluate_fn(suffix: BitString) -> BitString:
        return target.evaluate(prefix.concat(suffix))

    excluded = frozenset(
        k & ((1 << suffix_width) - 1) for k in target.excluded if k >> suffix_width == prefix.value
    )
    return AttackTarget(
        name=f"{target.name}[prefix={prefix}]",
        key_width=suffix_width,
        evaluate_fn=evaluate_fn,
        known_output=target.known_output,
        public_input=target.public_input,
        excluded=excluded,
    )


def identity_target(key_width: int, secret_key: BitString) -> AttackTarget:
    """The key itself is the output. Handy for smoke tests."""
    if secret_key.width != key_width:
        raise ConfigError("secret key width mismatch")
    return AttackTarget("identity", key_width, lambda k: k, secret_key)


def read_vectors(path=None) -> list[tuple[BitString, BitString, BitString]]:
    """Parse a ``key,plain,cipher`` hex CSV (defaults to the bundled Blowfish set)."""
    import csv
    from importlib import resources

    if path is None:
        text = resources.files("vqaa.data").joinpath("blowfish_vectors.csv").read_text()
    else:
        with open(path) as f:
            text = f.read()
    rows = list(csv.reader(text.splitlines()))
    if not rows or [h.strip() for h in rows[0]] != ["key", "plain", "cipher"]:
        raise InputError("vector file must start with a 'key,plain,cipher' header")
    out = []
    for row in rows[1:]:
        if not row:
            continue
        if len(row) != 3:
            raise InputError(f"bad vector row {row!r}")
        out.append(tuple(BitString.from_hex(x) for x in row))
    return out


__all__ = [
    "AttackTarget",
    "CIPHERS",
    "Cipher",
    "fix_prefix",
    "get_cipher",
    "identity_target",
    "make_cipher_target",
    "make_hash_collision_target",
    "read_vectors",
    "splice",
    "toy_hash",
]
