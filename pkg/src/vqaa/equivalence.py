"""Check that measuring the key register first changes nothing.

The original attack keeps key and message registers quantum: the ansatz
prepares sum_k c_k |k>, the message register holds |p>, a permutation
unitary maps |k>|x> -> |k>|E_k(x)>, and the message register is measured.
The improved attack samples k with probability |c_k|^2 and encrypts
classically. Both give the ciphertext distribution sum_k |c_k|^2 [E_k(p)];
here the first one is computed from an explicit joint statevector and the two
are compared.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import ansatz, qsim
from .errors import ConfigError
from .seeding import as_rng


@dataclass(frozen=True)
class ToyCipher:
    """Keyed permutation on small blocks: ``table[key][block] -> ciphertext``."""

    table: tuple[tuple[int, ...], ...]
    key_bits: int
    block_bits: int

    def __post_init__(self):
        if len(self.table) != 1 << self.key_bits:
            raise ConfigError("table needs one row per key")
        for row in self.table:
            if sorted(row) != list(range(1 << self.block_bits)):
                raise ConfigError("toy cipher must be a bijection on blocks for every key")

    def encrypt(self, key: int, block: int) -> int:
        return self.table[key][block]


def random_toy_cipher(key_bits: int, block_bits: int, rng=None) -> ToyCipher:
    rng = as_rng(rng)
    rows = tuple(tuple(int(x) for x in rng.permutation(1 << block_bits)) for _ in range(1 << key_bits))
    return ToyCipher(rows, key_bits, block_bits)


def identity_toy_cipher(key_bits: int, block_bits: int) -> ToyCipher:
    row = tuple(range(1 << block_bits))
    return ToyCipher((row,) * (1 << key_bits), key_bits, block_bits)


def _key_value(index: int, n: int) -> int:
    return qsim.index_to_bits(index, n).value


def joint_register_distribution(cipher: ToyCipher, config: ansatz.AnsatzConfig, params, plaintext: int = 0) -> np.ndarray:
    """Ciphertext distribution read off the message register of the full circuit."""
    n, m = cipher.key_bits, cipher.block_bits
    if config.n_qubits != n:
        raise ConfigError(f"ansatz has {config.n_qubits} qubits, cipher key has {n} bits")
    key_state = ansatz.evaluate(config, params).amplitudes
    msg_state = np.zeros(1 << m, dtype=complex)
    msg_state[plaintext] = 1.0
    # joint index = msg * 2^n + key_index (message qubits are the high ones)
    psi = np.kron(msg_state, key_state)
    dim = psi.size
    cq = np.zeros((dim, dim))
    for k_idx in range(1 << n):
        k = _key_value(k_idx, n)
        for x in range(1 << m):
            cq[cipher.encrypt(k, x) * (1 << n) + k_idx, x * (1 << n) + k_idx] = 1.0
    psi = cq @ psi
    probs = (np.abs(psi) ** 2).reshape(1 << m, 1 << n)
    return probs.sum(axis=1)


def sampled_key_distribution(cipher: ToyCipher, config: ansatz.AnsatzConfig, params, plaintext: int = 0) -> np.ndarray:
    """Ciphertext distribution from Prob(k) = |c_k|^2 pushed through the classical cipher."""
    n = cipher.key_bits
    probs = qsim.probabilities(ansatz.evaluate(config, params))
    out = np.zeros(1 << cipher.block_bits)
    for k_idx, p in enumerate(probs):
        out[cipher.encrypt(_key_value(k_idx, n), plaintext)] += p
    return out


def total_variation(p: np.ndarray, q: np.ndarray) -> float:
    return 0.5 * float(np.abs(np.asarray(p) - np.asarray(q)).sum())


def equivalence_check(cipher: ToyCipher, params, config: ansatz.AnsatzConfig | None = None, plaintext: int = 0) -> float:
    """Total-variation distance between the two ciphertext distributions."""
    if config is None:
        config = ansatz.AnsatzConfig(cipher.key_bits)
    return total_variation(
        joint_register_distribution(cipher, config, params, plaintext),
        sampled_key_distribution(cipher, config, params, plaintext),
    )


def max_tvd(qubits: int, draws: int, seed: int = 0, n_layers: int = 3) -> float:
    """Worst TVD over ``draws`` random (cipher, parameters, plaintext) triples."""
    rng = np.random.default_rng(seed)
    config = ansatz.AnsatzConfig(qubits, n_layers=n_layers)
    worst = 0.0
    for _ in range(draws):
        cipher = random_toy_cipher(qubits, qubits, rng)
        params = rng.uniform(-np.pi, np.pi, ansatz.param_count(config))
        p = int(rng.integers(1 << qubits))
        worst = max(worst, equivalence_check(cipher, params, config, p))
    return worst
