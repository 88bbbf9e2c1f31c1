"""Hamming-distance cost."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import ansatz, qsim
from .bits import BitString
from .errors import ConfigError, InputError
from .targets import AttackTarget


@dataclass(frozen=True)
class CostSample:
    key: BitString
    guessed_output: BitString
    distance: int


def hamming(a: BitString, b: BitString) -> int:
    if a.width != b.width:
        raise InputError(f"width mismatch: {a.width} vs {b.width}")
    return (a.value ^ b.value).bit_count()


def key_cost(target: AttackTarget, key: BitString) -> int:
    """Hamming distance between the key's output and the known output."""
    if key.width != target.key_width:
        raise InputError(f"key must be {target.key_width} bits, got {key.width}")
    return hamming(target.evaluate(key), target.known_output)


def attack_cost(target: AttackTarget, key: BitString) -> CostSample:
    """Cost seen by the optimiser.

    Excluded keys (a hash document's own segment) would score 0 without being an
    answer; they are charged the full output width instead.
    """
    out = target.evaluate(key)
    if key.value in target.excluded:
        return CostSample(key, out, target.output_width)
    return CostSample(key, out, hamming(out, target.known_output))


def key_cost_table(target: AttackTarget) -> np.ndarray:
    """``key_cost`` for every key, indexed by key value. Only for small key widths."""
    if target.key_width > 20:
        raise ConfigError("key space too large to tabulate")
    return np.array(
        [key_cost(target, BitString(k, target.key_width)) for k in range(1 << target.key_width)],
        dtype=float,
    )


def expected_cost(target: AttackTarget, config: ansatz.AnsatzConfig, params, table: np.ndarray | None = None) -> float:
    """Exact mean cost of an orthogonal-encoding measurement, sum_k |c_k|^2 cost(k)."""
    if target.key_width != config.n_qubits:
        raise ConfigError(f"orthogonal encoding needs key width {config.n_qubits}, target has {target.key_width}")
    if table is None:
        table = key_cost_table(target)
    probs = qsim.probabilities(ansatz.evaluate(config, params))
    # basis index has qubit 0 as LSB; key bit order has qubit 0 first
    order = np.array([qsim.index_to_bits(i, config.n_qubits).value for i in range(probs.size)])
    return float(probs @ table[order])
