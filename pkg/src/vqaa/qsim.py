"""Dense statevector simulator.

Only the pieces the attack needs: Hadamard, the general single-qubit ``U``
gate, CNOT, computational-basis sampling and single-qubit reduced density
matrices.

Amplitudes live in a flat array indexed by the basis integer with qubit 0 as
the least significant bit. Sampled keys are returned with qubit 0 *first*
(most significant position of the ``BitString``).
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .bits import BitString
from .errors import ConfigError
from .seeding import as_rng

MAX_QUBITS = 16

_H = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)


def u_matrix(theta: float, phi: float, lam: float = 0.0) -> np.ndarray:
    """General single-qubit rotation U(theta, phi, lambda)."""
    c, s = np.cos(theta / 2), np.sin(theta / 2)
    return np.array(
        [
            [c, -np.exp(1j * lam) * s],
            [np.exp(1j * phi) * s, np.exp(1j * (phi + lam)) * c],
        ],
        dtype=complex,
    )


@dataclass(frozen=True)
class Gate:
    kind: str  # "H", "U" or "CNOT"
    qubits: tuple[int, ...]
    angles: tuple[float, ...] = ()

    def __post_init__(self):
        if self.kind == "CNOT":
            if len(self.qubits) != 2 or self.qubits[0] == self.qubits[1]:
                raise ConfigError(f"CNOT needs distinct control/target, got {self.qubits}")
        elif self.kind in ("H", "U"):
            if len(self.qubits) != 1:
                raise ConfigError(f"{self.kind} acts on one qubit, got {self.qubits}")
            if self.kind == "U" and len(self.angles) != 3:
                raise ConfigError("U gate needs (theta, phi, lambda)")
        else:
            raise ConfigError(f"unknown gate kind {self.kind!r}")

    def matrix(self) -> np.ndarray:
        if self.kind == "H":
            return _H
        if self.kind == "U":
            return u_matrix(*self.angles)
        raise ConfigError("CNOT has no 2x2 matrix")


def H(q: int) -> Gate:
    return Gate("H", (q,))


def U(q: int, theta: float, phi: float, lam: float = 0.0) -> Gate:
    return Gate("U", (q,), (float(theta), float(phi), float(lam)))


def CNOT(control: int, target: int) -> Gate:
    return Gate("CNOT", (control, target))


@dataclass
class Statevector:
    n_qubits: int
    amplitudes: np.ndarray = field(repr=False)

    def __post_init__(self):
        if self.amplitudes.shape != (1 << self.n_qubits,):
            raise ConfigError(
                f"expected {1 << self.n_qubits} amplitudes, got shape {self.amplitudes.shape}"
            )

    def copy(self) -> "Statevector":
        return Statevector(self.n_qubits, self.amplitudes.copy())

    def norm_sq(self) -> float:
        return float(np.vdot(self.amplitudes, self.amplitudes).real)


def new_state(n_qubits: int) -> Statevector:
    if not 1 <= n_qubits <= MAX_QUBITS:
        raise ConfigError(f"n_qubits must be in 1..{MAX_QUBITS}, got {n_qubits}")
    amps = np.zeros(1 << n_qubits, dtype=complex)
    amps[0] = 1.0
    return Statevector(n_qubits, amps)


def from_amplitudes(amplitudes) -> Statevector:
    amps = np.asarray(amplitudes, dtype=complex).copy()
    n = int(round(np.log2(amps.size))) if amps.size else 0
    if amps.size != 1 << n or not 1 <= n <= MAX_QUBITS:
        raise ConfigError(f"amplitude count {amps.size} is not a valid power of two")
    return Statevector(n, amps)


def _check_qubit(state: Statevector, q: int) -> None:
    if not 0 <= q < state.n_qubits:
        raise ConfigError(f"qubit {q} out of range for {state.n_qubits}-qubit state")


def apply_matrix_1q(state: Statevector, m: np.ndarray, q: int) -> Statevector:
    """Apply a 2x2 matrix to qubit ``q`` in place."""
    _check_qubit(state, q)
    v = state.amplitudes.reshape(-1, 2, 1 << q)
    a0 = v[:, 0, :].copy()
    a1 = v[:, 1, :]
    v[:, 0, :] = m[0, 0] * a0 + m[0, 1] * a1
    v[:, 1, :] = m[1, 0] * a0 + m[1, 1] * a1
    return state


def apply_cnot(state: Statevector, control: int, target: int) -> Statevector:
    _check_qubit(state, control)
    _check_qubit(state, target)
    if control == target:
        raise ConfigError("CNOT control and target must differ")
    n = state.n_qubits
    t = state.amplitudes.reshape((2,) * n)
    # qubit q is tensor axis n-1-q
    lo = [slice(None)] * n
    lo[n - 1 - control] = 1
    hi = list(lo)
    lo[n - 1 - target] = 0
    hi[n - 1 - target] = 1
    lo, hi = tuple(lo), tuple(hi)
    tmp = t[lo].copy()
    t[lo] = t[hi]
    t[hi] = tmp
    return state


def apply_gate(state: Statevector, gate: Gate) -> Statevector:
    """Apply ``gate`` in place and return the same state object."""
    if gate.kind == "CNOT":
        return apply_cnot(state, *gate.qubits)
    return apply_matrix_1q(state, gate.matrix(), gate.qubits[0])


def probabilities(state: Statevector) -> np.ndarray:
    amps = state.amplitudes
    return amps.real**2 + amps.imag**2


def index_to_bits(index: int, n_qubits: int) -> BitString:
    """Basis index -> BitString with qubit 0 first."""
    value = 0
    for q in range(n_qubits):
        value = (value << 1) | ((index >> q) & 1)
    return BitString(value, n_qubits)


def bits_to_index(bits: BitString) -> int:
    index = 0
    for q, b in enumerate(bits.bits):
        index |= b << q
    return index


def sample_index(state: Statevector, rng=None) -> int:
    rng = as_rng(rng)
    cdf = np.cumsum(probabilities(state))
    k = int(np.searchsorted(cdf, rng.random() * cdf[-1], side="right"))
    return min(k, cdf.size - 1)


def sample(state: Statevector, rng=None) -> BitString:
    """Measure every qubit in the computational basis (state is left untouched)."""
    return index_to_bits(sample_index(state, rng), state.n_qubits)


def reduced_density_matrix(state: Statevector, qubit: int) -> np.ndarray:
    """2x2 density matrix of ``qubit`` after tracing out the rest."""
    _check_qubit(state, qubit)
    v = state.amplitudes.reshape(-1, 2, 1 << qubit)
    m = np.moveaxis(v, 1, 0).reshape(2, -1)
    return m @ m.conj().T


def bloch_vectors(state: Statevector) -> np.ndarray:
    """Bloch vector of every qubit's reduced state, shape (n_qubits, 3)."""
    out = np.empty((state.n_qubits, 3))
    for q in range(state.n_qubits):
        v = state.amplitudes.reshape(-1, 2, 1 << q)
        a0, a1 = v[:, 0, :], v[:, 1, :]
        off = np.vdot(a0, a1)  # rho[1, 0]
        out[q] = 2 * off.real, 2 * off.imag, np.vdot(a0, a0).real - np.vdot(a1, a1).real
    return out


def single_qubit_rdms(state: Statevector) -> np.ndarray:
    """All single-qubit reduced density matrices, shape (n_qubits, 2, 2)."""
    return np.stack([reduced_density_matrix(state, q) for q in range(state.n_qubits)])
