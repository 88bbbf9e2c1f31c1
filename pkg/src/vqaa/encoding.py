"""Turning the key register into candidate key bits.

Two modes:

* ``Orthogonal`` -- one bit per qubit, read by a computational-basis measurement.
* ``NonOrthogonal`` -- ``log2(m)`` bits per qubit. Each qubit is compared with
  ``m`` anchor states spread over the Bloch sphere and the best-matching anchor
  (highest fidelity with the exact single-qubit reduced density matrix) gives
  the bits. Ties go to the lowest anchor index.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import qsim
from .bits import BitString
from .errors import ConfigError
from .seeding import as_rng


@dataclass(frozen=True, eq=False)
class AnchorSet:
    anchors: np.ndarray  # shape (m, 2), complex

    def __post_init__(self):
        object.__setattr__(self, "_bloch", _bloch_of(self.anchors))

    @property
    def m(self) -> int:
        return self.anchors.shape[0]

    @property
    def bits_per_qubit(self) -> int:
        return self.m.bit_length() - 1

    def bloch_vectors(self) -> np.ndarray:
        return self._bloch

    def product_state(self, indices) -> qsim.Statevector:
        """Tensor product of anchors, ``indices[q]`` on qubit ``q``."""
        amps = np.ones(1, dtype=complex)
        for j in indices:
            # later qubits are more significant
            amps = np.kron(self.anchors[j], amps)
        return qsim.from_amplitudes(amps)


def _bloch_of(anchors: np.ndarray) -> np.ndarray:
    a, b = anchors[:, 0], anchors[:, 1]
    ab = np.conj(a) * b
    return np.stack([2 * ab.real, 2 * ab.imag, np.abs(a) ** 2 - np.abs(b) ** 2], axis=1)


def tetrahedron_anchors() -> AnchorSet:
    """Four states at the vertices of a regular tetrahedron; index j <-> bits of j."""
    a = 1 / np.sqrt(3)
    b = np.sqrt(2 / 3)
    anchors = np.array(
        [
            [1, 0],
            [a, b * np.exp(2j * np.pi / 3)],
            [a, b * np.exp(4j * np.pi / 3)],
            [a, b],
        ],
        dtype=complex,
    )
    return AnchorSet(anchors)


def bloch_to_state(vec) -> np.ndarray:
    x, y, z = vec
    theta = np.arccos(np.clip(z, -1.0, 1.0))
    phi = np.arctan2(y, x)
    return np.array([np.cos(theta / 2), np.exp(1j * phi) * np.sin(theta / 2)], dtype=complex)


def fibonacci_sphere(m: int) -> np.ndarray:
    """``m`` unit vectors on a spherical Fibonacci lattice (golden-angle azimuths)."""
    i = np.arange(m)
    z = 1 - (2 * i + 1) / m
    rho = np.sqrt(1 - z**2)
    az = i * np.pi * (3 - np.sqrt(5))
    return np.stack([rho * np.cos(az), rho * np.sin(az), z], axis=1)


def sphere_anchors(m: int) -> AnchorSet:
    if m == 4:
        return tetrahedron_anchors()
    if m == 16:
        return AnchorSet(np.array([bloch_to_state(v) for v in fibonacci_sphere(m)]))
    raise ConfigError(f"unsupported anchor count {m}; use 4 or 16")


@dataclass(frozen=True)
class Orthogonal:
    bits_per_qubit: int = 1

    def key_width(self, n_qubits: int) -> int:
        return n_qubits

    def to_dict(self) -> dict:
        return {"kind": "orthogonal"}


@dataclass(frozen=True, eq=False)
class NonOrthogonal:
    anchor_set: AnchorSet

    @property
    def bits_per_qubit(self) -> int:
        return self.anchor_set.bits_per_qubit

    def key_width(self, n_qubits: int) -> int:
        return n_qubits * self.bits_per_qubit

    def to_dict(self) -> dict:
        return {"kind": "nonorthogonal", "states": self.anchor_set.m}


EncodingMode = Orthogonal | NonOrthogonal


def make_encoding(kind: str = "orthogonal", states: int = 4) -> EncodingMode:
    if kind == "orthogonal":
        return Orthogonal()
    if kind in ("nonorthogonal", "non-orthogonal"):
        return NonOrthogonal(sphere_anchors(states))
    raise ConfigError(f"unknown encoding {kind!r}")


def anchor_fidelities(rho: np.ndarray, anchor_set: AnchorSet) -> np.ndarray:
    """<phi_j| rho |phi_j> for every anchor j."""
    a = anchor_set.anchors
    return np.einsum("ji,ik,jk->j", a.conj(), rho, a).real


def decode_nonorthogonal(state: qsim.Statevector, anchor_set: AnchorSet) -> BitString:
    # fidelity <phi|rho|phi> = (1 + r.n)/2, so compare Bloch vectors directly
    scores = qsim.bloch_vectors(state) @ anchor_set.bloch_vectors().T
    bpq = anchor_set.bits_per_qubit
    value = 0
    for j in np.argmax(scores, axis=1):
        value = (value << bpq) | int(j)
    return BitString(value, state.n_qubits * bpq)


def decode_key(state: qsim.Statevector, mode: EncodingMode, rng=None, key_width: int | None = None) -> BitString:
    """Read a candidate key out of the register.

    Orthogonal mode samples (consumes ``rng``); non-orthogonal mode is
    deterministic. Qubit 0 supplies the leading bits in both modes.
    """
    if key_width is not None and mode.key_width(state.n_qubits) != key_width:
        raise ConfigError(
            f"{state.n_qubits} qubits x {mode.bits_per_qubit} bits != key width {key_width}"
        )
    if isinstance(mode, Orthogonal):
        return qsim.sample(state, as_rng(rng))
    return decode_nonorthogonal(state, mode.anchor_set)
