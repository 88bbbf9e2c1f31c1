"""Hardware-efficient variational ansatz for the key register.

Layer layout (layer 0 is preceded by a Hadamard on every qubit):

    U(theta, phi, lambda) on every qubit
    for i in 0..n-2:  CNOT(i -> i+1), CNOT(n-1 -> i)
    ``extra_cnots_per_layer`` CNOTs with pseudo-random (control, target)

The extra CNOT pairs come from ``random.Random(cnot_seed)``; the stream keeps
running across layers, so each layer gets a fresh draw but the whole template
is fixed for a given config.

Parameters are ordered layer-major, then by qubit, then (theta, phi[, lambda]).
"""
from __future__ import annotations

import random
from dataclasses import asdict, dataclass
from functools import lru_cache

import numpy as np

from . import qsim
from .errors import ConfigError

DEFAULT_CNOT_SEED = 42


@dataclass(frozen=True)
class AnsatzConfig:
    n_qubits: int
    n_layers: int = 3
    cnot_seed: int = DEFAULT_CNOT_SEED
    lambda_zero: bool = True
    extra_cnots_per_layer: int = 4

    def __post_init__(self):
        if not 1 <= self.n_qubits <= qsim.MAX_QUBITS:
            raise ConfigError(f"n_qubits must be in 1..{qsim.MAX_QUBITS}, got {self.n_qubits}")
        if self.n_layers < 1:
            raise ConfigError(f"n_layers must be >= 1, got {self.n_layers}")
        if self.extra_cnots_per_layer < 0:
            raise ConfigError("extra_cnots_per_layer must be >= 0")

    @property
    def angles_per_gate(self) -> int:
        return 2 if self.lambda_zero else 3

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: dict) -> "AnsatzConfig":
        known = {"n_qubits", "n_layers", "cnot_seed", "lambda_zero", "extra_cnots_per_layer"}
        unknown = set(d) - known
        if unknown:
            raise ConfigError(f"unknown ansatz keys: {sorted(unknown)}")
        return cls(**d)


def param_count(config: AnsatzConfig) -> int:
    return config.n_qubits * config.n_layers * config.angles_per_gate


@dataclass(frozen=True)
class Slot:
    """A U gate whose angles are read from the parameter vector."""

    qubit: int
    index: int  # position of theta; phi (and lambda) follow

    kind = "U-slot"


def build_template(config: AnsatzConfig) -> list:
    """Ordered list of ``qsim.Gate`` (fixed gates) and ``Slot`` (parametrised U gates)."""
    n = config.n_qubits
    rng = random.Random(config.cnot_seed)
    out: list = []
    index = 0
    for layer in range(config.n_layers):
        if layer == 0:
            out.extend(qsim.H(q) for q in range(n))
        for q in range(n):
            out.append(Slot(q, index))
            index += config.angles_per_gate
        for i in range(n - 1):
            out.append(qsim.CNOT(i, i + 1))
            if n - 1 != i:
                out.append(qsim.CNOT(n - 1, i))
        if n >= 2:
            for _ in range(config.extra_cnots_per_layer):
                c = rng.randrange(n)
                t = rng.randrange(n - 1)
                if t >= c:
                    t += 1
                out.append(qsim.CNOT(c, t))
    return out


def _cnot_perm(n: int, c: int, t: int) -> np.ndarray:
    idx = np.arange(1 << n)
    return idx ^ (((idx >> c) & 1) << t)


@lru_cache(maxsize=64)
def _compiled(config: AnsatzConfig):
    """Template with runs of CNOTs fused into a single index gather."""
    n = config.n_qubits
    ops = []
    perm = None
    for g in build_template(config):
        if isinstance(g, qsim.Gate) and g.kind == "CNOT":
            p = _cnot_perm(n, *g.qubits)
            perm = p if perm is None else perm[p]
            continue
        if perm is not None:
            ops.append(("perm", perm))
            perm = None
        if isinstance(g, Slot):
            ops.append(("slot", g.qubit, g.index))
        else:
            ops.append(("fixed", g.qubits[0], g.matrix()))
    if perm is not None:
        ops.append(("perm", perm))
    return tuple(ops)


def _slot_matrices(config: AnsatzConfig, params: np.ndarray) -> np.ndarray:
    """U matrices for every slot, in slot order, shape (n_slots, 2, 2)."""
    k = config.angles_per_gate
    theta, phi = params[0::k], params[1::k]
    lam = np.zeros_like(theta) if config.lambda_zero else params[2::k]
    c, s = np.cos(theta / 2), np.sin(theta / 2)
    e_phi, e_lam = np.exp(1j * phi), np.exp(1j * lam)
    u = np.empty((theta.size, 2, 2), dtype=complex)
    u[:, 0, 0] = c
    u[:, 0, 1] = -e_lam * s
    u[:, 1, 0] = e_phi * s
    u[:, 1, 1] = e_phi * e_lam * c
    return u


def evaluate(config: AnsatzConfig, params) -> qsim.Statevector:
    params = np.asarray(params, dtype=float)
    if params.shape != (param_count(config),):
        raise ConfigError(f"expected {param_count(config)} parameters, got shape {params.shape}")
    if not np.all(np.isfinite(params)):
        raise ConfigError("parameters must be finite")
    mats = _slot_matrices(config, params)
    k = config.angles_per_gate
    psi = np.zeros(1 << config.n_qubits, dtype=complex)
    psi[0] = 1.0
    for op in _compiled(config):
        if op[0] == "perm":
            psi = psi[op[1]]
        elif op[0] == "slot":
            psi = np.matmul(mats[op[2] // k], psi.reshape(-1, 2, 1 << op[1])).reshape(-1)
        else:
            psi = np.matmul(op[2], psi.reshape(-1, 2, 1 << op[1])).reshape(-1)
    return qsim.Statevector(config.n_qubits, psi)


def evaluate_gates(config: AnsatzConfig, params) -> qsim.Statevector:
    """Gate-by-gate evaluation, no fusion. Slower; kept as a cross-check."""
    params = np.asarray(params, dtype=float)
    if params.shape != (param_count(config),):
        raise ConfigError(f"expected {param_count(config)} parameters, got shape {params.shape}")
    state = qsim.new_state(config.n_qubits)
    for g in build_template(config):
        if isinstance(g, Slot):
            i = g.index
            lam = 0.0 if config.lambda_zero else params[i + 2]
            g = qsim.U(g.qubit, params[i], params[i + 1], lam)
        qsim.apply_gate(state, g)
    return state


def cnot_count(config: AnsatzConfig) -> int:
    return sum(1 for g in build_template(config) if isinstance(g, qsim.Gate) and g.kind == "CNOT")
