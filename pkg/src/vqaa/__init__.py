"""Simulated variational quantum key search against small ciphers and hashes."""
from .ansatz import AnsatzConfig, param_count
from .attack import AttackConfig, AttackResult, brute_force, run_attack, run_hybrid_attack
from .bench import ExperimentSpec, run_experiment
from .bits import BitString
from .encoding import NonOrthogonal, Orthogonal, make_encoding
from .errors import ConfigError, InputError, VQAAError
from .optimizer import OptimizerConfig
from .targets import AttackTarget, make_cipher_target, make_hash_collision_target

__version__ = "0.1.0"

__all__ = [
    "AnsatzConfig",
    "AttackConfig",
    "AttackResult",
    "AttackTarget",
    "BitString",
    "ConfigError",
    "ExperimentSpec",
    "InputError",
    "NonOrthogonal",
    "OptimizerConfig",
    "Orthogonal",
    "VQAAError",
    "brute_force",
    "make_cipher_target",
    "make_encoding",
    "make_hash_collision_target",
    "param_count",
    "run_attack",
    "run_experiment",
    "run_hybrid_attack",
]
