"""Repeated-trial experiments: per-trial records, cumulative curves, baselines.

An experiment is described by a JSON document::

    {
      "target":    {"kind": "cipher", "cipher": "sdes", "key_bits": 10},
      "ansatz":    {"n_qubits": 5, "n_layers": 3},
      "optimizer": {"method": "hyperspherical", "max_iterations": 512},
      "encoding":  {"kind": "nonorthogonal", "states": 4},
      "trials": 100,
      "seed": 0,
      "baseline": "brute_force",
      "output": {"dir": "out", "prefix": "sdes"}
    }

Hash targets use ``{"kind": "hash", "document_bytes": 4, "segment_bits": 12,
"digest_bits": 8}``. A cipher target with ``"prefix_width": p`` runs the sharded
attack with the first ``p`` key bits fixed; only the shard holding the secret
key is simulated and accounting multiplies by ``2**p``.

Cipher targets may pin ``key_hex`` and/or ``plain_hex``; otherwise every trial draws its secret key and public input from ``trial_rng(seed, trial, 0)``,
so a trial's data does not depend on how many trials run or in which order.
"""
from __future__ import annotations

import csv
import io
import json
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from . import attack, optimizer
from .ansatz import AnsatzConfig, param_count
from .bits import BitString
from .encoding import make_encoding
from .errors import ConfigError
from .seeding import trial_rng
from .targets import AttackTarget, fix_prefix, get_cipher, make_cipher_target, make_hash_collision_target

TRIAL_COLUMNS = ["trial", "secret_key_hex", "plaintext_hex", "iterations", "measurements", "success", "wall_ms"]
CUMULATIVE_COLUMNS = ["trial", "cum_avg_iterations", "cum_avg_measurements"]
BASELINE_COLUMNS = ["trial", "secret_key_hex", "trials", "cum_avg_trials"]
BASELINES = ("none", "brute_force")


@dataclass
class ExperimentSpec:
    target: dict
    ansatz: dict
    optimizer: dict = field(default_factory=dict)
    encoding: dict = field(default_factory=lambda: {"kind": "orthogonal"})
    trials: int = 100
    seed: int = 0
    baseline: str = "none"
    output: dict = field(default_factory=dict)
    record_time: bool = False

    def __post_init__(self):
        if not isinstance(self.trials, int) or self.trials < 1:
            raise ConfigError(f"trials must be a positive integer, got {self.trials!r}")
        if self.baseline not in BASELINES:
            raise ConfigError(f"baseline must be one of {BASELINES}, got {self.baseline!r}")
        # fail early on bad sections
        self.ansatz_config()
        self.optimizer_config()
        self.encoding_mode()
        _check_target(self.target)
        need = self.search_width
        have = self.encoding_mode().key_width(self.ansatz_config().n_qubits)
        if need != have:
            raise ConfigError(f"ansatz and encoding cover {have} key bits but the search space has {need}")

    @classmethod
    def from_dict(cls, d: dict) -> "ExperimentSpec":
        known = {f for f in cls.__dataclass_fields__}
        unknown = set(d) - known
        if unknown:
            raise ConfigError(f"unknown experiment keys: {sorted(unknown)}")
        if "target" not in d or "ansatz" not in d:
            raise ConfigError("experiment needs 'target' and 'ansatz' sections")
        return cls(**d)

    @classmethod
    def load(cls, path) -> "ExperimentSpec":
        try:
            with open(path) as f:
                data = json.load(f)
        except FileNotFoundError:
            raise ConfigError(f"config file not found: {path}") from None
        except json.JSONDecodeError as e:
            raise ConfigError(f"config file is not valid JSON: {e}") from None
        if not isinstance(data, dict):
            raise ConfigError("config must be a JSON object")
        return cls.from_dict(data)

    def to_dict(self) -> dict:
        return asdict(self)

    def ansatz_config(self) -> AnsatzConfig:
        return AnsatzConfig.from_dict(self.ansatz)

    def optimizer_config(self) -> optimizer.OptimizerConfig:
        return optimizer.OptimizerConfig.from_dict(self.optimizer)

    def encoding_mode(self):
        enc = dict(self.encoding)
        kind = enc.pop("kind", "orthogonal")
        states = enc.pop("states", 4)
        if enc:
            raise ConfigError(f"unknown encoding keys: {sorted(enc)}")
        return make_encoding(kind, states)

    @property
    def prefix_width(self) -> int:
        return int(self.target.get("prefix_width", 0))

    @property
    def search_width(self) -> int:
        """Key bits the quantum register has to cover."""
        t = self.target
        if t.get("kind", "cipher") == "hash":
            return int(t["segment_bits"])
        cipher = get_cipher(t["cipher"])
        return int(t.get("key_bits", cipher.key_widths[0])) - self.prefix_width


@dataclass
class TrialRecord:
    trial: int
    secret_key_hex: str
    plaintext_hex: str
    iterations: int
    measurements: int
    success: bool
    wall_ms: float | None = None
    samples: int = 0
    baseline_trials: int | None = None

    def row(self) -> list:
        wall = "" if self.wall_ms is None else f"{self.wall_ms:.3f}"
        return [self.trial, self.secret_key_hex, self.plaintext_hex, self.iterations,
                self.measurements, int(self.success), wall]


@dataclass
class ExperimentResult:
    spec: ExperimentSpec
    records: list[TrialRecord]
    wall_time: float

    @property
    def param_count(self) -> int:
        return param_count(self.spec.ansatz_config())

    def summary(self) -> dict:
        its = np.array([r.iterations for r in self.records], dtype=float)
        ms = np.array([r.measurements for r in self.records], dtype=float)
        out = {
            "trials": len(self.records),
            "success_rate": float(np.mean([r.success for r in self.records])),
            "mean_iterations": float(its.mean()),
            "mean_measurements": float(ms.mean()),
            "mean_samples": float(np.mean([r.samples for r in self.records])),
            "mean_evaluations": float(ms.mean() + np.mean([r.samples for r in self.records])),
            "max_iterations": int(its.max()),
            "param_count": self.param_count,
            "probes_per_step": optimizer.probes_per_step(self.spec.optimizer_config().method, self.param_count),
            "total_wall_time": self.wall_time,
        }
        p = self.spec.prefix_width
        if p:
            out["prefix_width"] = p
            out["aggregate_iterations"] = out["mean_iterations"] * (1 << p)
            out["aggregate_measurements"] = out["mean_measurements"] * (1 << p)
        if self.spec.baseline == "brute_force":
            out["baseline_mean_trials"] = float(np.mean([r.baseline_trials for r in self.records]))
        return out


# -- targets -------------------------------------------------------------------------


def _check_target(t: dict) -> None:
    if not isinstance(t, dict):
        raise ConfigError("target section must be an object")
    kind = t.get("kind", "cipher")
    if kind == "cipher":
        allowed = {"kind", "cipher", "key_bits", "prefix_width", "key_hex", "plain_hex"}
        cipher = get_cipher(t.get("cipher", ""))
        bits = t.get("key_bits", cipher.key_widths[0])
        if bits not in cipher.key_widths:
            raise ConfigError(f"{cipher.name} does not accept {bits}-bit keys")
        p = t.get("prefix_width", 0)
        if not isinstance(p, int) or not 0 <= p < bits:
            raise ConfigError(f"prefix_width must be in 0..{bits - 1}")
    elif kind == "hash":
        allowed = {"kind", "document_bytes", "segment_bits", "digest_bits"}
        if t.get("segment_bits", 0) < 1 or t.get("segment_bits", 0) > 8 * t.get("document_bytes", 0):
            raise ConfigError("hash target needs 1 <= segment_bits <= 8 * document_bytes")
    else:
        raise ConfigError(f"unknown target kind {kind!r}")
    unknown = set(t) - allowed
    if unknown:
        raise ConfigError(f"unknown target keys: {sorted(unknown)}")


def trial_target(spec: ExperimentSpec, trial: int) -> tuple[AttackTarget, BitString, BitString]:
    """The target for one trial plus the secret key and public input it was built from."""
    t = spec.target
    rng = trial_rng(spec.seed, trial, 0)
    if t.get("kind", "cipher") == "hash":
        doc = _draw_bits(rng, 8 * t["document_bytes"])
        target = make_hash_collision_target(doc, t["segment_bits"], t.get("digest_bits", 16))
        secret = doc.slice(doc.width - t["segment_bits"], doc.width)
        return target, secret, doc
    cipher = get_cipher(t["cipher"])
    bits = t.get("key_bits", cipher.key_widths[0])
    key = _draw_bits(rng, bits)
    plain = _draw_bits(rng, cipher.block_width)
    # fixed values still consume the draws so other trials are unaffected
    if "key_hex" in t:
        key = BitString.from_hex(t["key_hex"], bits)
    if "plain_hex" in t:
        plain = BitString.from_hex(t["plain_hex"], cipher.block_width)
    return make_cipher_target(cipher, key, plain), key, plain


def _draw_bits(rng: np.random.Generator, width: int) -> BitString:
    value = 0
    left = width
    while left > 0:
        chunk = min(32, left)
        value = (value << chunk) | int(rng.integers(0, 1 << chunk))
        left -= chunk
    return BitString(value, width)


# -- running -------------------------------------------------------------------------


def trial_attack_config(spec: ExperimentSpec, trial: int) -> tuple[attack.AttackConfig, BitString, BitString]:
    """Attack config for one trial (the correct shard when a prefix is fixed)."""
    target, secret, public = trial_target(spec, trial)
    p = spec.prefix_width
    cfg = attack.AttackConfig(
        target=target if not p else fix_prefix(target, secret.slice(0, p)),
        ansatz=spec.ansatz_config(),
        optimizer=spec.optimizer_config(),
        encoding=spec.encoding_mode(),
        master_seed=spec.seed,
        trial_index=trial,
        shard=secret.slice(0, p).value if p else None,
    )
    return cfg, secret, public


def run_trial(spec: ExperimentSpec, trial: int) -> TrialRecord:
    cfg, secret, public = trial_attack_config(spec, trial)
    res = attack.run_attack(cfg)
    baseline = None
    if spec.baseline == "brute_force":
        _, baseline = attack.brute_force(cfg.target, trial_rng(spec.seed, trial, 3))
    return TrialRecord(
        trial=trial,
        secret_key_hex=secret.to_hex(),
        plaintext_hex=public.to_hex(),
        iterations=res.iterations,
        measurements=res.measurements,
        success=res.success,
        wall_ms=res.wall_time * 1e3 if spec.record_time else None,
        samples=res.samples,
        baseline_trials=baseline,
    )


def _run_trial_args(args):
    return run_trial(*args)


def run_experiment(spec: ExperimentSpec, jobs: int = 1, write: bool = True, progress=None) -> ExperimentResult:
    """Run every trial (optionally across ``jobs`` processes) and write the outputs.

    Records are always in trial order. ``progress`` is called with each record.
    """
    t0 = time.perf_counter()
    work = [(spec, i) for i in range(spec.trials)]
    records: list[TrialRecord] = []
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for rec in pool.map(_run_trial_args, work):
                records.append(rec)
                if progress:
                    progress(rec)
    else:
        for item in work:
            records.append(_run_trial_args(item))
            if progress:
                progress(records[-1])
    result = ExperimentResult(spec, records, time.perf_counter() - t0)
    if write and spec.output:
        write_outputs(result)
    return result


# -- CSV -------------------------------------------------------------------------------


def _csv_text(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def trials_csv(records: list[TrialRecord]) -> str:
    return _csv_text(TRIAL_COLUMNS, (r.row() for r in records))


def cumulative_averages(values) -> np.ndarray:
    v = np.asarray(values, dtype=float)
    return np.cumsum(v) / np.arange(1, len(v) + 1)


def cumulative_csv(records: list[TrialRecord]) -> str:
    it = cumulative_averages([r.iterations for r in records])
    ms = cumulative_averages([r.measurements for r in records])
    return _csv_text(CUMULATIVE_COLUMNS, ([r.trial, f"{a:.6f}", f"{b:.6f}"] for r, a, b in zip(records, it, ms)))


def baseline_csv(records: list[TrialRecord]) -> str:
    cum = cumulative_averages([r.baseline_trials for r in records])
    return _csv_text(BASELINE_COLUMNS, ([r.trial, r.secret_key_hex, r.baseline_trials, f"{c:.6f}"] for r, c in zip(records, cum)))


def output_paths(spec: ExperimentSpec) -> dict[str, Path]:
    out = dict(spec.output)
    base = Path(out.get("dir", "."))
    prefix = out.get("prefix", "experiment")
    paths = {
        "trials": base / f"{prefix}_trials.csv",
        "cumulative": base / f"{prefix}_cumulative.csv",
        "summary": base / f"{prefix}_summary.json",
    }
    if spec.baseline == "brute_force":
        paths["baseline"] = base / f"{prefix}_baseline.csv"
    return paths


def write_outputs(result: ExperimentResult) -> dict[str, Path]:
    paths = output_paths(result.spec)
    os.makedirs(paths["trials"].parent, exist_ok=True)
    paths["trials"].write_text(trials_csv(result.records))
    paths["cumulative"].write_text(cumulative_csv(result.records))
    if "baseline" in paths:
        paths["baseline"].write_text(baseline_csv(result.records))
    summary = {"config": result.spec.to_dict(), "summary": result.summary()}
    paths["summary"].write_text(json.dumps(summary, indent=2, sort_keys=True) + "\n")
    return paths
