"""Improved-VQAA key search.

One trial:

1. draw initial angles uniformly from (-pi, pi]
2. prepare the ansatz state, read a key (sample or anchor decode), encrypt
   classically, score by Hamming distance
3. if the distance is 0 the key is verified and the run stops; otherwise the
   optimiser takes a step, spending one measurement per probe
4. if ``patience`` steps pass without a new best sampled cost, the angles are
   re-drawn (a fresh start inside the same trial; counters keep running)

Accounting: ``iterations`` counts optimiser steps, ``measurements`` counts the
probes those steps spent (so ``measurements == iterations * probes_per_step``
exactly), and ``samples`` counts the extra reads at the start of each step.
Every read, probe or sample, is a key trial and may end the run.
"""
from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np

from . import ansatz, optimizer
from .bits import BitString
from .cost import attack_cost
from .encoding import EncodingMode, Orthogonal, decode_key
from .errors import ConfigError
from .seeding import trial_rng
from .targets import AttackTarget, fix_prefix

MAX_SHARD_PREFIX = 16


@dataclass
class AttackConfig:
    target: AttackTarget
    ansatz: ansatz.AnsatzConfig
    optimizer: optimizer.OptimizerConfig = field(default_factory=optimizer.OptimizerConfig)
    encoding: EncodingMode = field(default_factory=Orthogonal)
    master_seed: int = 0
    max_iterations: int | None = None
    trial_index: int = 0
    shard: int | None = None
    # > 0 only for configs handed to run_hybrid_attack: the register covers the suffix
    prefix_width: int = 0

    def __post_init__(self):
        if not 0 <= self.prefix_width < self.target.key_width:
            raise ConfigError(f"prefix width must be in 0..{self.target.key_width - 1}")
        width = self.encoding.key_width(self.ansatz.n_qubits)
        need = self.target.key_width - self.prefix_width
        if width != need:
            raise ConfigError(
                f"{self.ansatz.n_qubits} qubits x {self.encoding.bits_per_qubit} bits/qubit = {width}"
                f" key bits, but target {self.target.name!r} needs {need}"
            )

    @property
    def iteration_cap(self) -> int:
        return self.optimizer.max_iterations if self.max_iterations is None else self.max_iterations


@dataclass
class AttackResult:
    success: bool
    recovered_key: BitString | None
    iterations: int
    measurements: int
    samples: int
    param_count: int
    wall_time: float
    cost_trace: list[tuple[int, int]] = field(default_factory=list)

    @property
    def evaluations(self) -> int:
        """Every key trial: probes plus samples."""
        return self.measurements + self.samples

    def to_dict(self, include_trace: bool = False) -> dict:
        d = {
            "success": self.success,
            "recovered_key_hex": None if self.recovered_key is None else self.recovered_key.to_hex(),
            "recovered_key_bits": None if self.recovered_key is None else str(self.recovered_key),
            "iterations": self.iterations,
            "measurements": self.measurements,
            "samples": self.samples,
            "evaluations": self.evaluations,
            "param_count": self.param_count,
            "wall_time": self.wall_time,
        }
        if include_trace:
            d["cost_trace"] = [list(x) for x in self.cost_trace]
        return d


class _Oracle:
    """Prepares, reads and scores one parameter vector; remembers the first hit."""

    def __init__(self, config: AttackConfig, rng: np.random.Generator):
        self.config = config
        self.rng = rng
        self.found: BitString | None = None
        self.last_distance = -1

    def __call__(self, params) -> float:
        cfg = self.config
        state = ansatz.evaluate(cfg.ansatz, params)
        key = decode_key(state, cfg.encoding, self.rng)
        sample = attack_cost(cfg.target, key)
        self.last_distance = sample.distance
        if sample.distance == 0 and self.found is None and _verify(cfg.target, key):
            self.found = key
        return sample.distance / cfg.target.output_width


def _verify(target: AttackTarget, key: BitString) -> bool:
    # recompute without the memo table
    return key.value not in target.excluded and target.evaluate_fn(key) == target.known_output


def run_attack(config: AttackConfig) -> AttackResult:
    """Run one trial; deterministic in ``(master_seed, trial_index)``."""
    if config.prefix_width:
        raise ConfigError("config fixes a key prefix; use run_hybrid_attack")
    t0 = time.perf_counter()
    n_params = ansatz.param_count(config.ansatz)
    cap = config.iteration_cap
    if cap <= 0:
        return AttackResult(False, None, 0, 0, 0, n_params, time.perf_counter() - t0)

    stream = (1,) if config.shard is None else (2, config.shard)
    rng = trial_rng(config.master_seed, config.trial_index, *stream)
    counter = optimizer.MeasurementCounter()
    oracle = _Oracle(config, rng)
    params = rng.uniform(-np.pi, np.pi, n_params)
    cost = oracle(params)
    samples = 1
    trace = [(0, oracle.last_distance)]
    best, stale = cost, 0
    patience = config.optimizer.patience
    while oracle.found is None and counter.iterations < cap:
        new = optimizer.step(params, cost, oracle, config.optimizer, counter, rng)
        counter.iterations += 1
        if oracle.found is not None:
            break
        stale += 1
        if patience and stale >= patience:
            new = rng.uniform(-np.pi, np.pi, n_params)
            best, stale = np.inf, 0
        elif np.array_equal(new, params):
            # flat landscape and deterministic decode: nudge so the walk cannot freeze
            new = optimizer.wrap_angles(params + rng.normal(0.0, config.optimizer.fd_step, n_params))
        params = new
        cost = oracle(params)
        samples += 1
        trace.append((counter.iterations, oracle.last_distance))
        if cost < best:
            best, stale = cost, 0

    return AttackResult(
        success=oracle.found is not None,
        recovered_key=oracle.found,
        iterations=counter.iterations,
        measurements=counter.total_measurements,
        samples=samples,
        param_count=n_params,
        wall_time=time.perf_counter() - t0,
        cost_trace=trace,
    )


# -- hybrid (sharded) attack -------------------------------------------------------


@dataclass
class HybridResult:
    prefix_width: int
    shards: dict[int, AttackResult]
    recovered_key: BitString | None

    @property
    def success(self) -> bool:
        return self.recovered_key is not None

    @property
    def n_shards(self) -> int:
        return 1 << self.prefix_width

    @property
    def mean_shard_iterations(self) -> float:
        return float(np.mean([r.iterations for r in self.shards.values()]))

    @property
    def mean_shard_measurements(self) -> float:
        return float(np.mean([r.measurements for r in self.shards.values()]))

    @property
    def aggregate_iterations(self) -> float:
        return self.mean_shard_iterations * self.n_shards

    @property
    def aggregate_measurements(self) -> float:
        """Mean shard cost times the number of shards, whether or not all of them ran."""
        return self.mean_shard_measurements * self.n_shards

    def to_dict(self) -> dict:
        return {
            "success": self.success,
            "recovered_key_hex": None if self.recovered_key is None else self.recovered_key.to_hex(),
            "prefix_width": self.prefix_width,
            "shards_run": len(self.shards),
            "mean_shard_iterations": self.mean_shard_iterations,
            "mean_shard_measurements": self.mean_shard_measurements,
            "aggregate_iterations": self.aggregate_iterations,
            "aggregate_measurements": self.aggregate_measurements,
        }


def shard_config(config: AttackConfig, prefix: BitString) -> AttackConfig:
    """Config for the shard whose key starts with ``prefix``; the ansatz covers the suffix."""
    return replace(config, target=fix_prefix(config.target, prefix), prefix_width=0)


def _run_shard(args):
    config, prefix = args
    cfg = replace(shard_config(config, prefix), shard=prefix.value)
    return prefix.value, run_attack(cfg)


def run_hybrid_attack(
    config: AttackConfig,
    prefix_width: int,
    prefixes=None,
    stop_on_success: bool = False,
    jobs: int = 1,
) -> HybridResult:
    """Split the key space by its leading ``prefix_width`` bits and attack each part.

    ``config.ansatz``/``config.encoding`` must cover the suffix only, so
    ``config.prefix_width`` has to equal ``prefix_width``. ``prefixes``
    restricts which shards actually run (e.g. only the correct one, as a stand-in
    for a full parallel run); accounting still multiplies by all ``2**prefix_width``.
    """
    full_width = config.target.key_width
    if not 0 < prefix_width < full_width:
        raise ConfigError(f"prefix width must be in 1..{full_width - 1}, got {prefix_width}")
    if config.prefix_width != prefix_width:
        raise ConfigError(f"config was built for a {config.prefix_width}-bit prefix, not {prefix_width}")
    if prefixes is None:
        if prefix_width > MAX_SHARD_PREFIX:
            raise ConfigError(f"2^{prefix_width} shards is beyond the budget; pass explicit prefixes")
        prefixes = range(1 << prefix_width)
    prefixes = [BitString(int(p), prefix_width) for p in prefixes]

    shards: dict[int, AttackResult] = {}
    recovered = None
    work = [(config, p) for p in prefixes]
    if jobs > 1 and not stop_on_success:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run_shard, work))
    else:
        results = []
        for item in work:
            results.append(_run_shard(item))
            if stop_on_success and results[-1][1].success:
                break
    for value, res in results:
        shards[value] = res
        if res.success and recovered is None:
            recovered = BitString(value, prefix_width).concat(res.recovered_key)
    return HybridResult(prefix_width, shards, recovered)


# -- classical baseline --------------------------------------------------------------


def key_order(width: int, rng: np.random.Generator):
    """Every key of ``width`` bits exactly once, in random order."""
    size = 1 << width
    if width <= 20:
        yield from (int(k) for k in rng.permutation(size))
        return
    # random affine bijection on Z/2^w
    a = int(rng.integers(0, size // 2)) * 2 + 1
    b = int(rng.integers(0, size))
    for i in range(size):
        yield (a * i + b) % size


def brute_force(target: AttackTarget, rng=None) -> tuple[BitString | None, int]:
    """Random-order exhaustive search; returns (key, keys tried)."""
    if target.key_width > 32:
        raise ConfigError("exhaustive search is limited to 32-bit key spaces")
    rng = np.random.default_rng(rng) if not isinstance(rng, np.random.Generator) else rng
    trials = 0
    for k in key_order(target.key_width, rng):
        trials += 1
        key = BitString(k, target.key_width)
        if target.is_solution(key):
            return key, trials
    return None, trials
