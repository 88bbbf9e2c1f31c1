"""Splitting a 32-bit Blowfish key space into shards.

Fix the first 20 key bits, leaving a 12-bit suffix that three qubits with a
16-state encoding can hold. A full attack would run all 2^20 shards in
parallel; here only the shard holding the secret key is simulated, and the
aggregate cost multiplies the shard cost by the number of shards.
"""
import numpy as np

from vqaa import AnsatzConfig, AttackConfig, BitString, OptimizerConfig, make_cipher_target, make_encoding
from vqaa.attack import run_hybrid_attack

rng = np.random.default_rng(5)
secret = BitString(int(rng.integers(1 << 32)), 32)
plain = BitString(int(rng.integers(1 << 62)), 64)
target = make_cipher_target("blowfish", secret, plain)
cfg = AttackConfig(target, AnsatzConfig(3, n_layers=3), OptimizerConfig(max_iterations=4096),
                   make_encoding("nonorthogonal", 16), master_seed=1, prefix_width=20)
res = run_hybrid_attack(cfg, 20, prefixes=[secret.slice(0, 20).value])
print(f"secret {secret.to_hex()}  recovered {res.recovered_key.to_hex() if res.success else None}")
print(f"shard: {res.mean_shard_iterations:.0f} iterations, {res.mean_shard_measurements:.0f} measurements")
print(f"all 2^20 shards: {res.aggregate_measurements:.3e} measurements")
