"""Why S-AES is hard for this search: the cost says nothing about the key.

For S-DES, keys one bit away from the secret produce ciphertexts that are
closer (in Hamming distance) to the real one than random keys do. For S-AES
the average cost is the same 8 bits at every key distance, so a local search
has no slope to follow and behaves like random sampling.
"""
import numpy as np

from vqaa import BitString, make_cipher_target
from vqaa.cost import key_cost

rng = np.random.default_rng(0)
for name, kw, bw in (("sdes", 10, 8), ("saes", 16, 16)):
    by_dist = {}
    for _ in range(30):
        secret = BitString(int(rng.integers(1 << kw)), kw)
        target = make_cipher_target(name, secret, BitString(int(rng.integers(1 << bw)), bw))
        for k in rng.integers(0, 1 << kw, 400):
            key = BitString(int(k), kw)
            by_dist.setdefault((key ^ secret).popcount(), []).append(key_cost(target, key))
        for bit in range(kw):
            key = BitString(secret.value ^ (1 << bit), kw)
            by_dist.setdefault(1, []).append(key_cost(target, key))
    row = "  ".join(f"{d}:{np.mean(v):.2f}" for d, v in sorted(by_dist.items()) if len(v) > 20)
    print(f"{name} mean cost by key distance -> {row}")
    print(f"  (a random {bw}-bit output is {bw / 2:.1f} bits away on average)")

# with one known pair, more than one key usually fits
counts = []
for _ in range(20):
    k, p = (BitString(int(x), 16) for x in rng.integers(0, 1 << 16, 2))
    t = make_cipher_target("saes", k, p)
    counts.append(sum(t.evaluate(BitString(c, 16)) == t.known_output for c in range(1 << 16)))
print(f"S-AES keys consistent with one pair: mean {np.mean(counts):.2f} (min {min(counts)}, max {max(counts)})")
