"""Finding a second message segment with the same truncated digest.

The target keeps a short document fixed except for its last 12 bits and asks
for a different 12-bit tail with the same 8-bit FNV-1a digest. The original
tail is excluded, so the search has to find a genuine collision.
"""
from vqaa import AnsatzConfig, AttackConfig, BitString, OptimizerConfig, make_hash_collision_target, run_attack
from vqaa.targets import splice, toy_hash

doc = BitString.from_bytes(b"PAY 0100 EUR")
target = make_hash_collision_target(doc, 12, t=8)
res = run_attack(AttackConfig(target, AnsatzConfig(12, n_layers=2), OptimizerConfig(max_iterations=2000), master_seed=4))
forged = splice(doc, doc.width - 12, res.recovered_key)
print("original:", doc.to_bytes(), "digest", toy_hash(doc, 8).to_hex())
print("forged:  ", forged.to_bytes(), "digest", toy_hash(forged, 8).to_hex())
print(f"found after {res.iterations} iterations ({res.evaluations} key trials)")
