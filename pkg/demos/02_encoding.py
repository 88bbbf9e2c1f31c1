"""Packing two (or four) key bits into one qubit.

Four single-qubit states with pairwise overlap 1/3 sit on the corners of a
tetrahedron in the Bloch sphere. Reading a qubit means picking the anchor its
reduced density matrix is closest to, so five qubits carry a 10-bit key.
"""
import itertools

import numpy as np

from vqaa import ansatz, encoding

tetra = encoding.tetrahedron_anchors()
print("tetrahedron anchors (Bloch vectors):")
for j, v in enumerate(tetra.bloch_vectors()):
    print(f"  {j:02b}: ({v[0]:+.3f}, {v[1]:+.3f}, {v[2]:+.3f})")
print("pairwise |<a|b>|^2:",
      sorted({round(float(abs(np.vdot(a, b)) ** 2), 12) for a, b in itertools.combinations(tetra.anchors, 2)}))

mode = encoding.NonOrthogonal(tetra)
state = tetra.product_state([2, 0, 3, 1, 1])
print("product state of anchors 2,0,3,1,1 decodes to", encoding.decode_key(state, mode))

# a random circuit output decodes to some key; the same angles always give the same key
cfg = ansatz.AnsatzConfig(5)
rng = np.random.default_rng(1)
params = rng.uniform(-np.pi, np.pi, ansatz.param_count(cfg))
psi = ansatz.evaluate(cfg, params)
print("random circuit decodes to", encoding.decode_key(psi, mode), "(deterministic)")

sixteen = encoding.sphere_anchors(16)
v = sixteen.bloch_vectors()
closest = min(np.degrees(np.arccos(np.clip(a @ b, -1, 1))) for a, b in itertools.combinations(v, 2))
print(f"16-state set: 4 bits per qubit, closest pair {closest:.1f} degrees apart on the sphere")
