import numpy as np
import pytest

from vqaa import ansatz, equivalence
from vqaa.equivalence import ToyCipher
from vqaa.errors import ConfigError


@pytest.mark.parametrize("bits", [2, 3])
def test_tvd_over_random_draws(bits):
    assert equivalence.max_tvd(bits, 100, seed=bits) < 1e-10


def test_distributions_are_normalised(rng):
    cfg = ansatz.AnsatzConfig(2)
    c = equivalence.random_toy_cipher(2, 3, rng)
    p = rng.uniform(-np.pi, np.pi, ansatz.param_count(cfg))
    joint = equivalence.joint_register_distribution(c, cfg, p, plaintext=5)
    sampled = equivalence.sampled_key_distribution(c, cfg, p, plaintext=5)
    assert joint.shape == sampled.shape == (8,)
    assert joint.sum() == pytest.approx(1) and sampled.sum() == pytest.approx(1)
    assert equivalence.total_variation(joint, sampled) < 1e-10


def test_identity_cipher_returns_plaintext(rng):
    cfg = ansatz.AnsatzConfig(2)
    p = rng.uniform(-np.pi, np.pi, ansatz.param_count(cfg))
    joint = equivalence.joint_register_distribution(equivalence.identity_toy_cipher(2, 2), cfg, p, plaintext=3)
    assert np.allclose(joint, [0, 0, 0, 1])


def test_xor_cipher_uniform_superposition_is_uniform():
    # H on every qubit, U = identity, CNOT ring keeps the uniform state uniform
    cfg = ansatz.AnsatzConfig(3, 1, extra_cnots_per_layer=0)
    xor = ToyCipher(tuple(tuple(x ^ k for x in range(8)) for k in range(8)), 3, 3)
    params = np.zeros(ansatz.param_count(cfg))
    for dist in (
        equivalence.joint_register_distribution(xor, cfg, params, 2),
        equivalence.sampled_key_distribution(xor, cfg, params, 2),
    ):
        assert np.allclose(dist, 1 / 8)


def test_non_bijective_rejected():
    with pytest.raises(ConfigError):
        ToyCipher(((0, 0), (0, 1)), 1, 1)
    with pytest.raises(ConfigError):
        ToyCipher(((0, 1),), 1, 1)


def test_total_variation_basics():
    p = np.array([0.5, 0.5, 0.0])
    q = np.array([0.0, 0.5, 0.5])
    assert equivalence.total_variation(p, p) == 0
    assert equivalence.total_variation(p, q) == pytest.approx(0.5)
