import itertools

import numpy as np
import pytest

from vqaa import ansatz, encoding, qsim
from vqaa.errors import ConfigError

from conftest import chi2_pvalue


def overlap_sq(a, b):
    return abs(np.vdot(a, b)) ** 2


def test_first_anchor_is_zero():
    a = encoding.tetrahedron_anchors()
    assert np.allclose(a.anchors[0], [1, 0])
    assert a.m == 4 and a.bits_per_qubit == 2


def test_tetrahedron_anchor_amplitudes():
    # |phi_j> = 1/sqrt3 |0> + sqrt(2/3) e^{i alpha_j} |1>, alpha = 2pi/3, 4pi/3, 0
    a = encoding.tetrahedron_anchors().anchors
    for j, alpha in zip((1, 2, 3), (2 * np.pi / 3, 4 * np.pi / 3, 0.0)):
        assert a[j][0] == pytest.approx(1 / np.sqrt(3))
        assert a[j][1] == pytest.approx(np.sqrt(2 / 3) * complex(np.cos(alpha), np.sin(alpha)))


def test_overlap_first_last():
    a = encoding.tetrahedron_anchors().anchors
    assert overlap_sq(a[0], a[3]) == pytest.approx(1 / 3, abs=1e-12)


def test_all_pairwise_overlaps_one_third():
    a = encoding.tetrahedron_anchors().anchors
    for i, j in itertools.combinations(range(4), 2):
        assert abs(overlap_sq(a[i], a[j]) - 1 / 3) < 1e-10
    assert np.allclose(np.linalg.norm(a, axis=1), 1, atol=1e-12)


def test_sphere_anchors_delegates():
    assert np.allclose(encoding.sphere_anchors(4).anchors, encoding.tetrahedron_anchors().anchors)


def test_sphere_anchors_16_spread():
    s = encoding.sphere_anchors(16)
    assert s.m == 16 and s.bits_per_qubit == 4
    assert np.allclose(np.linalg.norm(s.anchors, axis=1), 1, atol=1e-12)
    v = s.bloch_vectors()
    worst = min(
        np.degrees(np.arccos(np.clip(v[i] @ v[j], -1, 1))) for i, j in itertools.combinations(range(16), 2)
    )
    assert worst >= 40


def test_bloch_vectors_match_states():
    s = encoding.sphere_anchors(16)
    for vec, state in zip(encoding.fibonacci_sphere(16), s.anchors):
        rho = np.outer(state, state.conj())
        assert np.allclose(s.bloch_vectors()[list(s.anchors[:, 0]).index(state[0])], vec)
        assert np.allclose(rho[0, 0] - rho[1, 1], vec[2])


@pytest.mark.parametrize("m", [2, 5, 8])
def test_sphere_anchors_unsupported(m):
    with pytest.raises(ConfigError):
        encoding.sphere_anchors(m)


def test_orthogonal_decode_basis_state(rng):
    # bits 101: qubit0=1, qubit1=0, qubit2=1 -> index 0b101 = 5
    s = qsim.from_amplitudes(np.eye(8)[5])
    for _ in range(20):
        assert str(encoding.decode_key(s, encoding.Orthogonal(), rng)) == "101"


def test_nonorthogonal_decode_product():
    anchors = encoding.tetrahedron_anchors()
    state = anchors.product_state([1, 2])  # phi_2 on qubit 0, phi_3 on qubit 1
    key = encoding.decode_key(state, encoding.NonOrthogonal(anchors))
    assert str(key) == "0110"


@pytest.mark.parametrize("m", [4, 16])
def test_round_trip(m, rng):
    anchors = encoding.sphere_anchors(m)
    mode = encoding.NonOrthogonal(anchors)
    n = 3
    for _ in range(500):
        idx = rng.integers(m, size=n)
        key = encoding.decode_key(anchors.product_state(idx), mode)
        expected = 0
        for j in idx:
            expected = (expected << anchors.bits_per_qubit) | int(j)
        assert key.value == expected


def test_fidelity_gap_tetrahedron():
    anchors = encoding.tetrahedron_anchors()
    for j in range(4):
        rho = np.outer(anchors.anchors[j], anchors.anchors[j].conj())
        f = encoding.anchor_fidelities(rho, anchors)
        assert f[j] == pytest.approx(1)
        assert np.all(np.delete(f, j) <= 1 / 3 + 1e-10)


def test_bloch_argmax_equals_fidelity_argmax(rng):
    cfg = ansatz.AnsatzConfig(3)
    anchors = encoding.sphere_anchors(16)
    for _ in range(100):
        st = ansatz.evaluate(cfg, rng.uniform(-np.pi, np.pi, ansatz.param_count(cfg)))
        key = encoding.decode_key(st, encoding.NonOrthogonal(anchors))
        expected = [
            int(np.argmax(encoding.anchor_fidelities(qsim.reduced_density_matrix(st, q), anchors)))
            for q in range(3)
        ]
        assert [key.slice(4 * q, 4 * q + 4).value for q in range(3)] == expected


def test_decode_deterministic(rng):
    cfg = ansatz.AnsatzConfig(5)
    mode = encoding.make_encoding("nonorthogonal", 4)
    st = ansatz.evaluate(cfg, rng.uniform(-np.pi, np.pi, ansatz.param_count(cfg)))
    keys = {encoding.decode_key(st, mode, rng) for _ in range(20)}
    assert len(keys) == 1


def test_maximally_mixed_ties_to_lowest_index():
    bell = qsim.from_amplitudes([2**-0.5, 0, 0, 2**-0.5])
    key = encoding.decode_key(bell, encoding.make_encoding("nonorthogonal", 4))
    assert key.value == 0


def test_orthogonal_marginal_chi2(rng):
    cfg = ansatz.AnsatzConfig(3)
    st = ansatz.evaluate(cfg, rng.uniform(-np.pi, np.pi, ansatz.param_count(cfg)))
    draws = [qsim.bits_to_index(encoding.decode_key(st, encoding.Orthogonal(), rng)) for _ in range(20_000)]
    assert chi2_pvalue(np.bincount(draws, minlength=8), qsim.probabilities(st)) > 0.001


def test_width_mismatch():
    with pytest.raises(ConfigError):
        encoding.decode_key(qsim.new_state(3), encoding.make_encoding("nonorthogonal", 4), key_width=10)
