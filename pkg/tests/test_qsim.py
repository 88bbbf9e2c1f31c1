import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from vqaa import qsim
from vqaa.errors import ConfigError

from conftest import chi2_pvalue, random_state

angles = st.floats(-10, 10, allow_nan=False)


def test_new_state_one_qubit():
    assert np.array_equal(qsim.new_state(1).amplitudes, [1, 0])


def test_new_state_three_qubits():
    s = qsim.new_state(3)
    assert s.amplitudes.shape == (8,)
    assert s.amplitudes[0] == 1 and not s.amplitudes[1:].any()


@pytest.mark.parametrize("n", [0, 17])
def test_new_state_range(n):
    with pytest.raises(ConfigError):
        qsim.new_state(n)


def test_hadamard():
    s = qsim.apply_gate(qsim.new_state(1), qsim.H(0))
    assert np.allclose(s.amplitudes, [2**-0.5, 2**-0.5])


def test_u_pi_flips():
    s = qsim.apply_gate(qsim.new_state(1), qsim.U(0, np.pi, 0, 0))
    assert abs(s.amplitudes[1]) ** 2 == pytest.approx(1)


def test_bell_construction():
    s = qsim.apply_gate(qsim.new_state(2), qsim.H(0))  # (|00> + |q0=1>)/sqrt2
    qsim.apply_gate(s, qsim.CNOT(0, 1))
    assert np.allclose(s.amplitudes, [2**-0.5, 0, 0, 2**-0.5])


def test_hadamard_is_u_up_to_phase():
    h = qsim.H(0).matrix()
    u = qsim.u_matrix(np.pi / 2, 0, np.pi)
    assert abs(abs(np.trace(h.conj().T @ u)) - 2) < 1e-12


def test_cnot_acts_on_requested_qubits():
    # qubit 2 set, CNOT(2 -> 0) should set qubit 0: index 4 -> 5
    s = qsim.from_amplitudes(np.eye(8)[4])
    qsim.apply_gate(s, qsim.CNOT(2, 0))
    assert s.amplitudes[5] == 1


def test_gate_errors():
    with pytest.raises(ConfigError):
        qsim.CNOT(1, 1)
    with pytest.raises(ConfigError):
        qsim.apply_gate(qsim.new_state(2), qsim.H(2))


def test_u_unitary_many(rng):
    for theta, phi, lam in rng.uniform(-2 * np.pi, 2 * np.pi, size=(1000, 3)):
        u = qsim.u_matrix(theta, phi, lam)
        assert np.abs(u.conj().T @ u - np.eye(2)).max() < 1e-12


@settings(max_examples=200)
@given(angles, angles, angles)
def test_u_unitary_property(theta, phi, lam):
    u = qsim.u_matrix(theta, phi, lam)
    assert np.abs(u.conj().T @ u - np.eye(2)).max() < 1e-12


def test_norm_after_long_sequence(rng):
    n = 8
    s = qsim.new_state(n)
    for _ in range(10_000):
        r = rng.random()
        if r < 0.3:
            g = qsim.H(int(rng.integers(n)))
        elif r < 0.7:
            g = qsim.U(int(rng.integers(n)), *rng.uniform(-np.pi, np.pi, 3))
        else:
            c, t = rng.choice(n, 2, replace=False)
            g = qsim.CNOT(int(c), int(t))
        qsim.apply_gate(s, g)
    assert abs(s.norm_sq() - 1) < 1e-8


def test_probabilities_basic():
    assert np.allclose(qsim.probabilities(qsim.new_state(1)), [1, 0])
    plus = qsim.from_amplitudes([2**-0.5, 2**-0.5])
    assert np.allclose(qsim.probabilities(plus), [0.5, 0.5])


def test_probabilities_sum(rng):
    for n in range(1, 7):
        assert abs(qsim.probabilities(random_state(n, rng)).sum() - 1) < 1e-10


def test_sample_zero_state(rng):
    s = qsim.new_state(3)
    assert all(qsim.sample(s, rng).value == 0 for _ in range(100))


def test_sample_uniform_two_qubits(rng):
    s = qsim.new_state(2)
    qsim.apply_gate(s, qsim.H(0))
    qsim.apply_gate(s, qsim.H(1))
    counts = np.bincount([qsim.sample_index(s, rng) for _ in range(40_000)], minlength=4)
    assert np.all(np.abs(counts / 40_000 - 0.25) < 0.01)


def test_sample_chi2_random_ansatz_state(rng):
    from vqaa import ansatz

    cfg = ansatz.AnsatzConfig(4)
    state = ansatz.evaluate(cfg, rng.uniform(-np.pi, np.pi, ansatz.param_count(cfg)))
    draws = [qsim.sample_index(state, rng) for _ in range(100_000)]
    counts = np.bincount(draws, minlength=16)
    assert chi2_pvalue(counts, qsim.probabilities(state)) > 0.001


@settings(max_examples=20, deadline=None)
@given(st.integers(1, 5), st.integers(0, 2**32 - 1))
def test_sample_chi2_property(n, seed):
    rng = np.random.default_rng(seed)
    state = random_state(n, rng)
    counts = np.bincount([qsim.sample_index(state, rng) for _ in range(5000)], minlength=1 << n)
    assert chi2_pvalue(counts, qsim.probabilities(state)) > 0.001


def test_sample_deterministic_given_seed():
    s = random_state(4, np.random.default_rng(1))
    a = [qsim.sample(s, np.random.default_rng(5)) for _ in range(3)]
    b = [qsim.sample(s, np.random.default_rng(5)) for _ in range(3)]
    assert a == b


def test_sample_bit_order_qubit0_first():
    # only qubit 0 excited -> index 1 -> bits "100"
    s = qsim.from_amplitudes(np.eye(8)[1])
    assert str(qsim.sample(s, 0)) == "100"


def test_rdm_product_state():
    # qubit 0 in |0>, qubit 1 arbitrary
    psi = np.kron([0.6, 0.8j], [1, 0])
    rho = qsim.reduced_density_matrix(qsim.from_amplitudes(psi), 0)
    assert np.allclose(rho, [[1, 0], [0, 0]])


@pytest.mark.parametrize("q", [0, 1])
def test_rdm_bell(q):
    bell = qsim.from_amplitudes([2**-0.5, 0, 0, 2**-0.5])
    assert np.allclose(qsim.reduced_density_matrix(bell, q), np.eye(2) / 2)


def test_rdm_random_states(rng):
    for _ in range(200):
        s = random_state(3, rng)
        for q in range(3):
            rho = qsim.reduced_density_matrix(s, q)
            assert abs(np.trace(rho) - 1) < 1e-10
            assert np.abs(rho - rho.conj().T).max() < 1e-12
            ev = np.linalg.eigvalsh(rho)
            assert ev.min() >= -1e-10 and ev.max() <= 1 + 1e-10
            purity = np.trace(rho @ rho).real
            assert 0.5 - 1e-10 <= purity <= 1 + 1e-10


def test_rdm_matches_explicit_partial_trace(rng):
    s = random_state(3, rng)
    full = np.outer(s.amplitudes, s.amplitudes.conj()).reshape([2] * 6)
    # axes: (q2, q1, q0, q2', q1', q0')
    rho_q1 = np.einsum("aibajb->ij", full)
    assert np.allclose(qsim.reduced_density_matrix(s, 1), rho_q1)


def test_rdm_bad_index():
    with pytest.raises(ConfigError):
        qsim.reduced_density_matrix(qsim.new_state(2), 5)


def test_index_bits_roundtrip():
    for k in range(32):
        assert qsim.bits_to_index(qsim.index_to_bits(k, 5)) == k
