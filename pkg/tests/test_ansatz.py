import numpy as np
import pytest
from functools import reduce

from vqaa import ansatz, encoding, qsim
from vqaa.ansatz import AnsatzConfig, Slot
from vqaa.errors import ConfigError


@pytest.mark.parametrize(
    "cfg, count",
    [
        (AnsatzConfig(5, 3), 30),
        (AnsatzConfig(4, 3), 24),
        (AnsatzConfig(8, 3), 48),
        (AnsatzConfig(1, 1), 2),
        (AnsatzConfig(6, 1), 12),
        (AnsatzConfig(4, 2, lambda_zero=False), 24),
    ],
)
def test_param_count(cfg, count):
    assert ansatz.param_count(cfg) == count


def test_two_qubit_one_layer_template():
    t = ansatz.build_template(AnsatzConfig(2, 1, extra_cnots_per_layer=0))
    assert t == [qsim.H(0), qsim.H(1), Slot(0, 0), Slot(1, 2), qsim.CNOT(0, 1), qsim.CNOT(1, 0)]


def test_template_deterministic():
    cfg = AnsatzConfig(6, 3, cnot_seed=99)
    assert ansatz.build_template(cfg) == ansatz.build_template(cfg)


def test_template_depends_on_seed():
    a = ansatz.build_template(AnsatzConfig(6, 3, cnot_seed=1))
    b = ansatz.build_template(AnsatzConfig(6, 3, cnot_seed=2))
    assert a != b


def test_cnot_count():
    # per layer: 2(n-1) ring CNOTs + 4 extra
    assert ansatz.cnot_count(AnsatzConfig(4, 3, extra_cnots_per_layer=4)) == 3 * (2 * 3 + 4)


def test_hadamard_only_in_first_layer():
    t = ansatz.build_template(AnsatzConfig(3, 3))
    h_positions = [i for i, g in enumerate(t) if isinstance(g, qsim.Gate) and g.kind == "H"]
    assert h_positions == [0, 1, 2]


def test_extra_cnots_valid():
    for g in ansatz.build_template(AnsatzConfig(5, 4, cnot_seed=7)):
        if isinstance(g, qsim.Gate) and g.kind == "CNOT":
            assert g.qubits[0] != g.qubits[1]


def test_single_qubit_has_no_cnots():
    assert ansatz.cnot_count(AnsatzConfig(1, 3)) == 0


def test_zero_params_one_qubit_is_plus():
    st = ansatz.evaluate(AnsatzConfig(1, 1), np.zeros(2))
    assert np.allclose(st.amplitudes, [2**-0.5, 2**-0.5])


def test_norm(rng):
    for n in (2, 4, 6):
        cfg = AnsatzConfig(n)
        for _ in range(20):
            st = ansatz.evaluate(cfg, rng.uniform(-np.pi, np.pi, ansatz.param_count(cfg)))
            assert abs(st.norm_sq() - 1) < 1e-10


def _op(m, q, n):
    """Full 2^n operator for a 2x2 matrix on qubit q (qubit 0 = rightmost kron factor)."""
    factors = [m if k == q else np.eye(2) for k in reversed(range(n))]
    return reduce(np.kron, factors)


def _cnot_op(c, t, n):
    dim = 1 << n
    out = np.zeros((dim, dim))
    for i in range(dim):
        out[i ^ (((i >> c) & 1) << t), i] = 1
    return out


def test_matches_matrix_product_oracle(rng):
    n = 2
    cfg = AnsatzConfig(n, 1, extra_cnots_per_layer=0)
    params = np.array([np.pi, 0.0, 0.4, 1.1])  # qubit 0 gets U(pi, 0), qubit 1 something generic
    h = np.array([[1, 1], [1, -1]]) / np.sqrt(2)
    u0 = qsim.u_matrix(np.pi, 0.0)
    u1 = qsim.u_matrix(0.4, 1.1)
    M = _cnot_op(1, 0, n) @ _cnot_op(0, 1, n) @ _op(u1, 1, n) @ _op(u0, 0, n) @ _op(h, 1, n) @ _op(h, 0, n)
    expected = M @ np.eye(4)[0]
    got = ansatz.evaluate(cfg, params).amplitudes
    assert np.abs(np.abs(got) ** 2 - np.abs(expected) ** 2).max() < 1e-10
    assert abs(abs(np.vdot(expected, got)) - 1) < 1e-10


def test_matches_oracle_random_with_extras(rng):
    n = 3
    cfg = AnsatzConfig(n, 2, lambda_zero=False, cnot_seed=5)
    params = rng.uniform(-np.pi, np.pi, ansatz.param_count(cfg))
    psi = np.eye(1 << n)[0].astype(complex)
    for g in ansatz.build_template(cfg):
        if isinstance(g, Slot):
            psi = _op(qsim.u_matrix(*params[g.index : g.index + 3]), g.qubit, n) @ psi
        elif g.kind == "H":
            psi = _op(g.matrix(), g.qubits[0], n) @ psi
        else:
            psi = _cnot_op(*g.qubits, n) @ psi
    assert abs(abs(np.vdot(psi, ansatz.evaluate(cfg, params).amplitudes)) - 1) < 1e-10


def test_fused_matches_gate_by_gate(rng):
    cfg = AnsatzConfig(5, 3)
    params = rng.uniform(-np.pi, np.pi, ansatz.param_count(cfg))
    a = ansatz.evaluate(cfg, params).amplitudes
    b = ansatz.evaluate_gates(cfg, params).amplitudes
    assert np.abs(a - b).max() < 1e-12


def test_evaluate_pure(rng):
    cfg = AnsatzConfig(4)
    params = rng.uniform(-np.pi, np.pi, ansatz.param_count(cfg))
    assert np.array_equal(ansatz.evaluate(cfg, params).amplitudes, ansatz.evaluate(cfg, params).amplitudes)


def test_param_length_checked():
    with pytest.raises(ConfigError):
        ansatz.evaluate(AnsatzConfig(2, 1), np.zeros(3))


def test_expressivity_reaches_all_basis_states(rng):
    cfg = AnsatzConfig(3)
    hit = set()
    for _ in range(10_000):
        st = ansatz.evaluate(cfg, rng.uniform(-np.pi, np.pi, ansatz.param_count(cfg)))
        hit.add(int(np.argmax(qsim.probabilities(st))))
        if len(hit) == 8:
            break
    assert hit == set(range(8))


def test_nonorthogonal_reaches_every_sdes_key(rng):
    cfg = AnsatzConfig(5)
    mode = encoding.make_encoding("nonorthogonal", 4)
    seen = set()
    for _ in range(20_000):
        st = ansatz.evaluate(cfg, rng.uniform(-np.pi, np.pi, ansatz.param_count(cfg)))
        seen.add(encoding.decode_key(st, mode).value)
    assert len(seen) == 1024


def test_config_validation():
    with pytest.raises(ConfigError):
        AnsatzConfig(0)
    with pytest.raises(ConfigError):
        AnsatzConfig(2, 0)
    with pytest.raises(ConfigError):
        AnsatzConfig.from_dict({"n_qubits": 2, "bogus": 1})


def test_config_dict_round_trip():
    cfg = AnsatzConfig(4, 2, cnot_seed=3, lambda_zero=False, extra_cnots_per_layer=1)
    assert AnsatzConfig.from_dict(cfg.to_dict()) == cfg
