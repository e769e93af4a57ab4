"""
量子内核测试脚本

验证态向量、Pauli 期望值、单次测量抽样与基态求解
"""

import sys
from functools import reduce
from pathlib import Path

import numpy as np
from numpy.testing import assert_allclose

sys.path.insert(0, str(Path(__file__).parent.parent))

from core.ground_state import (
    _lanczos_solve, energy, ground_state, hamiltonian_matrix, solve_ground_state,
)
from core.pauli import (
    ObservableTable, PauliString, apply_pauli, expectation_table, pauli_expectation,
    random_pauli_string, random_pauli_strings,
)
from core.statevector import (
    ShotOutcome, Statevector, haar_random_state, haar_random_states, perturb_expectations, sample_shot,
)
from utils.exceptions import DimensionError, DomainError, InputError, SizeError

MATRICES = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}


def kron_matrix(pauli: PauliString) -> np.ndarray:
    return reduce(np.kron, [MATRICES[letter] for letter in pauli.letters])


def bell_state() -> Statevector:
    return Statevector.from_amplitudes([1, 0, 0, 1])


def test_statevector_validation():
    """测试态向量归一化与长度约束"""
    state = Statevector.basis(2, 3)
    assert state.dim == 4
    assert_allclose(state.probabilities, [0, 0, 0, 1])
    for bad in ([1, 0, 0], [1, 1]):
        try:
            Statevector(1, np.array(bad, dtype=complex))
            assert False, "应当拒绝非法振幅"
        except (DimensionError, DomainError):
            pass
    try:
        state.amplitudes[0] = 1.0
        assert False, "振幅应当只读"
    except ValueError:
        pass


def test_pauli_string_helpers():
    pauli = PauliString.parse(" xIzY ")
    assert str(pauli) == "XIZY"
    assert pauli.n_qubits == 4 and pauli.weight == 3 and not pauli.is_identity
    assert PauliString.identity(3).is_identity
    assert PauliString.from_sites(4, {0: "Z", 1: "Z"}) == PauliString("ZZII")
    assert PauliString.single(3, 2, "X") == PauliString("IIX")
    assert sorted([PauliString("ZI"), PauliString("XY"), PauliString("IX")])[0] == PauliString("IX")
    try:
        PauliString("XQ")
        assert False, "应当拒绝非法字母"
    except DomainError:
        pass


def test_pauli_expectation_basic():
    """测试 |0⟩、Bell 态与 Y 本征态上的期望值"""
    zero = Statevector.basis(1, 0)
    assert pauli_expectation(zero, PauliString("Z")) == 1.0
    assert abs(pauli_expectation(zero, PauliString("X"))) < 1e-12
    assert_allclose(pauli_expectation(bell_state(), PauliString("ZZ")), 1.0, atol=1e-12)
    assert_allclose(pauli_expectation(bell_state(), PauliString("XX")), 1.0, atol=1e-12)
    assert_allclose(pauli_expectation(bell_state(), PauliString("YY")), -1.0, atol=1e-12)
    plus_i = Statevector.from_amplitudes([1, 1j])
    assert_allclose(pauli_expectation(plus_i, PauliString("Y")), 1.0, atol=1e-12)


def test_qubit_ordering():
    """第 0 个字母作用在最高位（与 kron 顺序一致）"""
    state = Statevector.basis(2, 1)  # |01⟩
    assert pauli_expectation(state, PauliString("ZI")) == 1.0
    assert pauli_expectation(state, PauliString("IZ")) == -1.0


def test_apply_pauli_matches_kron():
    rng = np.random.default_rng(7)
    for _ in range(20):
        pauli = random_pauli_string(3, rng)
        psi = haar_random_state(3, rng).amplitudes
        assert_allclose(apply_pauli(psi, pauli), kron_matrix(pauli) @ psi, atol=1e-12)
    block = haar_random_states(2, 3, rng).T
    pauli = PauliString("XY")
    assert_allclose(apply_pauli(block, pauli), kron_matrix(pauli) @ block, atol=1e-12)


def test_expectation_table_matches_scalar():
    rng = np.random.default_rng(11)
    states = [haar_random_state(4, rng) for _ in range(5)]
    observables = random_pauli_strings(4, 6, rng)
    table = expectation_table(states, observables)
    assert table.shape == (5, 6)
    for i, state in enumerate(states):
        for j, observable in enumerate(observables):
            assert_allclose(table[i, j], pauli_expectation(state, observable), atol=1e-12)
    wrapped = ObservableTable.from_states(states, observables)
    assert wrapped.n_candidates == 5 and wrapped.n_observables == 6
    assert_allclose(wrapped.column(2), table[:, 2])


def test_expectation_length_mismatch():
    try:
        pauli_expectation(Statevector.basis(2), PauliString("ZZZ"))
        assert False, "应当抛出 DimensionError"
    except DimensionError:
        pass
    try:
        expectation_table(haar_random_states(2, 2, np.random.default_rng(0)), [])
        assert False, "应当抛出 InputError"
    except InputError:
        pass


def test_haar_single_qubit_moments():
    """n=1 时 ⟨Z⟩ 在 Bloch 球上均匀分布于 [-1, 1]：均值 0，方差 1/3"""
    states = haar_random_states(1, 10_000, np.random.default_rng(2024))
    values = expectation_table(states, [PauliString("Z")])[:, 0]
    std = values.std()
    assert abs(values.mean()) < 4 * std / 100
    assert abs(values.var() - 1.0 / 3.0) / (1.0 / 3.0) < 0.05
    assert_allclose(np.linalg.norm(states, axis=1), 1.0, atol=1e-12)


def test_haar_budget_and_determinism():
    try:
        haar_random_state(15, np.random.default_rng(0))
        assert False, "应当抛出 SizeError"
    except SizeError:
        pass
    a = haar_random_states(3, 4, np.random.default_rng(99))
    b = haar_random_states(3, 4, np.random.default_rng(99))
    assert np.array_equal(a, b)


def test_sample_shot():
    rng = np.random.default_rng(5)
    assert all(sample_shot(1.0, rng) == ShotOutcome.PLUS for _ in range(200))
    assert all(sample_shot(-1.0, rng) == ShotOutcome.MINUS for _ in range(200))
    draws = [int(sample_shot(0.0, rng)) for _ in range(100_000)]
    assert abs(draws.count(1) / len(draws) - 0.5) < 0.005
    try:
        sample_shot(1.5, rng)
        assert False, "应当抛出 DomainError"
    except DomainError:
        pass


def test_random_pauli_string_distribution():
    rng = np.random.default_rng(3)
    singles = {str(random_pauli_string(1, rng)) for _ in range(500)}
    assert singles == {"X", "Y", "Z"}
    counts = {}
    draws = 100_000
    for _ in range(draws):
        word = str(random_pauli_string(2, rng))
        counts[word] = counts.get(word, 0) + 1
    assert len(counts) == 15 and "II" not in counts
    for count in counts.values():
        assert abs(count / draws - 1.0 / 15.0) < 0.005
    assert random_pauli_string(3, rng).n_qubits == 3


def test_perturb_expectations():
    rng = np.random.default_rng(8)
    table = ObservableTable(np.array([[0.999, 0.0], [-0.5, 0.2]]))
    assert perturb_expectations(table, 0.0, rng) is table
    for _ in range(200):
        noisy = perturb_expectations(table, 0.05, rng)
        assert noisy.expectations.max() <= 1.0 and noisy.expectations.min() >= -1.0
    samples = perturb_expectations(np.zeros(100_000), 0.05, rng)
    assert abs(samples.std() - 0.05) < 0.001
    try:
        perturb_expectations(table, -0.1, rng)
        assert False, "应当抛出 DomainError"
    except DomainError:
        pass


def test_ground_state_single_qubit():
    result = solve_ground_state([(-1.0, PauliString("Z"))], 1)
    assert_allclose(result.energy, -1.0, atol=1e-12)
    assert_allclose(result.state.amplitudes, [1.0, 0.0], atol=1e-12)
    assert result.method == "dense"


def test_ground_state_strong_field_ising():
    n = 4
    terms = [(-1.0, PauliString.from_sites(n, {j: "Z", j + 1: "Z"})) for j in range(n - 1)]
    terms += [(-100.0, PauliString.single(n, j, "X")) for j in range(n)]
    state = ground_state(terms, n)
    for j in range(n):
        assert pauli_expectation(state, PauliString.single(n, j, "X")) > 0.999


def test_ground_state_matches_dense_oracle():
    """H = -Z₀Z₁ - 0.5(X₀+X₁) 与独立的 4×4 稠密对角化比较"""
    terms = [(-1.0, PauliString("ZZ")), (-0.5, PauliString("XI")), (-0.5, PauliString("IX"))]
    oracle = -kron_matrix(PauliString("ZZ")) - 0.5 * (kron_matrix(PauliString("XI")) + kron_matrix(PauliString("IX")))
    assert_allclose(hamiltonian_matrix(terms, 2), oracle, atol=1e-14)

    eigenvalues, eigenvectors = np.linalg.eigh(oracle)
    result = solve_ground_state(terms, 2)
    assert_allclose(result.energy, eigenvalues[0], atol=1e-8)
    assert_allclose(result.energy, -np.sqrt(2.0), atol=1e-8)
    assert abs(abs(np.vdot(eigenvectors[:, 0], result.state.amplitudes)) - 1.0) < 1e-8
    assert result.residual < 1e-8
    assert_allclose(energy(terms, result.state), result.energy, atol=1e-10)

    # 相位约定：第一个非零振幅为正实数
    first = result.state.amplitudes[np.argmax(np.abs(result.state.amplitudes) > 1e-8)]
    assert abs(first.imag) < 1e-12 and first.real > 0


def test_lanczos_agrees_with_dense():
    n = 6
    terms = [(-1.0, PauliString.from_sites(n, {j: "Z", j + 1: "Z"})) for j in range(n - 1)]
    terms += [(-1.5, PauliString.single(n, j, "X")) for j in range(n)]
    terms.append((-0.3, PauliString.single(n, 0, "Z")))
    dense = solve_ground_state(terms, n)
    eigenvalue, vector, iterations = _lanczos_solve(terms, n)
    assert_allclose(eigenvalue, dense.energy, atol=1e-8)
    assert iterations > 0
    vector = vector / np.linalg.norm(vector)
    assert abs(abs(np.vdot(vector, dense.state.amplitudes)) - 1.0) < 1e-6


def test_ground_state_errors():
    try:
        ground_state([], 2)
        assert False, "应当抛出 InputError"
    except InputError:
        pass
    try:
        ground_state([(-1.0, PauliString("ZZ"))], 3)
        assert False, "应当抛出 DimensionError"
    except DimensionError:
        pass
    try:
        ground_state([(-1.0, PauliString("Z" * 17))], 17)
        assert False, "应当抛出 SizeError"
    except SizeError:
        pass


def main():
    tests = [
        test_statevector_validation,
        test_pauli_string_helpers,
        test_pauli_expectation_basic,
        test_qubit_ordering,
        test_apply_pauli_matches_kron,
        test_expectation_table_matches_scalar,
        test_expectation_length_mismatch,
        test_haar_single_qubit_moments,
        test_haar_budget_and_determinism,
        test_sample_shot,
        test_random_pauli_string_distribution,
        test_perturb_expectations,
        test_ground_state_single_qubit,
        test_ground_state_strong_field_ising,
        test_ground_state_matches_dense_oracle,
        test_lanczos_agrees_with_dense,
        test_ground_state_errors,
    ]
    print("量子内核测试")
    print("=" * 50)
    failed = 0
    for test in tests:
        try:
            test()
            print(f"✓ {test.__name__}")
        except AssertionError as e:
            failed += 1
            print(f"✗ {test.__name__}: {e}")
    print("=" * 50)
    print(f"{len(tests) - failed}/{len(tests)} 通过")
    return 0 if failed == 0 else 1


if __name__ == "__main__":
    sys.exit(main())
