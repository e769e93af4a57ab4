"""
Hamiltonian 基态求解

H = Σ c_k P_k。n ≤ MAX_DENSE_QUBITS 时稠密对角化，更大系统使用 ARPACK Lanczos（固定容差与确定性初始向量）。
"""

from dataclasses import dataclass
from typing import Sequence, Tuple

import numpy as np
from scipy.sparse.linalg import ArpackNoConvergence, LinearOperator, eigsh

from config.settings import (
    LANCZOS_MAX_ITERATIONS, LANCZOS_TOLERANCE, MAX_DENSE_QUBITS, MAX_ITERATIVE_QUBITS,
    PHASE_CUTOFF, RESIDUAL_TOLERANCE,
)
from utils.exceptions import DimensionError, InputError, SizeError, SolverError
from utils.logger import Logger

from .pauli import PauliString, apply_pauli, pauli_action
from .statevector import Statevector

Term = Tuple[float, PauliString]

logger = Logger("GroundStateSolver")


@dataclass(frozen=True)
class GroundStateResult:
    """基态求解结果"""
    state: Statevector
    energy: float
    residual: float
    method: str         # "dense" 或 "lanczos"
    iterations: int


def _validate_terms(terms: Sequence[Term], n_qubits: int):
    if not terms:
        raise InputError("Hamiltonian 项列表为空")
    for coefficient, pauli in terms:
        if pauli.n_qubits != n_qubits:
            raise DimensionError(f"项 {pauli} 的长度与量子比特数 {n_qubits} 不一致")
        if np.iscomplexobj(coefficient):
            raise InputError(f"项 {pauli} 的系数必须为实数以保证厄米性")


def hamiltonian_matrix(terms: Sequence[Term], n_qubits: int) -> np.ndarray:
    """稠密 Hamiltonian 矩阵：P|b> = phase(b)|b^x>，逐项累加到 H[b^x, b]"""
    _validate_terms(terms, n_qubits)
    dim = 1 << n_qubits
    matrix = np.zeros((dim, dim), dtype=np.complex128)
    rows = np.arange(dim)
    for coefficient, pauli in terms:
        perm, phase = pauli_action(pauli)
        # perm 是置换，行 c 只接收来自列 perm[c] 的一个元素
        matrix[rows, perm] += coefficient * phase
    return matrix


def apply_hamiltonian(terms: Sequence[Term], vector: np.ndarray) -> np.ndarray:
    result = np.zeros_like(vector, dtype=np.complex128)
    for coefficient, pauli in terms:
        result += coefficient * apply_pauli(vector, pauli)
    return result


def energy(terms: Sequence[Term], state: Statevector) -> float:
    """⟨ψ|H|ψ⟩"""
    _validate_terms(terms, state.n_qubits)
    return float(np.vdot(state.amplitudes, apply_hamiltonian(terms, state.amplitudes)).real)


def _fix_phase(vector: np.ndarray) -> np.ndarray:
    """第一个模长 > PHASE_CUTOFF 的振幅取为正实数"""
    vector = vector / np.linalg.norm(vector)
    pivot = int(np.argmax(np.abs(vector) > PHASE_CUTOFF))
    anchor = vector[pivot]
    vector = vector * (np.conj(anchor) / abs(anchor))
    vector[pivot] = abs(vector[pivot])
    return vector


def _dense_solve(terms: Sequence[Term], n_qubits: int) -> Tuple[float, np.ndarray, int]:
    eigenvalues, eigenvectors = np.linalg.eigh(hamiltonian_matrix(terms, n_qubits))
    return float(eigenvalues[0]), eigenvectors[:, 0], 0


def _lanczos_solve(terms: Sequence[Term], n_qubits: int) -> Tuple[float, np.ndarray, int]:
    dim = 1 << n_qubits
    matvec_calls = [0]

    def matvec(v):
        matvec_calls[0] += 1
        return apply_hamiltonian(terms, np.asarray(v).reshape(-1))

    operator = LinearOperator(
        (dim, dim),
        matvec=matvec,
        dtype=np.complex128,
    )
    start_rng = np.random.default_rng(0)
    v0 = start_rng.standard_normal(dim) + 1j * start_rng.standard_normal(dim)
    try:
        eigenvalues, eigenvectors = eigsh(
            operator, k=1, which='SA', tol=LANCZOS_TOLERANCE, v0=v0, maxiter=LANCZOS_MAX_ITERATIONS,
        )
    except ArpackNoConvergence as e:
        raise SolverError(
            f"Lanczos 在 {LANCZOS_MAX_ITERATIONS} 次迭代内未收敛", iterations=matvec_calls[0],
        ) from e
    return float(eigenvalues[0]), eigenvectors[:, 0], matvec_calls[0]


def solve_ground_state(terms: Sequence[Term], n_qubits: int) -> GroundStateResult:
    """
    求最低本征值对应的本征向量

    Raises:
        InputError: 项列表为空
        SizeError: 超出迭代求解预算
        SolverError: 迭代不收敛或残差超限
    """
    terms = list(terms)
    _validate_terms(terms, n_qubits)
    if not 1 <= n_qubits <= MAX_ITERATIVE_QUBITS:
        raise SizeError(f"基态求解要求 1 ≤ n ≤ {MAX_ITERATIVE_QUBITS}，实际为 {n_qubits}")

    if n_qubits <= MAX_DENSE_QUBITS:
        method = "dense"
        eigenvalue, vector, iterations = _dense_solve(terms, n_qubits)
    else:
        method = "lanczos"
        eigenvalue, vector, iterations = _lanczos_solve(terms, n_qubits)

    vector = _fix_phase(vector)
    residual = float(np.linalg.norm(apply_hamiltonian(terms, vector) - eigenvalue * vector))
    if residual >= RESIDUAL_TOLERANCE:
        raise SolverError(f"基态残差 {residual:.3e} 超过 {RESIDUAL_TOLERANCE:.0e}", iterations=iterations)

    logger.debug(f"{method} 求解完成: n={n_qubits}, E0={eigenvalue:.10f}, 残差={residual:.2e}")
    return GroundStateResult(
        state=Statevector(n_qubits, vector),
        energy=eigenvalue,
        residual=residual,
        method=method,
        iterations=iterations,
    )


def ground_state(terms: Sequence[Term], n_qubits: int) -> Statevector:
    return solve_ground_state(terms, n_qubits).state
