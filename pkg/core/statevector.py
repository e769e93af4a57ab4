"""
稠密态向量

纯态以 2^n 维复振幅表示；Haar 采样、单次测量抽样与期望值噪声扰动均显式接收随机数发生器。
"""

from dataclasses import dataclass
from enum import IntEnum

import numpy as np

from config.settings import MAX_HAAR_QUBITS, NORM_TOLERANCE
from utils.exceptions import DimensionError, DomainError, SizeError


class ShotOutcome(IntEnum):
    """单次测量结果，只能为 +1 或 -1"""
    PLUS = 1
    MINUS = -1


@dataclass(frozen=True)
class Statevector:
    """归一化纯态，构造后不可变"""
    n_qubits: int
    amplitudes: np.ndarray

    def __post_init__(self):
        if self.n_qubits < 1:
            raise SizeError(f"量子比特数必须 ≥ 1，实际为 {self.n_qubits}")
        amplitudes = np.array(self.amplitudes, dtype=np.complex128).reshape(-1)
        if amplitudes.shape[0] != 1 << self.n_qubits:
            raise DimensionError(
                f"{self.n_qubits} 比特态需要 {1 << self.n_qubits} 个振幅，实际为 {amplitudes.shape[0]}"
            )
        norm = float(np.vdot(amplitudes, amplitudes).real)
        if abs(norm - 1.0) > NORM_TOLERANCE:
            raise DomainError(f"态向量未归一化: Σ|a|² = {norm:.12f}")
        amplitudes.setflags(write=False)
        object.__setattr__(self, 'amplitudes', amplitudes)

    @classmethod
    def from_amplitudes(cls, amplitudes, normalize: bool = True) -> "Statevector":
        amplitudes = np.asarray(amplitudes, dtype=np.complex128).reshape(-1)
        n_qubits = int(round(np.log2(amplitudes.shape[0])))
        if normalize:
            amplitudes = amplitudes / np.linalg.norm(amplitudes)
        return cls(n_qubits, amplitudes)

    @classmethod
    def basis(cls, n_qubits: int, index: int = 0) -> "Statevector":
        amplitudes = np.zeros(1 << n_qubits, dtype=np.complex128)
        amplitudes[index] = 1.0
        return cls(n_qubits, amplitudes)

    @property
    def dim(self) -> int:
        return 1 << self.n_qubits

    @property
    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2


def _check_haar_budget(n_qubits: int):
    if not 1 <= n_qubits <= MAX_HAAR_QUBITS:
        raise SizeError(f"Haar 采样要求 1 ≤ n ≤ {MAX_HAAR_QUBITS}，实际为 {n_qubits}")


def haar_random_states(n_qubits: int, count: int, rng: np.random.Generator) -> np.ndarray:
    """
    批量 Haar 随机态：2^n 个独立标准复高斯后归一化

    Returns:
        np.ndarray: 形状 (count, 2^n) 的振幅矩阵
    """
    _check_haar_budget(n_qubits)
    dim = 1 << n_qubits
    gaussians = rng.standard_normal((count, dim)) + 1j * rng.standard_normal((count, dim))
    return gaussians / np.linalg.norm(gaussians, axis=1, keepdims=True)


def haar_random_state(n_qubits: int, rng: np.random.Generator) -> Statevector:
    return Statevector(n_qubits, haar_random_states(n_qubits, 1, rng)[0])


def outcome_plus_probability(expectation: float) -> float:
    """p(+1|i) = (1 + ⟨O⟩_i) / 2"""
    if abs(expectation) > 1.0:
        raise DomainError(f"期望值必须位于 [-1, 1]，实际为 {expectation}")
    return (1.0 + expectation) / 2.0


def sample_shot(expectation: float, rng: np.random.Generator) -> ShotOutcome:
    """伯努利抽样一次 ±1 测量结果"""
    p_plus = outcome_plus_probability(expectation)
    return ShotOutcome.PLUS if rng.random() < p_plus else ShotOutcome.MINUS


def perturb_expectations(table, sigma: float, rng: np.random.Generator):
    """
    对期望值加高斯噪声 N(0, sigma) 后截断到 [-1, 1]，用于模拟硬件估计误差

    Args:
        table: ObservableTable 或期望值数组
        sigma: 噪声标准差，0 时原样返回
    """
    if sigma < 0:
        raise DomainError(f"噪声标准差不能为负数: {sigma}")
    values = table.expectations if hasattr(table, 'expectations') else np.asarray(table, dtype=float)
    if sigma == 0:
        return table
    noisy = np.clip(values + rng.normal(0.0, sigma, size=values.shape), -1.0, 1.0)
    if hasattr(table, 'with_expectations'):
        return table.with_expectations(noisy)
    return noisy
