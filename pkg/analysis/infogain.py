"""
期望信息增益的解析近似

二阶 Taylor 展开下，均匀先验的单发信息增益
    I ≈ V/(2 ln2) + E²/(2 ln2)·(1 - 2/N)
其中 E、V 为候选集上期望值的（有偏）均值与方差。对 Haar 随机态，
    E[⟨O⟩] = Tr(O)/2ⁿ,  V ≈ Tr(O²)/(2²ⁿ-1) - Tr²(O)/2²ⁿ
有偏方差带来 (N-1)/N 因子，于是 E[I_s] ≈ V^Haar/(2 ln2)·(1 - 1/N)。

这些近似只用于分析与预测，决策循环中的增益一律精确计算。
"""

from dataclasses import dataclass
from typing import List, Tuple

import numpy as np

from config.settings import MAX_HAAR_QUBITS
from core.pauli import PauliString
from decision.belief import BeliefState, expected_info_gain, expected_info_gains
from utils.exceptions import DimensionError, DomainError, SampleSizeError, SizeError

LN2 = np.log(2.0)


@dataclass(frozen=True)
class SampleStats:
    """候选集上的样本矩：有偏（除以N）与无偏（除以N-1）"""
    mean_biased: float
    var_biased: float
    mean_unbiased: float
    var_unbiased: float
    count: int


@dataclass(frozen=True)
class HaarMoments:
    """
    Haar 随机态上 ⟨O⟩ 的一、二阶矩

    variance 为近似公式 Tr(O²)/(d²-1) - Tr²(O)/d²（截断到 ≥ 0），
    exact_variance 为精确二阶矩 (Tr²(O)+Tr(O²))/(d(d+1)) - Tr²(O)/d²。
    """
    mean: float
    variance: float
    exact_variance: float


def sample_moments(values) -> SampleStats:
    values = np.asarray(values, dtype=float).reshape(-1)
    if values.size < 2:
        raise SampleSizeError(f"无偏方差至少需要2个样本，实际为 {values.size}")
    mean = float(values.mean())
    return SampleStats(
        mean_biased=mean,
        var_biased=float(values.var(ddof=0)),
        mean_unbiased=mean,
        var_unbiased=float(values.var(ddof=1)),
        count=int(values.size),
    )


def approx_info_gain(stats: SampleStats, n_candidates: int) -> float:
    """
    均匀先验下单发信息增益的二阶近似（比特），使用有偏 V、E

    精确互信息展开到二阶只含 V/(2 ln2)；E²(1-2/N) 项仅在 N=2 或 E=0 时消失，
    其他情况下近似值偏大
    """
    if n_candidates < 2:
        raise SampleSizeError(f"候选态数量至少为2，实际为 {n_candidates}")
    return (stats.var_biased / (2 * LN2)
            + stats.mean_biased ** 2 / (2 * LN2) * (1.0 - 2.0 / n_candidates))


def haar_moments_pauli(observable: PauliString, n_qubits: int) -> HaarMoments:
    """非恒等 Pauli 串：Tr(P)=0，Tr(P²)=2ⁿ，迹均解析给出"""
    if observable.n_qubits != n_qubits:
        raise DimensionError(f"Pauli串长度 {observable.n_qubits} 与量子比特数 {n_qubits} 不一致")
    if observable.is_identity:
        raise DomainError("恒等串不是有效的测量可观测量")
    dim = 2.0 ** n_qubits
    return HaarMoments(mean=0.0, variance=dim / (dim ** 2 - 1.0), exact_variance=1.0 / (dim + 1.0))


def haar_moments_general(matrix) -> HaarMoments:
    """一般厄米算符的 Haar 矩"""
    matrix = np.asarray(matrix, dtype=np.complex128)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise DimensionError(f"算符必须是方阵，实际形状 {matrix.shape}")
    if not np.allclose(matrix, matrix.conj().T):
        raise DomainError("算符不是厄米的")
    dim = float(matrix.shape[0])
    trace = float(np.trace(matrix).real)
    trace_sq = float(np.sum(np.abs(matrix) ** 2))
    mean = trace / dim
    printed = trace_sq / (dim ** 2 - 1.0) - trace ** 2 / dim ** 2
    exact = (trace ** 2 + trace_sq) / (dim * (dim + 1.0)) - mean ** 2
    return HaarMoments(mean=mean, variance=max(printed, 0.0), exact_variance=max(exact, 0.0))


def expected_sample_info_gain(haar_variance: float, n_candidates: int) -> float:
    """E[I_s] ≈ V^Haar/(2 ln2)·(1 - 1/N)"""
    if n_candidates < 2:
        raise SampleSizeError(f"候选态数量至少为2，实际为 {n_candidates}")
    if haar_variance < 0:
        raise DomainError(f"方差不能为负数: {haar_variance}")
    return haar_variance / (2 * LN2) * (1.0 - 1.0 / n_candidates)


def predicted_scaling(n_min: int, n_max: int, n_candidates: int = 100) -> List[Tuple[int, float]]:
    """非恒等 Pauli 串在 n ∈ [n_min, n_max] 上的预测平均单发增益"""
    if not 1 <= n_min <= n_max <= MAX_HAAR_QUBITS:
        raise SizeError(f"要求 1 ≤ n_min ≤ n_max ≤ {MAX_HAAR_QUBITS}，实际为 [{n_min}, {n_max}]")
    scaling = []
    for n in range(n_min, n_max + 1):
        moments = haar_moments_pauli(PauliString("Z" * n), n)
        scaling.append((n, expected_sample_info_gain(moments.variance, n_candidates)))
    return scaling


def exact_info_gain_uniform(column) -> float:
    """均匀先验下的精确单发增益"""
    column = np.asarray(column, dtype=float).reshape(-1)
    return expected_info_gain(BeliefState.uniform(column.size), column)


def exact_info_gains_uniform(expectations) -> np.ndarray:
    expectations = np.asarray(expectations, dtype=float)
    return expected_info_gains(BeliefState.uniform(expectations.shape[0]), expectations)
