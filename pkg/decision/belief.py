"""
贝叶斯信念维护与期望信息增益

p(i|±1) = p(i)(1 ± ⟨O⟩_i) / Σ_k p(k)(1 ± ⟨O⟩_k)
I(O) = H_0 - [p(+1)H(+1) + p(-1)H(-1)]

标量版本逐分支调用 bayes_update；向量化版本一次计算全部可观测量，供决策循环使用，两者逐列一致。
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np

from config.settings import EVIDENCE_FLOOR, PROBABILITY_TOLERANCE
from core.statevector import ShotOutcome
from utils.exceptions import ConfigurationError, DegenerateEvidenceError, DimensionError, DomainError


@dataclass(frozen=True)
class BeliefState:
    """候选态上的概率分布，可选类别标签 class_of[i] ∈ [0, n_c)"""
    probs: np.ndarray
    class_of: Optional[np.ndarray] = None

    def __post_init__(self):
        probs = np.array(self.probs, dtype=float).reshape(-1)
        if probs.size == 0:
            raise DimensionError("信念分布不能为空")
        if np.any(probs < 0):
            raise DomainError("概率不能为负数")
        if abs(probs.sum() - 1.0) > PROBABILITY_TOLERANCE:
            raise DomainError(f"概率之和必须为1，实际为 {probs.sum():.12f}")
        probs.setflags(write=False)
        object.__setattr__(self, 'probs', probs)

        if self.class_of is not None:
            class_of = np.array(self.class_of, dtype=np.int64).reshape(-1)
            if class_of.shape != probs.shape:
                raise DimensionError(f"类别标签长度 {class_of.size} 与候选态数量 {probs.size} 不一致")
            if np.any(class_of < 0):
                raise DomainError("类别标签必须为非负整数")
            class_of.setflags(write=False)
            object.__setattr__(self, 'class_of', class_of)

    @classmethod
    def uniform(cls, n_candidates: int, class_of=None) -> "BeliefState":
        return cls(np.full(n_candidates, 1.0 / n_candidates), class_of)

    @property
    def n_candidates(self) -> int:
        return self.probs.size

    @property
    def n_classes(self) -> int:
        if self.class_of is None:
            return 0
        return int(self.class_of.max()) + 1

    @property
    def max_probability(self) -> float:
        return float(self.probs.max())

    @property
    def argmax(self) -> int:
        return int(np.argmax(self.probs))

    @property
    def p_value(self) -> float:
        return 1.0 - self.max_probability

    def with_probs(self, probs: np.ndarray) -> "BeliefState":
        return BeliefState(probs, self.class_of)


def _check_column(belief: BeliefState, column) -> np.ndarray:
    column = np.asarray(column, dtype=float).reshape(-1)
    if column.size != belief.n_candidates:
        raise DimensionError(f"期望值列长度 {column.size} 与候选态数量 {belief.n_candidates} 不一致")
    return column


def _check_table(belief: BeliefState, expectations) -> np.ndarray:
    table = getattr(expectations, 'expectations', expectations)
    table = np.asarray(table, dtype=float)
    if table.ndim == 1:
        table = table[:, None]
    if table.shape[0] != belief.n_candidates:
        raise DimensionError(f"期望值表行数 {table.shape[0]} 与候选态数量 {belief.n_candidates} 不一致")
    return table


def _is_constant(column: np.ndarray) -> bool:
    return bool(np.all(column == column[0]))


def shannon_entropy(probs) -> float:
    """H = -Σ p log2 p，约定 0·log2(0) = 0"""
    probs = np.asarray(probs, dtype=float)
    positive = probs[probs > 0]
    return float(max(-np.sum(positive * np.log2(positive)), 0.0))


def _column_entropies(probs: np.ndarray) -> np.ndarray:
    safe = np.where(probs > 0, probs, 1.0)
    return np.maximum(-np.sum(probs * np.log2(safe), axis=0), 0.0)


def bayes_update(belief: BeliefState, column, outcome, floor: float = 0.0) -> BeliefState:
    """
    单次测量后的后验

    Args:
        belief: 先验
        column: 各候选态在所测可观测量上的期望值
        outcome: ±1
        floor: 概率下限，>0 时更新后逐元素取 max(p, floor) 再归一化

    Raises:
        DegenerateEvidenceError: 全部概率质量都在结果概率为零的候选态上
    """
    column = _check_column(belief, column)
    sign = int(outcome)
    if sign not in (1, -1):
        raise DomainError(f"测量结果必须为 ±1，实际为 {outcome}")
    weights = belief.probs * (1.0 + sign * column)
    denominator = weights.sum()
    if denominator < EVIDENCE_FLOOR:
        raise DegenerateEvidenceError(
            f"结果 {sign:+d} 在当前信念下的概率为 {denominator / 2:.3e}，无法更新"
        )
    if _is_constant(column):
        return belief
    posterior = weights / denominator
    if floor > 0:
        posterior = np.maximum(posterior, floor)
        posterior = posterior / posterior.sum()
    return belief.with_probs(posterior)


def entropy(belief: BeliefState) -> float:
    return shannon_entropy(belief.probs)


def outcome_probability(belief: BeliefState, column) -> float:
    """p(+1) = Σ_i p(i)(1 + ⟨O⟩_i)/2；p(-1) = 1 - p(+1)"""
    column = _check_column(belief, column)
    return float(np.clip(np.dot(belief.probs, (1.0 + column) / 2.0), 0.0, 1.0))


def _expected_gain(belief: BeliefState, column, measure) -> float:
    column = _check_column(belief, column)
    if _is_constant(column):
        return 0.0
    p_plus = outcome_probability(belief, column)
    expected = 0.0
    for outcome, p_outcome in ((ShotOutcome.PLUS, p_plus), (ShotOutcome.MINUS, 1.0 - p_plus)):
        if p_outcome * 2 < EVIDENCE_FLOOR:
            continue
        expected += p_outcome * measure(bayes_update(belief, column, outcome))
    return max(measure(belief) - expected, 0.0)


def expected_info_gain(belief: BeliefState, column) -> float:
    """候选态层面的期望信息增益（比特）"""
    return _expected_gain(belief, column, entropy)


def _vectorized_gains(belief: BeliefState, expectations, class_matrix: Optional[np.ndarray]) -> np.ndarray:
    table = _check_table(belief, expectations)
    prior = belief.probs[:, None]
    if class_matrix is None:
        prior_entropy = entropy(belief)
    else:
        prior_entropy = shannon_entropy(class_matrix.T @ belief.probs)

    expected = np.zeros(table.shape[1])
    for sign in (1.0, -1.0):
        weights = prior * (1.0 + sign * table)
        normalizer = weights.sum(axis=0)
        valid = normalizer >= EVIDENCE_FLOOR
        posterior = weights / np.where(valid, normalizer, 1.0)
        if class_matrix is not None:
            posterior = class_matrix.T @ posterior
        expected += np.where(valid, normalizer / 2.0 * _column_entropies(posterior), 0.0)

    gains = np.maximum(prior_entropy - expected, 0.0)
    constant = np.all(table == table[:1, :], axis=0)
    gains[constant] = 0.0
    return gains


def expected_info_gains(belief: BeliefState, expectations) -> np.ndarray:
    """对期望值表 (N, J) 的每一列计算期望信息增益"""
    return _vectorized_gains(belief, expectations, None)


def _class_matrix(belief: BeliefState) -> np.ndarray:
    if belief.class_of is None:
        raise ConfigurationError("信念状态缺少类别标签，无法计算类别概率")
    matrix = np.zeros((belief.n_candidates, belief.n_classes))
    matrix[np.arange(belief.n_candidates), belief.class_of] = 1.0
    return matrix


def class_probabilities(belief: BeliefState) -> np.ndarray:
    """p_class(c) = Σ_{i∈c} p(i)"""
    if belief.class_of is None:
        raise ConfigurationError("信念状态缺少类别标签，无法计算类别概率")
    return np.bincount(belief.class_of, weights=belief.probs, minlength=belief.n_classes)


def class_entropy(belief: BeliefState) -> float:
    return shannon_entropy(class_probabilities(belief))


def expected_class_info_gain(belief: BeliefState, column) -> float:
    """类别熵层面的期望信息增益；后验仍在候选态层面更新"""
    _class_matrix(belief)
    return _expected_gain(belief, column, class_entropy)


def expected_class_info_gains(belief: BeliefState, expectations) -> np.ndarray:
    return _vectorized_gains(belief, expectations, _class_matrix(belief))
