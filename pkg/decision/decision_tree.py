"""
量子决策树主循环

识别：在候选态中找出未知态；分类：对未见过的态给出类别标签。
循环：选择可观测量 → 对测试态抽样一次 ±1 → 贝叶斯更新 → 记录 p 值，
直到最大（候选或类别）概率达到 p_threshold 或用完 max_shots。
"""

from dataclasses import dataclass, field
from typing import Callable, List, Optional, Tuple, Union

import numpy as np

from config.settings import DEFAULT_MAX_SHOTS, DEFAULT_P_THRESHOLD, DEFAULT_PROB_FLOOR
from core.pauli import ObservableTable
from core.statevector import ShotOutcome, sample_shot
from utils.exceptions import ConfigurationError, DegenerateEvidenceError, DimensionError, DomainError

from .base_strategy import BaseStrategy, GainObjective, StrategyType
from .belief import BeliefState, bayes_update, class_probabilities
from .strategies import create_strategy

ShotSource = Callable[[int, np.random.Generator], ShotOutcome]


@dataclass(frozen=True)
class RunConfig:
    """单次运行配置"""
    p_threshold: float = DEFAULT_P_THRESHOLD
    max_shots: int = DEFAULT_MAX_SHOTS
    strategy: StrategyType = StrategyType.INFO_OPTIMIZED
    prob_floor: float = DEFAULT_PROB_FLOOR

    def __post_init__(self):
        object.__setattr__(self, 'strategy', StrategyType(self.strategy))
        if not 0.5 < self.p_threshold < 1.0:
            raise ConfigurationError(f"p_threshold 必须位于 (0.5, 1)，实际为 {self.p_threshold}")
        if self.max_shots <= 0:
            raise ConfigurationError(f"max_shots 必须大于0，实际为 {self.max_shots}")
        if not 0.0 <= self.prob_floor < 1.0:
            raise ConfigurationError(f"prob_floor 必须位于 [0, 1)，实际为 {self.prob_floor}")


@dataclass(frozen=True)
class ShotRecord:
    shot: int
    observable_index: int
    outcome: int
    posterior_max: float
    p_value: float


@dataclass
class RunTrace:
    """一次运行的逐发记录"""
    initial_p_value: float
    max_shots: int
    records: List[ShotRecord] = field(default_factory=list)
    prediction: int = -1
    converged: bool = False
    failed: bool = False
    error: Optional[str] = None
    true_label: Optional[int] = None

    @property
    def p_values(self) -> List[float]:
        return [record.p_value for record in self.records]

    @property
    def shots_used(self) -> int:
        return len(self.records)

    @property
    def shots_to_threshold(self) -> Optional[int]:
        return self.shots_used if self.converged else None

    @property
    def correct(self) -> Optional[bool]:
        if self.true_label is None:
            return None
        return self.prediction == self.true_label

    def p_value_series(self, max_shots: Optional[int] = None) -> np.ndarray:
        """第0发为先验 p 值；结束后以终值填充到 max_shots"""
        length = (max_shots if max_shots is not None else self.max_shots) + 1
        values = [self.initial_p_value] + self.p_values
        series = np.full(length, values[-1])
        series[:min(len(values), length)] = values[:length]
        return series


def _as_table(table) -> ObservableTable:
    if isinstance(table, ObservableTable):
        return table
    return ObservableTable(np.atleast_2d(np.asarray(table, dtype=float)))


def _candidate_statistic(belief: BeliefState) -> Tuple[float, int]:
    return belief.max_probability, belief.argmax


def _class_statistic(belief: BeliefState) -> Tuple[float, int]:
    probs = class_probabilities(belief)
    return float(probs.max()), int(np.argmax(probs))


def _expectation_source(expectations: np.ndarray) -> ShotSource:
    def source(j: int, rng: np.random.Generator) -> ShotOutcome:
        return sample_shot(float(expectations[j]), rng)
    return source


def _run_loop(table: ObservableTable, belief: BeliefState, strategy: BaseStrategy,
              shot_source: ShotSource, config: RunConfig, rng: np.random.Generator,
              select_rng: np.random.Generator, statistic) -> RunTrace:
    p_max, prediction = statistic(belief)
    trace = RunTrace(initial_p_value=1.0 - p_max, max_shots=config.max_shots)
    shot = 0
    while p_max < config.p_threshold and shot < config.max_shots:
        j = strategy.select(belief, table, select_rng)
        outcome = shot_source(j, rng)
        try:
            belief = bayes_update(belief, table.column(j), outcome, config.prob_floor)
        except DegenerateEvidenceError as e:
            trace.failed = True
            trace.error = e.message
            break
        shot += 1
        p_max, prediction = statistic(belief)
        trace.records.append(ShotRecord(shot, j, int(outcome), p_max, 1.0 - p_max))

    trace.prediction = prediction
    trace.converged = (not trace.failed) and p_max >= config.p_threshold
    return trace


def run_identification(table, true_index: int, config: RunConfig, rng: np.random.Generator,
                       select_rng: Optional[np.random.Generator] = None) -> RunTrace:
    """
    在候选态中识别真实态，测量结果按真实态在表中的期望值抽样

    Args:
        table: (N, J) 期望值表
        true_index: 真实态的候选索引
        rng: 测量抽样随机流
        select_rng: 随机策略使用的选择随机流，默认与 rng 共用
    """
    table = _as_table(table)
    if not 0 <= true_index < table.n_candidates:
        raise DomainError(f"真实态索引 {true_index} 超出候选范围 [0, {table.n_candidates})")
    strategy = create_strategy(config.strategy, GainObjective.CANDIDATE)
    trace = _run_loop(
        table, BeliefState.uniform(table.n_candidates), strategy,
        _expectation_source(table.expectations[true_index]),
        config, rng, select_rng if select_rng is not None else rng, _candidate_statistic,
    )
    trace.true_label = true_index
    return trace


def run_classification(table, test_source: Union[np.ndarray, ShotSource], class_of,
                       config: RunConfig, rng: np.random.Generator,
                       select_rng: Optional[np.random.Generator] = None,
                       true_class: Optional[int] = None) -> RunTrace:
    """
    对未见过的测试态做类别判定，按类别熵的期望增益选择可观测量

    Args:
        table: 训练态 (N, J) 期望值表
        test_source: 测试态在 J 个可观测量上的期望值，或 (j, rng) -> ±1 的抽样函数
        class_of: 每个训练态的类别标签
    """
    table = _as_table(table)
    if class_of is None:
        raise ConfigurationError("分类需要类别标签")
    if callable(test_source):
        shot_source = test_source
    else:
        expectations = np.asarray(test_source, dtype=float).reshape(-1)
        if expectations.size != table.n_observables:
            raise DimensionError(
                f"测试态期望值数量 {expectations.size} 与可观测量数量 {table.n_observables} 不一致"
            )
        shot_source = _expectation_source(expectations)
    strategy = create_strategy(config.strategy, GainObjective.CLASS)
    trace = _run_loop(
        table, BeliefState.uniform(table.n_candidates, class_of), strategy, shot_source,
        config, rng, select_rng if select_rng is not None else rng, _class_statistic,
    )
    trace.true_label = true_class
    return trace
