"""
三种观测量选择策略

argmax 平局时取最小索引（np.argmax 的行为）。
"""

from typing import Optional, Union

import numpy as np

from core.pauli import ObservableTable

from .base_strategy import BaseStrategy, GainObjective, StrategyType
from .belief import BeliefState


class FixedBestStrategy(BaseStrategy):
    """在初始均匀先验下增益最大的可观测量，此后一直测量它"""

    def __init__(self, objective: GainObjective = GainObjective.CANDIDATE):
        super().__init__(StrategyType.FIXED_BEST, objective)
        self.frozen_index: Optional[int] = None

    def _select(self, belief, table, rng):
        if self.frozen_index is None:
            initial = BeliefState.uniform(belief.n_candidates, belief.class_of)
            self.frozen_index = int(np.argmax(self.gains(initial, table)))
            self.logger.debug(f"固定可观测量 {self.frozen_index}")
        return self.frozen_index

    def _on_reset(self):
        self.frozen_index = None


class RandomStrategy(BaseStrategy):
    def __init__(self, objective: GainObjective = GainObjective.CANDIDATE):
        super().__init__(StrategyType.RANDOM, objective)

    def _select(self, belief, table, rng):
        return int(rng.integers(table.n_observables))


class InfoOptimizedStrategy(BaseStrategy):
    """每一发都选当前信念下期望信息增益最大的可观测量，允许重复"""

    def __init__(self, objective: GainObjective = GainObjective.CANDIDATE):
        super().__init__(StrategyType.INFO_OPTIMIZED, objective)

    def _select(self, belief, table, rng):
        return int(np.argmax(self.gains(belief, table)))


_STRATEGY_CLASSES = {
    StrategyType.FIXED_BEST: FixedBestStrategy,
    StrategyType.RANDOM: RandomStrategy,
    StrategyType.INFO_OPTIMIZED: InfoOptimizedStrategy,
}


def create_strategy(strategy: Union[StrategyType, str],
                    objective: GainObjective = GainObjective.CANDIDATE) -> BaseStrategy:
    return _STRATEGY_CLASSES[StrategyType(strategy)](objective)


def select_observable(belief: BeliefState, table, strategy: Union[StrategyType, str],
                      rng: np.random.Generator,
                      objective: GainObjective = GainObjective.CANDIDATE) -> int:
    """无状态的单次选择；fixed-best 的冻结索引只依赖表本身，因此每次重算结果相同"""
    if not isinstance(table, ObservableTable):
        table = ObservableTable(np.atleast_2d(np.asarray(table, dtype=float)))
    return create_strategy(strategy, objective).select(belief, table, rng)
