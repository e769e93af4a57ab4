"""
观测量选择策略抽象类

定义了所有选择策略必须实现的接口和通用功能
"""

from abc import ABC, abstractmethod
from enum import Enum
from typing import Any, Dict, Optional

import numpy as np

from core.pauli import ObservableTable
from utils.logger import Logger

from .belief import BeliefState, expected_class_info_gains, expected_info_gains


class StrategyType(Enum):
    """选择策略枚举"""
    FIXED_BEST = "fixed-best"            # 首轮增益最大的可观测量，之后固定
    RANDOM = "random"                    # 每次均匀随机
    INFO_OPTIMIZED = "info-optimized"    # 每次选当前期望增益最大者


class GainObjective(Enum):
    """增益所针对的熵"""
    CANDIDATE = "candidate"     # 候选态熵（识别）
    CLASS = "class"             # 类别熵（分类）


class BaseStrategy(ABC):
    """
    基础选择策略抽象类

    所有策略都应该继承这个类并实现 _select
    """

    def __init__(self, strategy_type: StrategyType, objective: GainObjective = GainObjective.CANDIDATE):
        """
        Args:
            strategy_type: 策略类型
            objective: 增益目标（候选态或类别）
        """
        self.strategy_type = strategy_type
        self.objective = objective
        self.logger = Logger(f"Strategy_{strategy_type.value}")
        self.total_selections = 0
        self.last_index: Optional[int] = None

    @property
    def name(self) -> str:
        return self.strategy_type.value

    def gains(self, belief: BeliefState, table: ObservableTable) -> np.ndarray:
        """按目标计算全部可观测量的期望信息增益"""
        if self.objective == GainObjective.CLASS:
            return expected_class_info_gains(belief, table)
        return expected_info_gains(belief, table)

    def select(self, belief: BeliefState, table: ObservableTable, rng: np.random.Generator) -> int:
        """
        选择下一次要测量的可观测量

        Returns:
            int: 可观测量索引
        """
        index = int(self._select(belief, table, rng))
        self.total_selections += 1
        self.last_index = index
        return index

    @abstractmethod
    def _select(self, belief: BeliefState, table: ObservableTable, rng: np.random.Generator) -> int:
        pass

    def reset(self):
        self.total_selections = 0
        self.last_index = None
        self._on_reset()

    def _on_reset(self):
        """重置时调用的钩子方法，子类可重写"""
        pass

    def get_status(self) -> Dict[str, Any]:
        return {
            'name': self.name,
            'objective': self.objective.value,
            'total_selections': self.total_selections,
            'last_index': self.last_index,
        }
