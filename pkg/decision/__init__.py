"""
信念引擎：贝叶斯更新、精确期望信息增益、观测量选择策略与识别/分类循环

模块结构：
├── belief.py           # 信念状态、熵、期望信息增益
├── base_strategy.py    # 选择策略抽象类
├── strategies.py       # fixed-best / random / info-optimized
└── decision_tree.py    # 识别与分类主循环
"""

from core.pauli import ObservableTable

from .belief import (
    BeliefState, bayes_update, entropy, shannon_entropy, outcome_probability,
    expected_info_gain, expected_info_gains, class_probabilities, class_entropy,
    expected_class_info_gain, expected_class_info_gains,
)
from .base_strategy import BaseStrategy, StrategyType, GainObjective
from .strategies import (
    FixedBestStrategy, RandomStrategy, InfoOptimizedStrategy, create_strategy, select_observable,
)
from .decision_tree import RunConfig, RunTrace, ShotRecord, run_identification, run_classification

__all__ = [
    'ObservableTable',
    'BeliefState', 'bayes_update', 'entropy', 'shannon_entropy', 'outcome_probability',
    'expected_info_gain', 'expected_info_gains', 'class_probabilities', 'class_entropy',
    'expected_class_info_gain', 'expected_class_info_gains',
    'BaseStrategy', 'StrategyType', 'GainObjective',
    'FixedBestStrategy', 'RandomStrategy', 'InfoOptimizedStrategy', 'create_strategy', 'select_observable',
    'RunConfig', 'RunTrace', 'ShotRecord', 'run_identification', 'run_classification',
]
