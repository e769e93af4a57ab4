"""
实验编排：配置、随机流派生、分位数统计与四个实验

模块结构：
├── experiment_config.py      # ExperimentConfig、参数验证与覆盖
├── seeds.py                  # derive_seed 随机流派生
├── quantiles.py              # 逐发 p 值分位数
├── search_experiment.py      # Haar 态识别（三种策略对比）
├── scaling_experiment.py     # 单发信息量随 n 与 N 的变化
└── groundstate_experiment.py # Hamiltonian 基态分类
"""

from .experiment_config import (
    EXPERIMENTS, ExperimentConfig, apply_overrides, get_experiment_summary, load_config,
    require_valid, validate_parameters,
)
from .seeds import derive_seed, trial_rng
from .quantiles import QuantileSeries, median_shots_to_threshold, shots_to_threshold_array
from .search_experiment import SearchExperiment, SearchResult, SearchTrial, run_search_experiment
from .scaling_experiment import (
    BiasPoint, BiasResult, ScalingPoint, ScalingResult, run_bias_experiment, run_scaling_experiment,
)
from .groundstate_experiment import (
    ClassificationArm, ClassificationResult, GroundStateExperiment, run_groundstate_experiment,
)

__all__ = [
    'EXPERIMENTS', 'ExperimentConfig', 'apply_overrides', 'get_experiment_summary', 'load_config',
    'require_valid', 'validate_parameters',
    'derive_seed', 'trial_rng',
    'QuantileSeries', 'median_shots_to_threshold', 'shots_to_threshold_array',
    'SearchExperiment', 'SearchResult', 'SearchTrial', 'run_search_experiment',
    'BiasPoint', 'BiasResult', 'ScalingPoint', 'ScalingResult', 'run_bias_experiment', 'run_scaling_experiment',
    'ClassificationArm', 'ClassificationResult', 'GroundStateExperiment', 'run_groundstate_experiment',
]
