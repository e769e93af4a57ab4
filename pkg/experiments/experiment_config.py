"""
实验配置文件
默认值按实验给出，可由 JSON 配置文件与命令行覆盖，无需改动实验脚本
"""

import dataclasses
import json
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

from config.settings import (
    DEFAULT_MASTER_SEED, DEFAULT_MAX_SHOTS, DEFAULT_P_THRESHOLD, DEFAULT_PROB_FLOOR,
    DEFAULT_WORKERS, MAX_DENSE_QUBITS, MAX_HAAR_QUBITS, MIN_CHAIN_QUBITS, RESULTS_DIR,
    TRAIN_STATES_PER_CLASS,
)
from decision.base_strategy import StrategyType
from utils.exceptions import ConfigurationError

EXPERIMENTS = ("search", "scaling", "bias", "classify")
OBSERVABLE_SETS = ("hamiltonian", "random")

ALL_STRATEGIES = tuple(s.value for s in StrategyType)


@dataclass(frozen=True)
class ExperimentConfig:
    experiment: str
    n_qubits: int = 10
    n_candidates: int = 20             # N
    n_observables: int = 20            # J
    n_trials: int = 100
    p_threshold: float = DEFAULT_P_THRESHOLD
    max_shots: int = DEFAULT_MAX_SHOTS
    strategies: Tuple[str, ...] = ALL_STRATEGIES
    prob_floor: float = DEFAULT_PROB_FLOOR
    noise_sigma: float = 0.0
    master_seed: int = DEFAULT_MASTER_SEED
    output_dir: str = str(RESULTS_DIR)
    workers: int = DEFAULT_WORKERS
    svg: bool = False

    # scaling：比特数范围
    n_min: int = 2
    n_max: int = 8
    # bias：候选集大小范围、每点重复次数、平台估计样本数
    candidates_min: int = 2
    candidates_max: int = 40
    n_repeats: int = 20
    plateau_samples: int = 2000
    # classify：训练集大小、可观测量集合、基态库缓存目录
    n_train: int = TRAIN_STATES_PER_CLASS
    observable_sets: Tuple[str, ...] = OBSERVABLE_SETS
    bank_dir: Optional[str] = None

    def __post_init__(self):
        try:
            strategies = tuple(StrategyType(s).value for s in self.strategies)
        except ValueError as e:
            raise ConfigurationError(f"未知选择策略: {e}", errors=[f"strategies 必须取自 {ALL_STRATEGIES}"]) from e
        object.__setattr__(self, 'strategies', strategies)
        object.__setattr__(self, 'observable_sets', tuple(self.observable_sets))

    @classmethod
    def defaults(cls, experiment: str) -> "ExperimentConfig":
        """各实验的默认配置"""
        if experiment == "search":
            return cls(experiment="search")
        if experiment == "scaling":
            return cls(experiment="scaling", n_qubits=8, n_candidates=100, n_observables=100,
                       n_trials=1, strategies=(StrategyType.INFO_OPTIMIZED.value,))
        if experiment == "bias":
            return cls(experiment="bias", n_qubits=5, n_candidates=40, n_observables=200,
                       n_trials=1, strategies=(StrategyType.INFO_OPTIMIZED.value,))
        if experiment == "classify":
            return cls(experiment="classify", n_qubits=8, n_candidates=4 * TRAIN_STATES_PER_CLASS,
                       n_observables=73, n_trials=1, strategies=(StrategyType.INFO_OPTIMIZED.value,))
        raise ConfigurationError(f"未知实验: {experiment}", errors=[f"experiment 必须为 {EXPERIMENTS} 之一"])


def validate_parameters(config: ExperimentConfig) -> List[str]:
    """验证实验参数的合理性"""
    errors = []

    if config.experiment not in EXPERIMENTS:
        errors.append(f"experiment 必须为 {EXPERIMENTS} 之一")

    for name in ("n_qubits", "n_candidates", "n_observables", "n_trials", "max_shots", "workers"):
        if getattr(config, name) < 1:
            errors.append(f"{name} 必须大于等于1")

    if not 0.5 < config.p_threshold < 1.0:
        errors.append("p_threshold 必须位于 (0.5, 1)")

    if not 0.0 <= config.prob_floor < 1.0:
        errors.append("prob_floor 必须位于 [0, 1)")

    if config.noise_sigma < 0:
        errors.append("噪声标准差不能为负数")

    if not 0 <= config.master_seed < 2 ** 64:
        errors.append("master_seed 必须是64位无符号整数")

    if not config.strategies:
        errors.append("至少需要一种选择策略")

    if config.experiment in ("search", "bias") and config.n_qubits > MAX_HAAR_QUBITS:
        errors.append(f"Haar 态比特数不应超过 {MAX_HAAR_QUBITS}")

    if config.experiment == "scaling":
        if not 1 <= config.n_min <= config.n_max:
            errors.append("要求 1 ≤ n_min ≤ n_max")
        if config.n_max > MAX_HAAR_QUBITS:
            errors.append(f"n_max 不应超过 {MAX_HAAR_QUBITS}")

    if config.experiment == "bias":
        if not 2 <= config.candidates_min <= config.candidates_max:
            errors.append("要求 2 ≤ candidates_min ≤ candidates_max")
        if config.n_repeats < 1:
            errors.append("n_repeats 必须大于等于1")
        if config.plateau_samples < 2:
            errors.append("plateau_samples 至少为2")

    if config.experiment == "classify":
        if not MIN_CHAIN_QUBITS <= config.n_qubits <= MAX_DENSE_QUBITS:
            errors.append(f"基态分类要求 {MIN_CHAIN_QUBITS} ≤ n ≤ {MAX_DENSE_QUBITS}")
        if not 0 < config.n_train < 100:
            errors.append("n_train 必须位于 (0, 100)")
        unknown = [s for s in config.observable_sets if s not in OBSERVABLE_SETS]
        if unknown or not config.observable_sets:
            errors.append(f"observable_sets 必须取自 {OBSERVABLE_SETS}")

    return errors


def get_experiment_summary(config: ExperimentConfig) -> Dict[str, Any]:
    """获取实验配置摘要（写入 summary JSON，不含输出路径以保证字节稳定）"""
    summary = {
        'experiment': config.experiment,
        'n_qubits': config.n_qubits,
        'p_threshold': config.p_threshold,
        'max_shots': config.max_shots,
        'strategies': list(config.strategies),
        'prob_floor': config.prob_floor,
        'master_seed': config.master_seed,
    }
    if config.experiment == "search":
        summary.update(n_candidates=config.n_candidates, n_observables=config.n_observables,
                       n_trials=config.n_trials)
    elif config.experiment == "scaling":
        summary.update(n_min=config.n_min, n_max=config.n_max,
                       n_candidates=config.n_candidates, n_observables=config.n_observables)
    elif config.experiment == "bias":
        summary.update(candidates_min=config.candidates_min, candidates_max=config.candidates_max,
                       n_observables=config.n_observables, n_repeats=config.n_repeats,
                       plateau_samples=config.plateau_samples)
    elif config.experiment == "classify":
        summary.update(n_train=config.n_train, observable_sets=list(config.observable_sets),
                       noise_sigma=config.noise_sigma)
    return summary


def apply_overrides(config: ExperimentConfig, **overrides) -> ExperimentConfig:
    """命令行覆盖，值为 None 的项忽略"""
    known = {f.name for f in dataclasses.fields(ExperimentConfig)}
    unknown = sorted(set(overrides) - known)
    if unknown:
        raise ConfigurationError(f"未知配置项: {unknown}", errors=[f"未知配置项 {name}" for name in unknown])
    changes = {k: v for k, v in overrides.items() if v is not None}
    for key in ('strategies', 'observable_sets'):
        if key in changes:
            changes[key] = tuple(changes[key])
    return dataclasses.replace(config, **changes)


def load_config(path, experiment: str) -> ExperimentConfig:
    """从 JSON 文件读取配置，文件中的键覆盖该实验的默认值"""
    path = Path(path)
    with open(path, 'r', encoding='utf-8') as f:
        try:
            data = json.load(f)
        except json.JSONDecodeError as e:
            raise ConfigurationError(f"配置文件 {path} 不是合法的 JSON: {e}") from e
    if not isinstance(data, dict):
        raise ConfigurationError(f"配置文件 {path} 顶层必须是对象")
    data.pop('experiment', None)
    return apply_overrides(ExperimentConfig.defaults(experiment), **data)


def require_valid(config: ExperimentConfig) -> ExperimentConfig:
    errors = validate_parameters(config)
    if errors:
        raise ConfigurationError("实验参数配置错误", errors=errors)
    return config


if __name__ == "__main__":
    for name in EXPERIMENTS:
        config = ExperimentConfig.defaults(name)
        errors = validate_parameters(config)
        if errors:
            print(f"⚠️  {name} 参数配置错误:")
            for error in errors:
                print(f"  - {error}")
        else:
            print(f"✅ {name} 参数配置验证通过: {get_experiment_summary(config)}")
