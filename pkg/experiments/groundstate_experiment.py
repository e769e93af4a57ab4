#!/usr/bin/env python3
"""
Hamiltonian 基态分类实验

四个族各 100 个基态，按网格顺序前 n_train 个训练、其余测试。
可观测量集合：Hamiltonian 中出现过的全部 Pauli 串，或同样数量的随机非恒等 Pauli 串。
noise_sigma > 0 时同时运行 σ=0 与 σ=noise_sigma 两个噪声水平，
噪声同时加在训练期望值表与测试态期望值上。
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy.stats import binomtest

from core.pauli import ObservableTable, PauliString, expectation_table, random_pauli_strings
from core.statevector import perturb_expectations
from decision.decision_tree import RunConfig, RunTrace, run_classification
from hamiltonians.state_bank import (
    StateBank, default_bank_path, family_bank_split, ground_state_bank, load_bank, save_bank,
)
from hamiltonians.zoo import HamiltonianFamily, grid_description, observable_pool
from utils.logger import Logger

from .experiment_config import ExperimentConfig, require_valid
from .quantiles import QuantileSeries, accuracy, median_shots_to_threshold
from .seeds import ROLE_NOISE, ROLE_OBSERVABLE_GEN, ROLE_SELECT, ROLE_SHOTS, trial_rng

CHANCE_RATE = 1.0 / len(HamiltonianFamily)


@dataclass
class ClassificationArm:
    """一个 (可观测量集合, 噪声水平, 策略) 组合的全部测试运行"""
    observable_set: str
    noise_sigma: float
    strategy: str
    observables: List[str]
    traces: List[RunTrace]
    quantiles: QuantileSeries

    @property
    def key(self) -> str:
        return f"{self.observable_set}/sigma={self.noise_sigma:g}/{self.strategy}"

    @property
    def accuracy(self) -> float:
        return accuracy(self.traces)

    @property
    def n_correct(self) -> int:
        return int(sum(bool(t.correct) for t in self.traces))

    @property
    def accuracy_p_value(self) -> float:
        """相对随机猜测的单侧二项检验"""
        return float(binomtest(self.n_correct, len(self.traces), CHANCE_RATE, alternative='greater').pvalue)

    @property
    def median_shots(self) -> float:
        return median_shots_to_threshold(self.traces)


@dataclass
class ClassificationResult:
    config: ExperimentConfig
    arms: List[ClassificationArm] = field(default_factory=list)
    split: Dict[str, Dict[str, int]] = field(default_factory=dict)
    grids: Dict[str, str] = field(default_factory=dict)

    def arm(self, observable_set: str, noise_sigma: float = 0.0,
            strategy: Optional[str] = None) -> ClassificationArm:
        for arm in self.arms:
            if (arm.observable_set == observable_set and arm.noise_sigma == noise_sigma
                    and (strategy is None or arm.strategy == strategy)):
                return arm
        raise KeyError(f"{observable_set}/sigma={noise_sigma:g}/{strategy}")


@dataclass(frozen=True)
class LabeledStates:
    states: np.ndarray
    labels: np.ndarray


class GroundStateExperiment:
    def __init__(self, config: ExperimentConfig):
        self.logger = Logger("GroundStateExperiment")
        self.config = require_valid(config)

    def load_banks(self) -> Dict[HamiltonianFamily, StateBank]:
        """有缓存目录时优先读取已保存的基态库，缺失的生成后写回"""
        cfg = self.config
        banks = {}
        for family in HamiltonianFamily:
            cached: Optional[Path] = None
            if cfg.bank_dir is not None:
                cached = Path(cfg.bank_dir) / default_bank_path(family, cfg.n_qubits).name
                if cached.with_suffix('.json').exists():
                    self.logger.info(f"读取基态库: {cached.with_suffix('.json')}")
                    banks[family] = load_bank(cached)
                    continue
            banks[family] = ground_state_bank(family, cfg.n_qubits, workers=cfg.workers)
            if cached is not None:
                save_bank(banks[family], cached)
        return banks

    def split_banks(self, banks: Dict[HamiltonianFamily, StateBank]) -> Tuple[LabeledStates, LabeledStates]:
        train_states, train_labels, test_states, test_labels = [], [], [], []
        for family, bank in banks.items():
            train, test = family_bank_split(bank, self.config.n_train)
            train_states.append(train.states)
            test_states.append(test.states)
            train_labels += [family.class_label] * len(train)
            test_labels += [family.class_label] * len(test)
        return (
            LabeledStates(np.concatenate(train_states), np.array(train_labels)),
            LabeledStates(np.concatenate(test_states), np.array(test_labels)),
        )

    def observable_sets(self) -> Dict[str, List[PauliString]]:
        cfg = self.config
        pool = observable_pool(cfg.n_qubits)
        sets = {}
        for name in cfg.observable_sets:
            if name == "hamiltonian":
                sets[name] = pool
            else:
                sets[name] = random_pauli_strings(
                    cfg.n_qubits, len(pool), trial_rng(cfg.master_seed, 0, ROLE_OBSERVABLE_GEN)
                )
        return sets

    def noise_levels(self) -> List[float]:
        return sorted({0.0, float(self.config.noise_sigma)})

    def run_arm(self, set_name: str, observables: Sequence[PauliString], sigma: float, strategy: str,
                train: LabeledStates, test: LabeledStates) -> ClassificationArm:
        cfg = self.config
        table = ObservableTable.from_states(train.states, observables)
        test_table = expectation_table(test.states, observables)
        if sigma > 0:
            table = perturb_expectations(table, sigma, trial_rng(cfg.master_seed, 0, f"{ROLE_NOISE}/{set_name}/train"))
            test_table = perturb_expectations(
                test_table, sigma, trial_rng(cfg.master_seed, 1, f"{ROLE_NOISE}/{set_name}/test")
            )

        run_config = RunConfig(
            p_threshold=cfg.p_threshold, max_shots=cfg.max_shots, strategy=strategy, prob_floor=cfg.prob_floor,
        )

        def classify(index: int) -> RunTrace:
            return run_classification(
                table, test_table[index], train.labels, run_config,
                rng=trial_rng(cfg.master_seed, index, ROLE_SHOTS),
                select_rng=trial_rng(cfg.master_seed, index, ROLE_SELECT),
                true_class=int(test.labels[index]),
            )

        indices = range(len(test.labels))
        if cfg.workers > 1:
            with ThreadPoolExecutor(max_workers=cfg.workers) as pool:
                traces = list(pool.map(classify, indices))
        else:
            traces = [classify(i) for i in indices]

        arm = ClassificationArm(
            observable_set=set_name,
            noise_sigma=sigma,
            strategy=strategy,
            observables=[str(o) for o in observables],
            traces=traces,
            quantiles=QuantileSeries.from_traces(traces, cfg.max_shots),
        )
        self.logger.trial_log(
            arm.key,
            f"准确率 {arm.accuracy:.3f} (p={arm.accuracy_p_value:.2e}), 收敛发数中位数 {arm.median_shots}",
        )
        return arm

    def run(self) -> ClassificationResult:
        cfg = self.config
        self.logger.info("=" * 60)
        self.logger.info(
            f"基态分类实验: n={cfg.n_qubits}, 每类训练 {cfg.n_train} 个, 噪声水平 {self.noise_levels()}"
        )
        self.logger.info("=" * 60)

        banks = self.load_banks()
        train, test = self.split_banks(banks)
        result = ClassificationResult(
            config=cfg,
            split={
                family.value: {'train': cfg.n_train, 'test': len(banks[family]) - cfg.n_train}
                for family in HamiltonianFamily
            },
            grids={family.value: grid_description(family) for family in HamiltonianFamily},
        )

        for set_name, observables in self.observable_sets().items():
            for sigma in self.noise_levels():
                for strategy in cfg.strategies:
                    result.arms.append(self.run_arm(set_name, observables, sigma, strategy, train, test))
        return result


def run_groundstate_experiment(config: Optional[ExperimentConfig] = None) -> ClassificationResult:
    return GroundStateExperiment(config or ExperimentConfig.defaults("classify")).run()
