#!/usr/bin/env python3
"""
单发信息量的标度实验

scaling：固定 N、J，n 从 n_min 到 n_max，比较精确首发增益均值与 Haar 预测；
bias：固定 n、J，候选集大小 N 变化，比较增益均值与 (1 - 1/N)·平台值。
"""

from dataclasses import dataclass
from typing import List, Optional

import numpy as np

from analysis.infogain import (
    LN2, exact_info_gains_uniform, expected_sample_info_gain, haar_moments_pauli,
)
from core.pauli import expectation_table, random_pauli_strings
from core.statevector import haar_random_states
from utils.logger import Logger

from .experiment_config import ExperimentConfig, require_valid
from .seeds import ROLE_OBSERVABLE_GEN, ROLE_STATE_GEN, trial_rng


@dataclass(frozen=True)
class ScalingPoint:
    n_qubits: int
    mean_gain: float
    predicted_gain: float
    haar_variance: float
    gains: np.ndarray


@dataclass
class ScalingResult:
    config: ExperimentConfig
    points: List[ScalingPoint]

    @property
    def slope(self) -> float:
        """log₂(平均增益) 对 n 的线性拟合斜率"""
        if len(self.points) < 2:
            return float('nan')
        n = np.array([p.n_qubits for p in self.points], dtype=float)
        log_gain = np.log2([p.mean_gain for p in self.points])
        return float(np.polyfit(n, log_gain, 1)[0])


@dataclass(frozen=True)
class BiasPoint:
    n_candidates: int
    mean_gain: float
    predicted_gain: float
    ratio_to_plateau: float


@dataclass
class BiasResult:
    config: ExperimentConfig
    points: List[BiasPoint]
    plateau: float
    analytic_plateau: float
    haar_variance_estimate: float


def run_scaling_experiment(config: Optional[ExperimentConfig] = None) -> ScalingResult:
    config = require_valid(config or ExperimentConfig.defaults("scaling"))
    logger = Logger("ScalingExperiment")
    logger.info(f"标度实验: n ∈ [{config.n_min}, {config.n_max}], N={config.n_candidates}, J={config.n_observables}")

    points = []
    for n in range(config.n_min, config.n_max + 1):
        states = haar_random_states(n, config.n_candidates, trial_rng(config.master_seed, n, ROLE_STATE_GEN))
        observables = random_pauli_strings(
            n, config.n_observables, trial_rng(config.master_seed, n, ROLE_OBSERVABLE_GEN)
        )
        gains = exact_info_gains_uniform(expectation_table(states, observables))
        moments = haar_moments_pauli(observables[0], n)
        point = ScalingPoint(
            n_qubits=n,
            mean_gain=float(gains.mean()),
            predicted_gain=expected_sample_info_gain(moments.variance, config.n_candidates),
            haar_variance=moments.variance,
            gains=gains,
        )
        points.append(point)
        logger.trial_log(f"n={n}", f"平均增益 {point.mean_gain:.4e} 比特, 预测 {point.predicted_gain:.4e} 比特")

    result = ScalingResult(config, points)
    logger.info(f"log₂(增益) 斜率: {result.slope:.3f}")
    return result


def _estimate_haar_variance(config: ExperimentConfig, observables) -> float:
    """大样本辅助态上每个可观测量的（有偏）方差，再对可观测量取平均"""
    states = haar_random_states(
        config.n_qubits, config.plateau_samples,
        trial_rng(config.master_seed, 0, f"{ROLE_STATE_GEN}/plateau"),
    )
    return float(expectation_table(states, observables).var(axis=0).mean())


def run_bias_experiment(config: Optional[ExperimentConfig] = None) -> BiasResult:
    config = require_valid(config or ExperimentConfig.defaults("bias"))
    logger = Logger("BiasExperiment")
    logger.info(
        f"偏差因子实验: n={config.n_qubits}, J={config.n_observables}, "
        f"N ∈ [{config.candidates_min}, {config.candidates_max}], 每点重复 {config.n_repeats} 次"
    )

    observables = random_pauli_strings(
        config.n_qubits, config.n_observables, trial_rng(config.master_seed, 0, ROLE_OBSERVABLE_GEN)
    )
    haar_variance = _estimate_haar_variance(config, observables)
    plateau = haar_variance / (2 * LN2)
    analytic_plateau = haar_moments_pauli(observables[0], config.n_qubits).variance / (2 * LN2)
    logger.info(f"平台估计 {plateau:.5f} 比特, 解析值 {analytic_plateau:.5f} 比特")

    points = []
    for n_candidates in range(config.candidates_min, config.candidates_max + 1):
        gains = []
        for repeat in range(config.n_repeats):
            states = haar_random_states(
                config.n_qubits, n_candidates,
                trial_rng(config.master_seed, repeat, f"{ROLE_STATE_GEN}/N={n_candidates}"),
            )
            gains.append(exact_info_gains_uniform(expectation_table(states, observables)).mean())
        mean_gain = float(np.mean(gains))
        point = BiasPoint(
            n_candidates=n_candidates,
            mean_gain=mean_gain,
            predicted_gain=plateau * (1.0 - 1.0 / n_candidates),
            ratio_to_plateau=mean_gain / plateau,
        )
        points.append(point)
        logger.trial_log(f"N={n_candidates}", f"平均增益 {mean_gain:.5f} 比特, 平台比 {point.ratio_to_plateau:.3f}")

    return BiasResult(config, points, plateau, analytic_plateau, haar_variance)
