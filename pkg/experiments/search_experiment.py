#!/usr/bin/env python3
"""
Haar 随机态识别实验

每个试验：新抽 N 个 Haar 候选态与 J 个随机非恒等 Pauli 串，计算精确期望值表，
均匀抽取真实态；三种选择策略在同一张表、同一真实态、同一测量随机流上分别运行，
最后在每个发数上跨试验计算 p 值分位数。
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, List, Optional

from core.pauli import ObservableTable, random_pauli_strings
from core.statevector import haar_random_states
from decision.decision_tree import RunConfig, RunTrace, run_identification
from utils.logger import Logger

from .experiment_config import ExperimentConfig, require_valid
from .quantiles import QuantileSeries, median_shots_to_threshold
from .seeds import ROLE_OBSERVABLE_GEN, ROLE_SELECT, ROLE_SHOTS, ROLE_STATE_GEN, trial_rng


@dataclass
class SearchTrial:
    trial: int
    true_index: int
    observables: List[str]
    traces: Dict[str, RunTrace] = field(default_factory=dict)


@dataclass
class SearchResult:
    config: ExperimentConfig
    trials: List[SearchTrial]
    quantiles: Dict[str, QuantileSeries]

    def traces(self, strategy: str) -> List[RunTrace]:
        return [t.traces[strategy] for t in self.trials]

    def median_shots(self, strategy: str) -> float:
        return median_shots_to_threshold(self.traces(strategy))

    def final_median_p_value(self, strategy: str) -> float:
        return self.quantiles[strategy].final_median


class SearchExperiment:
    def __init__(self, config: ExperimentConfig):
        self.logger = Logger("SearchExperiment")
        self.config = require_valid(config)
        self.run_config = {
            strategy: RunConfig(
                p_threshold=config.p_threshold,
                max_shots=config.max_shots,
                strategy=strategy,
                prob_floor=config.prob_floor,
            )
            for strategy in config.strategies
        }

    def run_trial(self, trial: int) -> SearchTrial:
        """单个试验；只依赖 (master_seed, trial)，可在任意线程中执行"""
        cfg = self.config
        state_rng = trial_rng(cfg.master_seed, trial, ROLE_STATE_GEN)
        candidates = haar_random_states(cfg.n_qubits, cfg.n_candidates, state_rng)
        true_index = int(state_rng.integers(cfg.n_candidates))
        observables = random_pauli_strings(
            cfg.n_qubits, cfg.n_observables, trial_rng(cfg.master_seed, trial, ROLE_OBSERVABLE_GEN)
        )
        table = ObservableTable.from_states(candidates, observables)

        result = SearchTrial(trial, true_index, [str(o) for o in observables])
        for strategy, run_config in self.run_config.items():
            trace = run_identification(
                table, true_index, run_config,
                rng=trial_rng(cfg.master_seed, trial, ROLE_SHOTS),
                select_rng=trial_rng(cfg.master_seed, trial, ROLE_SELECT),
            )
            result.traces[strategy] = trace
            if trace.failed:
                self.logger.warning(f"试验 {trial} [{strategy}] 更新失败: {trace.error}")

        summary = ", ".join(
            f"{s}={t.shots_to_threshold if t.converged else '未收敛'}" for s, t in result.traces.items()
        )
        self.logger.trial_log(f"试验 {trial}", f"真实态 {true_index}, 收敛发数 {summary}")
        return result

    def run(self) -> SearchResult:
        cfg = self.config
        self.logger.info("=" * 60)
        self.logger.info(
            f"识别实验: n={cfg.n_qubits}, N={cfg.n_candidates}, J={cfg.n_observables}, "
            f"{cfg.n_trials} 个试验, 阈值 {cfg.p_threshold}, 最多 {cfg.max_shots} 发"
        )
        self.logger.info("=" * 60)

        if cfg.workers > 1:
            with ThreadPoolExecutor(max_workers=cfg.workers) as pool:
                trials = list(pool.map(self.run_trial, range(cfg.n_trials)))
        else:
            trials = [self.run_trial(t) for t in range(cfg.n_trials)]
        trials.sort(key=lambda t: t.trial)

        quantiles = {
            strategy: QuantileSeries.from_traces([t.traces[strategy] for t in trials], cfg.max_shots)
            for strategy in cfg.strategies
        }
        result = SearchResult(cfg, trials, quantiles)

        for strategy in cfg.strategies:
            self.logger.info(
                f"{strategy}: 收敛发数中位数 {result.median_shots(strategy)}, "
                f"第 {cfg.max_shots} 发 p 值中位数 {result.final_median_p_value(strategy):.4g}"
            )
        return result


def run_search_experiment(config: Optional[ExperimentConfig] = None) -> SearchResult:
    return SearchExperiment(config or ExperimentConfig.defaults("search")).run()
