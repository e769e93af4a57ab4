"""
实验层测试脚本

配置、随机流派生、分位数与四个实验的小规模运行
（原始规模的验收检查见 comprehensive_check.py）
"""

import json
import math
import sys
import tempfile
from pathlib import Path

import numpy as np
from numpy.testing import assert_allclose

sys.path.insert(0, str(Path(__file__).parent.parent))

from analysis.infogain import LN2
from decision.decision_tree import RunTrace, ShotRecord
from experiments.comprehensive_check import _haar_search_budget, known_deviation
from experiments.experiment_config import (
    EXPERIMENTS, ExperimentConfig, apply_overrides, get_experiment_summary, load_config,
    require_valid, validate_parameters,
)
from experiments.groundstate_experiment import CHANCE_RATE, GroundStateExperiment, run_groundstate_experiment
from experiments.quantiles import (
    QuantileSeries, accuracy, median_shots_to_threshold, shots_to_threshold_array,
)
from experiments.scaling_experiment import run_bias_experiment, run_scaling_experiment
from experiments.search_experiment import SearchExperiment, run_search_experiment
from experiments.seeds import ROLE_SELECT, ROLE_SHOTS, derive_seed, trial_rng
from utils.exceptions import ConfigurationError, DomainError, InputError


def _trace(p_values, converged, true_label=None, prediction=-1, max_shots=5):
    trace = RunTrace(initial_p_value=0.5, max_shots=max_shots, prediction=prediction,
                     converged=converged, true_label=true_label)
    trace.records = [ShotRecord(i + 1, 0, 1, 1.0 - p, p) for i, p in enumerate(p_values)]
    return trace


def test_default_configs_are_valid():
    for name in EXPERIMENTS:
        config = ExperimentConfig.defaults(name)
        assert validate_parameters(config) == [], name
        summary = get_experiment_summary(config)
        assert summary['experiment'] == name and 'output_dir' not in summary
    search = ExperimentConfig.defaults("search")
    assert (search.n_qubits, search.n_candidates, search.n_observables, search.n_trials) == (10, 20, 20, 100)
    assert search.p_threshold == 0.99 and search.max_shots == 300
    assert ExperimentConfig.defaults("classify").n_candidates == 300
    try:
        ExperimentConfig.defaults("landing")
        assert False, "应当抛出 ConfigurationError"
    except ConfigurationError:
        pass


def test_validation_errors():
    config = apply_overrides(ExperimentConfig.defaults("search"), p_threshold=1.0, noise_sigma=-0.1,
                             n_qubits=20, max_shots=0)
    errors = validate_parameters(config)
    assert len(errors) == 4
    try:
        require_valid(config)
        assert False, "应当抛出 ConfigurationError"
    except ConfigurationError as e:
        assert e.errors == errors

    classify = apply_overrides(ExperimentConfig.defaults("classify"), n_qubits=2, observable_sets=["pool"])
    assert len(validate_parameters(classify)) == 2
    try:
        ExperimentConfig("search", strategies=("greedy",))
        assert False, "应当抛出 ConfigurationError"
    except ConfigurationError:
        pass


def test_overrides_and_config_file():
    base = ExperimentConfig.defaults("search")
    same = apply_overrides(base, master_seed=None, n_trials=None)
    assert same == base
    changed = apply_overrides(base, n_trials=7, strategies=["random"])
    assert changed.n_trials == 7 and changed.strategies == ("random",)
    try:
        apply_overrides(base, altitude=1.0)
        assert False, "应当抛出 ConfigurationError"
    except ConfigurationError:
        pass

    with tempfile.TemporaryDirectory() as tmp:
        path = Path(tmp) / "search.json"
        path.write_text(json.dumps({'experiment': 'ignored', 'n_qubits': 4, 'master_seed': 7}), encoding='utf-8')
        loaded = load_config(path, "search")
        assert loaded.experiment == "search" and loaded.n_qubits == 4 and loaded.master_seed == 7
        assert loaded.n_candidates == 20

        broken = Path(tmp) / "broken.json"
        broken.write_text("{n_qubits: 4", encoding='utf-8')
        try:
            load_config(broken, "search")
            assert False, "应当抛出 ConfigurationError"
        except ConfigurationError:
            pass


def test_derive_seed_determinism():
    assert derive_seed(1, 2, "shots") == derive_seed(1, 2, "shots")
    assert derive_seed(1, 2, "shots") != derive_seed(1, 2, "select")
    assert derive_seed(1, 2, "shots") != derive_seed(1, 3, "shots")
    assert derive_seed(1, 2, "shots") != derive_seed(2, 2, "shots")
    assert 0 <= derive_seed(2 ** 64 - 1, 0, "noise") < 2 ** 64
    a = trial_rng(5, 0, "state-gen").random(4)
    b = trial_rng(5, 0, "state-gen").random(4)
    assert np.array_equal(a, b)


def test_derive_seed_no_collisions():
    seeds = set()
    for trial in range(50_000):
        seeds.add(derive_seed(20240601, trial, ROLE_SHOTS))
        seeds.add(derive_seed(20240601, trial, ROLE_SELECT))
    assert len(seeds) == 100_000


def test_quantile_series():
    rng = np.random.default_rng(9)
    series = QuantileSeries.from_series(rng.random((50, 11)))
    assert series.shots.tolist() == list(range(11))
    assert np.all(series.q25 <= series.median) and np.all(series.median <= series.q75)
    frame = series.to_frame()
    assert list(frame.columns) == ['shot', 'median', 'q25', 'q75'] and len(frame) == 11

    flat = QuantileSeries.from_series(np.tile([0.5, 0.2, 0.005], (3, 1)))
    assert flat.first_shot_below(0.01) == 2 and flat.first_shot_below(0.001) is None
    assert flat.final_median == 0.005

    for bad, error in (
        (lambda: QuantileSeries(np.arange(2), np.array([0.5, 0.5]), np.array([0.6, 0.4]), np.ones(2)), DomainError),
        (lambda: QuantileSeries(np.arange(2), np.zeros(3), np.zeros(3), np.zeros(3)), InputError),
        (lambda: QuantileSeries.from_traces([]), InputError),
    ):
        try:
            bad()
            assert False, f"应当抛出 {error.__name__}"
        except error:
            pass


def test_shots_to_threshold_statistics():
    converged = _trace([0.2, 0.005], True, true_label=1, prediction=1)
    stalled = _trace([0.3] * 5, False, true_label=0, prediction=2)
    assert shots_to_threshold_array([converged, stalled]).tolist() == [2.0, math.inf]
    assert median_shots_to_threshold([converged, converged, stalled]) == 2.0
    assert median_shots_to_threshold([converged, stalled, stalled]) == math.inf
    assert math.isnan(median_shots_to_threshold([]))
    assert accuracy([converged, stalled]) == 0.5
    assert math.isnan(accuracy([_trace([], True)]))

    series = QuantileSeries.from_traces([converged, stalled])
    assert series.shots.size == 6
    assert_allclose(series.median[-1], (0.005 + 0.3) / 2)


def test_search_small_scale():
    """n=3、N=20、J=20、100 个试验：info-optimized 明显快于 random，fixed-best 停滞"""
    config = apply_overrides(ExperimentConfig.defaults("search"), n_qubits=3, workers=4)
    result = run_search_experiment(config)
    assert len(result.trials) == 100
    assert [t.trial for t in result.trials] == list(range(100))

    info = result.median_shots("info-optimized")
    random_ = result.median_shots("random")
    assert info <= 200, info
    assert info < random_, (info, random_)
    assert result.final_median_p_value("fixed-best") > 0.01
    for strategy in config.strategies:
        assert result.quantiles[strategy].shots.size == config.max_shots + 1


def test_search_trials_are_reproducible():
    config = apply_overrides(ExperimentConfig.defaults("search"), n_qubits=3, n_trials=4)
    experiment = SearchExperiment(config)
    first, second = experiment.run_trial(2), experiment.run_trial(2)
    assert first.true_index == second.true_index and first.observables == second.observables
    for strategy in config.strategies:
        assert first.traces[strategy].records == second.traces[strategy].records
    # 不同策略共享同一真实态与同一张表
    assert {t.true_label for t in first.traces.values()} == {first.true_index}


def test_search_single_candidate():
    config = apply_overrides(ExperimentConfig.defaults("search"), n_qubits=3, n_candidates=1, n_trials=5)
    result = run_search_experiment(config)
    for strategy in config.strategies:
        assert result.median_shots(strategy) == 0
        assert all(t.shots_used == 0 and t.correct for t in result.traces(strategy))


def test_search_budget_at_ten_qubits():
    """n=10 时 300 发的 Haar 平均信息量远不够区分 20 个候选态；n=3 时充足"""
    per_shot, budget_bits, needed_bits = _haar_search_budget(ExperimentConfig.defaults("search"))
    assert_allclose(per_shot, (1.0 / 1025) / (2 * LN2) * 0.95)
    assert_allclose(per_shot, 6.69e-4, rtol=2e-3)
    assert budget_bits < 0.25 and needed_bits > 4.3

    small = apply_overrides(ExperimentConfig.defaults("search"), n_qubits=3)
    _, small_budget, small_needed = _haar_search_budget(small)
    assert small_budget > 5 * small_needed

    # 已知偏差只提示，不计入失败
    assert known_deviation("示例", False, "(inf)", "预算不足") is True


def test_scaling_small_range():
    config = apply_overrides(ExperimentConfig.defaults("scaling"), n_min=2, n_max=5,
                             n_candidates=50, n_observables=50)
    result = run_scaling_experiment(config)
    assert [p.n_qubits for p in result.points] == [2, 3, 4, 5]
    for point in result.points:
        assert point.gains.shape == (50,) and np.all(point.gains >= 0)
        assert_allclose(point.haar_variance, 2 ** point.n_qubits / (4 ** point.n_qubits - 1))
    gains = [p.mean_gain for p in result.points]
    assert all(a > b for a, b in zip(gains, gains[1:]))
    assert -1.4 <= result.slope <= -0.6, result.slope

    single = run_scaling_experiment(apply_overrides(config, n_min=3, n_max=3, n_observables=1))
    assert single.points[0].gains.shape == (1,) and math.isnan(single.slope)


def test_bias_small_range():
    config = apply_overrides(ExperimentConfig.defaults("bias"), n_qubits=4, n_observables=30,
                             candidates_min=2, candidates_max=6, n_repeats=10, plateau_samples=500)
    result = run_bias_experiment(config)
    assert [p.n_candidates for p in result.points] == [2, 3, 4, 5, 6]
    exact = 1.0 / 17.0
    assert abs(result.haar_variance_estimate - exact) / exact < 0.1
    assert_allclose(result.plateau, result.haar_variance_estimate / (2 * LN2))
    assert_allclose(result.analytic_plateau, (16 / 255) / (2 * LN2))
    for point in result.points:
        assert_allclose(point.predicted_gain, result.plateau * (1 - 1 / point.n_candidates))
        assert_allclose(point.ratio_to_plateau, point.mean_gain / result.plateau)
    assert result.points[0].ratio_to_plateau < result.points[-1].ratio_to_plateau


def test_classify_small_chain():
    """n=6：Hamiltonian 集合快于随机集合，噪声不会加速收敛，准确率显著高于随机猜测"""
    with tempfile.TemporaryDirectory() as tmp:
        config = apply_overrides(ExperimentConfig.defaults("classify"), n_qubits=6, noise_sigma=0.05,
                                 workers=4, bank_dir=tmp)
        result = run_groundstate_experiment(config)
        assert len(result.arms) == 4
        assert set(result.split) == {"Heisenberg", "SPT", "Ising", "XYZ"}
        assert result.split["Ising"] == {'train': 75, 'test': 25}
        assert (Path(tmp) / "ising_n6.json").exists()

        hamiltonian = result.arm("hamiltonian", 0.0)
        random_set = result.arm("random", 0.0)
        noisy = result.arm("hamiltonian", 0.05)
        assert len(hamiltonian.observables) == len(random_set.observables) == 18 + 15 + 8
        assert len(hamiltonian.traces) == 100
        assert hamiltonian.median_shots < random_set.median_shots
        # 整数发数的中位数在 σ=0.05 下可能持平，只断言不减少，并确认噪声确实改变了测量序列
        assert noisy.median_shots >= hamiltonian.median_shots
        assert [t.records for t in noisy.traces] != [t.records for t in hamiltonian.traces]
        assert hamiltonian.accuracy > CHANCE_RATE and hamiltonian.accuracy_p_value < 0.05
        assert hamiltonian.key == "hamiltonian/sigma=0/info-optimized"

        # 第二次运行读取缓存的基态库，结果一致
        again = GroundStateExperiment(apply_overrides(config, noise_sigma=0.0, observable_sets=["hamiltonian"])).run()
        assert len(again.arms) == 1
        assert [t.records for t in again.arms[0].traces] == [t.records for t in hamiltonian.traces]


def main():
    tests = [
        test_default_configs_are_valid,
        test_validation_errors,
        test_overrides_and_config_file,
        test_derive_seed_determinism,
        test_derive_seed_no_collisions,
        test_quantile_series,
        test_shots_to_threshold_statistics,
        test_search_small_scale,
        test_search_trials_are_reproducible,
        test_search_single_candidate,
        test_search_budget_at_ten_qubits,
        test_scaling_small_range,
        test_bias_small_range,
        test_classify_small_chain,
    ]
    print("实验层测试")
    print("=" * 50)
    failed = 0
    for test in tests:
        try:
            test()
            print(f"✓ {test.__name__}")
        except AssertionError as e:
            failed += 1
            print(f"✗ {test.__name__}: {e}")
    print("=" * 50)
    print(f"{len(tests) - failed}/{len(tests)} 通过")
    return 0 if failed == 0 else 1


if __name__ == "__main__":
    sys.exit(main())
