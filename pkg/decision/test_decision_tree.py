"""
决策循环测试脚本

识别与分类两种模式的终止条件、逐发记录与错误路径
"""

import sys
from pathlib import Path

import numpy as np
from numpy.testing import assert_allclose

sys.path.insert(0, str(Path(__file__).parent.parent))

from core.pauli import ObservableTable
from core.statevector import ShotOutcome
from decision.base_strategy import StrategyType
from decision.decision_tree import RunConfig, run_classification, run_identification
from utils.exceptions import ConfigurationError, DimensionError, DomainError

# 第0列按类别取 ±1，第1列无关
CLASS_TABLE = np.array([
    [1.0, 0.2],
    [1.0, -0.4],
    [-1.0, 0.1],
    [-1.0, 0.3],
])
CLASS_OF = [0, 0, 1, 1]


def test_run_config_validation():
    for kwargs in ({'p_threshold': 0.5}, {'p_threshold': 1.0}, {'max_shots': 0}, {'prob_floor': 1.0}):
        try:
            RunConfig(**kwargs)
            assert False, f"应当拒绝 {kwargs}"
        except ConfigurationError:
            pass
    assert RunConfig(strategy="random").strategy == StrategyType.RANDOM


def test_perfectly_separating_column():
    """N=2、列为 (1, -1)：一发即收敛且判定正确"""
    rng = np.random.default_rng(0)
    for strategy in StrategyType:
        for true_index in (0, 1):
            trace = run_identification(np.array([[1.0], [-1.0]]), true_index,
                                       RunConfig(strategy=strategy), rng)
            assert trace.converged and not trace.failed
            assert trace.shots_used == 1 and trace.shots_to_threshold == 1
            assert trace.prediction == true_index and trace.correct
            assert trace.initial_p_value == 0.5
            assert trace.records[0].outcome == (1 if true_index == 0 else -1)
            assert trace.records[0].p_value == 0.0


def test_single_candidate_needs_no_shots():
    trace = run_identification(np.array([[0.3, -0.1]]), 0, RunConfig(), np.random.default_rng(1))
    assert trace.converged and trace.shots_used == 0 and trace.shots_to_threshold == 0
    assert trace.prediction == 0
    assert_allclose(trace.p_value_series(), np.zeros(RunConfig().max_shots + 1))


def test_p_value_series_padding():
    trace = run_identification(np.array([[1.0], [-1.0]]), 0, RunConfig(max_shots=5), np.random.default_rng(2))
    series = trace.p_value_series()
    assert series.shape == (6,)
    assert_allclose(series, [0.5, 0.0, 0.0, 0.0, 0.0, 0.0])
    assert trace.p_value_series(max_shots=2).shape == (3,)


def test_budget_exhausted_without_convergence():
    """全部列恒定时无法区分候选态，用完预算且不收敛"""
    table = np.full((3, 2), 0.25)
    trace = run_identification(table, 1, RunConfig(max_shots=40), np.random.default_rng(3))
    assert not trace.converged and not trace.failed
    assert trace.shots_used == 40 and trace.shots_to_threshold is None
    assert_allclose(trace.p_values, [2.0 / 3.0] * 40)


def test_identification_is_deterministic():
    rng = np.random.default_rng(4)
    table = rng.uniform(-1.0, 1.0, (6, 8))
    runs = [
        run_identification(table, 2, RunConfig(strategy="random"),
                           np.random.default_rng(10), np.random.default_rng(11))
        for _ in range(2)
    ]
    assert runs[0].records == runs[1].records
    assert runs[0].prediction == runs[1].prediction


def test_identification_errors():
    try:
        run_identification(np.array([[1.0], [-1.0]]), 2, RunConfig(), np.random.default_rng(0))
        assert False, "应当抛出 DomainError"
    except DomainError:
        pass


def test_degenerate_evidence_marks_trace_failed():
    """抽样源与训练表矛盾：结果在所有候选态下概率为零"""
    table = np.array([[1.0], [1.0]])
    trace = run_classification(table, lambda j, rng: ShotOutcome.MINUS, [0, 1],
                               RunConfig(), np.random.default_rng(0))
    assert trace.failed and not trace.converged
    assert trace.error is not None and trace.shots_used == 0


def test_classification_single_class():
    trace = run_classification(CLASS_TABLE, CLASS_TABLE[0], [0, 0, 0, 0],
                               RunConfig(), np.random.default_rng(0), true_class=0)
    assert trace.converged and trace.shots_used == 0
    assert trace.prediction == 0 and trace.correct


def test_classification_of_training_state():
    for row, true_class in enumerate(CLASS_OF):
        trace = run_classification(CLASS_TABLE, CLASS_TABLE[row], CLASS_OF, RunConfig(),
                                   np.random.default_rng(row), true_class=true_class)
        assert trace.converged and trace.shots_used == 1
        assert trace.records[0].observable_index == 0
        assert trace.prediction == true_class and trace.correct
        assert trace.initial_p_value == 0.5


def test_classification_with_callable_source():
    calls = []

    def source(j, rng):
        calls.append(j)
        return ShotOutcome.MINUS

    trace = run_classification(ObservableTable(CLASS_TABLE), source, CLASS_OF, RunConfig(),
                               np.random.default_rng(0), true_class=1)
    assert calls == [0]
    assert trace.prediction == 1 and trace.correct


def test_classification_errors():
    rng = np.random.default_rng(0)
    try:
        run_classification(CLASS_TABLE, np.zeros(3), CLASS_OF, RunConfig(), rng)
        assert False, "应当抛出 DimensionError"
    except DimensionError:
        pass
    try:
        run_classification(CLASS_TABLE, CLASS_TABLE[0], None, RunConfig(), rng)
        assert False, "应当抛出 ConfigurationError"
    except ConfigurationError:
        pass


def main():
    tests = [
        test_run_config_validation,
        test_perfectly_separating_column,
        test_single_candidate_needs_no_shots,
        test_p_value_series_padding,
        test_budget_exhausted_without_convergence,
        test_identification_is_deterministic,
        test_identification_errors,
        test_degenerate_evidence_marks_trace_failed,
        test_classification_single_class,
        test_classification_of_training_state,
        test_classification_with_callable_source,
        test_classification_errors,
    ]
    print("决策循环测试")
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
