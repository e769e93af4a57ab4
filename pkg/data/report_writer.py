"""
实验报告输出

<experiment>_shots.csv     每个试验×发数一行：trial, shot, strategy, observable_index, outcome, p_value
<experiment>_summary.json  配置回显、种子、分位数序列、准确率等
<experiment>_curve.csv     分位数曲线或标度曲线
<experiment>_*.svg         可选的中位数+四分位带折线图

所有文件只依赖实验结果本身（不含时间戳、路径），相同输入字节一致。
"""

import csv
import json
import math
from pathlib import Path
from typing import Any, Dict, Iterable, List, Tuple

import numpy as np
import pandas as pd

from config.settings import (
    REPORT_CSV_ENCODING, REPORT_CSV_LINE_TERMINATOR, REPORT_SCHEMA_VERSION, SVG_HASH_SALT,
)
from decision.decision_tree import RunTrace
from experiments.experiment_config import get_experiment_summary
from experiments.groundstate_experiment import ClassificationResult
from experiments.quantiles import QuantileSeries
from experiments.scaling_experiment import BiasResult, ScalingResult
from experiments.search_experiment import SearchResult
from experiments.seeds import ROLE_NOISE, ROLE_OBSERVABLE_GEN, ROLE_SELECT, ROLE_SHOTS, ROLE_STATE_GEN
from utils.exceptions import DomainError, InputError
from utils.logger import Logger

SHOTS_HEADER = ['trial', 'shot', 'strategy', 'observable_index', 'outcome', 'p_value']

logger = Logger("ReportWriter")


def _finite_or_none(value):
    value = float(value)
    return value if math.isfinite(value) else None


def _check_quantiles(name: str, series: QuantileSeries):
    if np.any(series.q25 > series.median) or np.any(series.median > series.q75):
        raise DomainError(f"{name} 的分位数序列不满足 q25 ≤ median ≤ q75")


def _quantile_json(series: QuantileSeries) -> Dict[str, List[float]]:
    return {
        'median': [float(v) for v in series.median],
        'q25': [float(v) for v in series.q25],
        'q75': [float(v) for v in series.q75],
    }


def write_shots_csv(path: Path, rows: Iterable[Tuple[int, str, RunTrace]]) -> Path:
    """rows: (trial, strategy, trace)；空集合只写表头。未测量即收敛的试验写一行 shot=0，观测量与结果留空"""
    with open(path, 'w', newline='', encoding=REPORT_CSV_ENCODING) as f:
        writer = csv.writer(f, lineterminator=REPORT_CSV_LINE_TERMINATOR)
        writer.writerow(SHOTS_HEADER)
        for trial, strategy, trace in rows:
            if not trace.records:
                writer.writerow([trial, 0, strategy, "", "", repr(trace.initial_p_value)])
            for record in trace.records:
                writer.writerow([
                    trial, record.shot, strategy, record.observable_index, record.outcome, repr(record.p_value),
                ])
    return path


def write_summary_json(path: Path, summary: Dict[str, Any]) -> Path:
    with open(path, 'w', encoding='utf-8', newline='\n') as f:
        json.dump(summary, f, indent=2, sort_keys=True, ensure_ascii=False, allow_nan=False)
        f.write('\n')
    return path


def write_curve_csv(path: Path, frame: pd.DataFrame) -> Path:
    frame.to_csv(path, index=False, encoding=REPORT_CSV_ENCODING,
                 lineterminator=REPORT_CSV_LINE_TERMINATOR, float_format='%.17g')
    return path


def _quantile_frame(curves: Dict[str, QuantileSeries], label: str) -> pd.DataFrame:
    frames = []
    for name, series in curves.items():
        frame = series.to_frame()
        frame.insert(0, label, name)
        frames.append(frame)
    if not frames:
        return pd.DataFrame(columns=[label, 'shot', 'median', 'q25', 'q75'])
    return pd.concat(frames, ignore_index=True)


def _seed_info(master_seed: int) -> Dict[str, Any]:
    return {
        'master_seed': master_seed,
        'derivation': 'numpy.random.SeedSequence(master_seed, spawn_key=(trial_index, role_tag))',
        'roles': [ROLE_STATE_GEN, ROLE_OBSERVABLE_GEN, ROLE_SHOTS, ROLE_SELECT, ROLE_NOISE],
    }


def _search_report(result: SearchResult) -> Tuple[List, Dict[str, Any], pd.DataFrame, Dict[str, QuantileSeries]]:
    rows = [(t.trial, s, t.traces[s]) for t in result.trials for s in result.config.strategies]
    summary = {
        'quantiles': {s: _quantile_json(q) for s, q in result.quantiles.items()},
        'median_shots_to_threshold': {s: _finite_or_none(result.median_shots(s)) for s in result.quantiles},
        'final_median_p_value': {s: result.final_median_p_value(s) for s in result.quantiles},
        'trials': [
            {'trial': t.trial, 'true_index': t.true_index,
             'shots_to_threshold': {s: tr.shots_to_threshold for s, tr in t.traces.items()},
             'failed': {s: tr.failed for s, tr in t.traces.items()}}
            for t in result.trials
        ],
    }
    return rows, summary, _quantile_frame(result.quantiles, 'strategy'), result.quantiles


def _classification_report(result: ClassificationResult):
    rows = [(i, arm.key, trace) for arm in result.arms for i, trace in enumerate(arm.traces)]
    curves = {arm.key: arm.quantiles for arm in result.arms}
    summary = {
        'split': result.split,
        'grids': result.grids,
        'split_rule': '每类按参数网格顺序，前 n_train 个训练，其余测试',
        'arms': {
            arm.key: {
                'observable_set': arm.observable_set,
                'noise_sigma': arm.noise_sigma,
                'strategy': arm.strategy,
                'n_observables': len(arm.observables),
                'observables': arm.observables,
                'accuracy': _finite_or_none(arm.accuracy),
                'n_correct': arm.n_correct,
                'n_test': len(arm.traces),
                'accuracy_p_value': arm.accuracy_p_value,
                'median_shots_to_threshold': _finite_or_none(arm.median_shots),
                'quantiles': _quantile_json(arm.quantiles),
            }
            for arm in result.arms
        },
    }
    return rows, summary, _quantile_frame(curves, 'arm'), curves


def _scaling_report(result: ScalingResult):
    frame = pd.DataFrame({
        'n_qubits': [p.n_qubits for p in result.points],
        'mean_gain': [p.mean_gain for p in result.points],
        'predicted_gain': [p.predicted_gain for p in result.points],
        'haar_variance': [p.haar_variance for p in result.points],
    })
    summary = {
        'slope_log2_gain': _finite_or_none(result.slope),
        'points': [
            {'n_qubits': p.n_qubits, 'mean_gain': p.mean_gain, 'predicted_gain': p.predicted_gain,
             'haar_variance': p.haar_variance}
            for p in result.points
        ],
    }
    return [], summary, frame, {}


def _bias_report(result: BiasResult):
    frame = pd.DataFrame({
        'n_candidates': [p.n_candidates for p in result.points],
        'mean_gain': [p.mean_gain for p in result.points],
        'predicted_gain': [p.predicted_gain for p in result.points],
        'ratio_to_plateau': [p.ratio_to_plateau for p in result.points],
    })
    summary = {
        'plateau': result.plateau,
        'analytic_plateau': result.analytic_plateau,
        'haar_variance_estimate': result.haar_variance_estimate,
        'points': [
            {'n_candidates': p.n_candidates, 'mean_gain': p.mean_gain, 'predicted_gain': p.predicted_gain,
             'ratio_to_plateau': p.ratio_to_plateau}
            for p in result.points
        ],
    }
    return [], summary, frame, {}


def _plot_quantiles(path: Path, curves: Dict[str, QuantileSeries], title: str) -> Path:
    import matplotlib
    matplotlib.use('Agg')
    import matplotlib.pyplot as plt

    with matplotlib.rc_context({'svg.hashsalt': SVG_HASH_SALT}):
        fig, ax = plt.subplots(figsize=(8, 5))
        for name, series in curves.items():
            line, = ax.plot(series.shots, series.median, label=name)
            ax.fill_between(series.shots, series.q25, series.q75, color=line.get_color(), alpha=0.2)
        ax.set_yscale('log')
        ax.set_xlabel('shots')
        ax.set_ylabel('p-value')
        ax.set_title(title)
        ax.legend()
        ax.grid(True)
        fig.tight_layout()
        fig.savefig(path, format='svg', metadata={'Date': None})
        plt.close(fig)
    return path


def _plot_curve(path: Path, frame: pd.DataFrame, x: str, title: str) -> Path:
    import matplotlib
    matplotlib.use('Agg')
    import matplotlib.pyplot as plt

    with matplotlib.rc_context({'svg.hashsalt': SVG_HASH_SALT}):
        fig, ax = plt.subplots(figsize=(8, 5))
        ax.plot(frame[x], frame['mean_gain'], 'o', label='exact')
        ax.plot(frame[x], frame['predicted_gain'], '-', label='predicted')
        if x == 'n_qubits':
            ax.set_yscale('log')
        ax.set_xlabel(x)
        ax.set_ylabel('information per shot (bits)')
        ax.set_title(title)
        ax.legend()
        ax.grid(True)
        fig.tight_layout()
        fig.savefig(path, format='svg', metadata={'Date': None})
        plt.close(fig)
    return path


def emit_report(result, output_dir, svg: bool = False) -> List[Path]:
    """
    写出实验报告

    Returns:
        List[Path]: 已写出的文件

    Raises:
        InputError: 未知结果类型
        OSError: 写文件失败，消息中包含路径
    """
    if isinstance(result, SearchResult):
        rows, body, curve, curves = _search_report(result)
    elif isinstance(result, ClassificationResult):
        rows, body, curve, curves = _classification_report(result)
    elif isinstance(result, ScalingResult):
        rows, body, curve, curves = _scaling_report(result)
    elif isinstance(result, BiasResult):
        rows, body, curve, curves = _bias_report(result)
    else:
        raise InputError(f"无法输出的结果类型: {type(result).__name__}")

    for name, series in curves.items():
        _check_quantiles(name, series)

    config = result.config
    experiment = config.experiment
    output_dir = Path(output_dir)
    summary = {
        'schema_version': REPORT_SCHEMA_VERSION,
        'config': get_experiment_summary(config),
        'seeds': _seed_info(config.master_seed),
        **body,
    }

    written = []
    current = output_dir
    try:
        output_dir.mkdir(parents=True, exist_ok=True)
        if experiment in ("search", "classify"):
            current = output_dir / f"{experiment}_shots.csv"
            written.append(write_shots_csv(current, rows))
        current = output_dir / f"{experiment}_summary.json"
        written.append(write_summary_json(current, summary))
        current = output_dir / f"{experiment}_curve.csv"
        written.append(write_curve_csv(current, curve))
        if svg:
            if curves:
                current = output_dir / f"{experiment}_pvalue.svg"
                written.append(_plot_quantiles(current, curves, f"{experiment}: median p-value"))
            else:
                x = 'n_qubits' if experiment == "scaling" else 'n_candidates'
                current = output_dir / f"{experiment}_gain.svg"
                written.append(_plot_curve(current, curve, x, f"{experiment}: information per shot"))
    except OSError as e:
        logger.error(f"写入报告失败: {current}: {e}")
        raise OSError(f"写入报告失败: {current}: {e}") from e

    for path in written:
        logger.info(f"报告已写出: {path}")
    return written
