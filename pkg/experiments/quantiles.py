"""
逐发 p 值分位数

收敛后的试验以终值填充到 max_shots，再在每个发数上跨试验取 25%/50%/75% 分位数。
"""

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np
import pandas as pd

from decision.decision_tree import RunTrace
from utils.exceptions import DomainError, InputError


@dataclass(frozen=True)
class QuantileSeries:
    shots: np.ndarray
    median: np.ndarray
    q25: np.ndarray
    q75: np.ndarray

    def __post_init__(self):
        if not (self.shots.shape == self.median.shape == self.q25.shape == self.q75.shape):
            raise InputError("分位数序列长度不一致")
        if np.any(self.q25 > self.median) or np.any(self.median > self.q75):
            raise DomainError("分位数序列必须满足 q25 ≤ median ≤ q75")

    @classmethod
    def from_series(cls, series) -> "QuantileSeries":
        """series: (试验数, max_shots+1) 的 p 值矩阵"""
        series = np.atleast_2d(np.asarray(series, dtype=float))
        if series.shape[0] == 0:
            raise InputError("没有可用于计算分位数的试验")
        q25, median, q75 = np.quantile(series, [0.25, 0.5, 0.75], axis=0)
        # 插值误差可能破坏单调顺序
        median = np.maximum(median, q25)
        q75 = np.maximum(q75, median)
        return cls(np.arange(series.shape[1]), median, q25, q75)

    @classmethod
    def from_traces(cls, traces: Sequence[RunTrace], max_shots: Optional[int] = None) -> "QuantileSeries":
        if not traces:
            raise InputError("没有可用于计算分位数的试验")
        length = max_shots if max_shots is not None else max(t.max_shots for t in traces)
        return cls.from_series(np.stack([t.p_value_series(length) for t in traces]))

    @property
    def final_median(self) -> float:
        return float(self.median[-1])

    def first_shot_below(self, level: float) -> Optional[int]:
        """中位数首次 ≤ level 的发数"""
        hits = np.nonzero(self.median <= level)[0]
        return int(hits[0]) if hits.size else None

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame({
            'shot': self.shots,
            'median': self.median,
            'q25': self.q25,
            'q75': self.q75,
        })


def shots_to_threshold_array(traces: Sequence[RunTrace]) -> np.ndarray:
    """未收敛记为 inf"""
    return np.array([
        np.inf if t.shots_to_threshold is None else float(t.shots_to_threshold) for t in traces
    ])


def median_shots_to_threshold(traces: Sequence[RunTrace]) -> float:
    """过半试验未收敛时结果为 inf"""
    if not traces:
        return float('nan')
    return float(np.median(shots_to_threshold_array(traces)))


def accuracy(traces: Sequence[RunTrace]) -> float:
    labeled = [t for t in traces if t.true_label is not None]
    if not labeled:
        return float('nan')
    return float(np.mean([t.correct for t in labeled]))
