#!/usr/bin/env python3
"""
逐发 CSV 的事后分析
按策略汇总每个试验的终值 p 值与使用发数
"""

import argparse
from pathlib import Path

import pandas as pd

from config.settings import DEFAULT_P_THRESHOLD
from data.report_writer import SHOTS_HEADER
from utils.exceptions import InputError


def load_shots(csv_file) -> pd.DataFrame:
    data = pd.read_csv(csv_file)
    missing = [c for c in SHOTS_HEADER if c not in data.columns]
    if missing:
        raise InputError(f"{csv_file} 缺少列: {missing}")
    return data


def summarize_shots(data: pd.DataFrame, p_threshold: float = DEFAULT_P_THRESHOLD) -> pd.DataFrame:
    """
    每个 (strategy, trial) 取最后一发，再按策略聚合

    Returns:
        pd.DataFrame: 索引为 strategy，列为 trials, converged_fraction,
                      median_shots, median_final_p_value, mean_final_p_value
    """
    columns = ['trials', 'converged_fraction', 'median_shots', 'median_final_p_value', 'mean_final_p_value']
    if data.empty:
        return pd.DataFrame(columns=columns, index=pd.Index([], name='strategy'))

    last = data.sort_values('shot').groupby(['strategy', 'trial'], sort=True).tail(1)
    last = last.assign(converged=last['p_value'] <= 1.0 - p_threshold + 1e-12)
    grouped = last.groupby('strategy', sort=True)
    return pd.DataFrame({
        'trials': grouped['trial'].count(),
        'converged_fraction': grouped['converged'].mean(),
        'median_shots': grouped['shot'].median(),
        'median_final_p_value': grouped['p_value'].median(),
        'mean_final_p_value': grouped['p_value'].mean(),
    })[columns]


def analyze_shots(csv_file, p_threshold: float = DEFAULT_P_THRESHOLD) -> pd.DataFrame:
    """读取并打印汇总"""
    data = load_shots(csv_file)
    print(f"分析文件: {csv_file}")
    print(f"数据行数: {len(data)}")
    print(f"策略: {', '.join(sorted(data['strategy'].unique()))}")

    summary = summarize_shots(data, p_threshold)
    print("\n=== 按策略汇总 ===")
    print(summary.to_string(float_format=lambda v: f"{v:.4g}"))
    return summary


def main():
    parser = argparse.ArgumentParser(description='逐发 CSV 分析工具')
    parser.add_argument('csv_file', help='*_shots.csv 文件路径')
    parser.add_argument('--p-threshold', type=float, default=DEFAULT_P_THRESHOLD, help='收敛阈值')
    args = parser.parse_args()

    if not Path(args.csv_file).exists():
        print(f"文件不存在: {args.csv_file}")
        return 1
    analyze_shots(args.csv_file, args.p_threshold)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
