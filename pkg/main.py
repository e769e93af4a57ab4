#!/usr/bin/env python3
"""
量子决策树命令行入口

    python main.py search   [--config cfg.json] [--seed S] [--qubits n] [--trials T] [--out DIR] [--svg]
    python main.py scaling  ...
    python main.py bias     ...
    python main.py classify [--noise-sigma 0.05] ...
    python main.py gen-bank [--family Ising] [--qubits n] [--out DIR]
    python main.py analyze  results/search_shots.csv

退出码：0 成功；1 领域错误；2 配置验证失败；3 文件读写失败
"""

import sys
import argparse
from pathlib import Path
from colorama import init, Fore, Style

sys.path.append(str(Path(__file__).parent))

from config.settings import BANKS_DIR, DEFAULT_P_THRESHOLD, DEFAULT_WORKERS
from data.report_writer import emit_report
from data.result_analysis import analyze_shots
from experiments.experiment_config import (
    EXPERIMENTS, ExperimentConfig, apply_overrides, load_config, require_valid,
)
from experiments.groundstate_experiment import run_groundstate_experiment
from experiments.scaling_experiment import run_bias_experiment, run_scaling_experiment
from experiments.search_experiment import run_search_experiment
from hamiltonians.state_bank import default_bank_path, ground_state_bank, save_bank
from hamiltonians.zoo import HamiltonianFamily
from utils.exceptions import ConfigurationError, QuantumKernelError, SolverError
from utils.logger import Logger

init()

EXIT_OK = 0
EXIT_DOMAIN_ERROR = 1
EXIT_CONFIG_ERROR = 2
EXIT_IO_ERROR = 3

RUNNERS = {
    "search": run_search_experiment,
    "scaling": run_scaling_experiment,
    "bias": run_bias_experiment,
    "classify": run_groundstate_experiment,
}


def _add_experiment_arguments(parser: argparse.ArgumentParser):
    parser.add_argument('--config', help='JSON 配置文件')
    parser.add_argument('--seed', type=int, help='主随机种子 (64位无符号整数)')
    parser.add_argument('--qubits', type=int, help='量子比特数')
    parser.add_argument('--trials', type=int, help='试验次数')
    parser.add_argument('--noise-sigma', type=float, help='期望值高斯噪声标准差')
    parser.add_argument('--workers', type=int, help='并行线程数')
    parser.add_argument('--out', help='报告输出目录')
    parser.add_argument('--svg', action='store_true', help='同时输出 SVG 图')


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(description='量子决策树：单发 Pauli 测量的贪心信息增益实验')
    subparsers = parser.add_subparsers(dest='command', required=True)

    for name, help_text in (
        ("search", "Haar 随机态识别：三种选择策略对比"),
        ("scaling", "单发信息量随比特数的标度"),
        ("bias", "单发信息量随候选集大小的偏差因子"),
        ("classify", "Hamiltonian 基态分类"),
    ):
        _add_experiment_arguments(subparsers.add_parser(name, help=help_text))

    bank = subparsers.add_parser("gen-bank", help="生成并保存基态库")
    bank.add_argument('--family', action='append', choices=[f.value for f in HamiltonianFamily],
                      help='Hamiltonian 族，可重复；默认全部')
    bank.add_argument('--qubits', type=int, default=8, help='链长')
    bank.add_argument('--workers', type=int, default=DEFAULT_WORKERS, help='并行线程数')
    bank.add_argument('--out', default=str(BANKS_DIR), help='输出目录')

    analyze = subparsers.add_parser("analyze", help="分析逐发 CSV")
    analyze.add_argument('csv_file', help='*_shots.csv 文件路径')
    analyze.add_argument('--p-threshold', type=float, default=DEFAULT_P_THRESHOLD, help='收敛阈值')
    return parser


def resolve_config(args) -> ExperimentConfig:
    if args.config:
        config = load_config(args.config, args.command)
    else:
        config = ExperimentConfig.defaults(args.command)
    config = apply_overrides(
        config,
        master_seed=args.seed,
        n_qubits=args.qubits,
        n_trials=args.trials,
        noise_sigma=args.noise_sigma,
        workers=args.workers,
        output_dir=args.out,
        svg=True if args.svg else None,
    )
    if args.command == "scaling" and args.qubits is not None:
        config = apply_overrides(config, n_max=args.qubits)
    return require_valid(config)


def run_experiment(args) -> int:
    config = resolve_config(args)
    result = RUNNERS[args.command](config)
    written = emit_report(result, config.output_dir, svg=config.svg)
    print(f"\n{Fore.GREEN}✅ {args.command} 实验完成，输出 {len(written)} 个文件:{Style.RESET_ALL}")
    for path in written:
        print(f"  - {path}")
    return EXIT_OK


def generate_banks(args) -> int:
    families = args.family or [f.value for f in HamiltonianFamily]
    for family in families:
        bank = ground_state_bank(family, args.qubits, workers=args.workers)
        path = save_bank(bank, Path(args.out) / default_bank_path(family, args.qubits).name)
        print(f"{Fore.GREEN}✅ {family}: {len(bank)} 个基态 → {path}{Style.RESET_ALL}")
    return EXIT_OK


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logger = Logger("QDT")

    try:
        if args.command in EXPERIMENTS:
            return run_experiment(args)
        if args.command == "gen-bank":
            return generate_banks(args)
        if not Path(args.csv_file).exists():
            raise FileNotFoundError(f"文件不存在: {args.csv_file}")
        analyze_shots(args.csv_file, args.p_threshold)
        return EXIT_OK

    except ConfigurationError as e:
        print(f"{Fore.RED}⚠️  参数配置错误: {e.message}{Style.RESET_ALL}")
        for error in e.errors:
            print(f"  - {error}")
        return EXIT_CONFIG_ERROR
    except QuantumKernelError as e:
        # 求解器不收敛时结果不可用
        log = logger.critical if isinstance(e, SolverError) else logger.error
        log(f"{type(e).__name__}: {e.message}")
        params = getattr(e, 'params', None)
        if params is not None:
            print(f"{Fore.RED}出错参数: {params}{Style.RESET_ALL}")
        return EXIT_DOMAIN_ERROR
    except OSError as e:
        logger.error(f"文件读写失败: {e}")
        return EXIT_IO_ERROR
    except KeyboardInterrupt:
        print(f"\n{Fore.YELLOW}接收到中断信号，已退出{Style.RESET_ALL}")
        return EXIT_DOMAIN_ERROR


if __name__ == "__main__":
    sys.exit(main())
