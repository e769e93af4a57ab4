"""
基态库：每族 100 个参数点的精确基态

文件格式（<stem>.json + <stem>.bin）：
    JSON 头记录族、比特数、参数网格、能量与二进制布局；
    二进制体为小端 float64，按态依次存放，每个振幅实部/虚部交错。
"""

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Iterator, List, Tuple

import numpy as np

from config.settings import BANKS_DIR, DEFAULT_WORKERS, REPORT_SCHEMA_VERSION, TRAIN_STATES_PER_CLASS
from core.ground_state import GroundStateResult, solve_ground_state
from core.statevector import Statevector
from utils.exceptions import DimensionError, InputError, SolverError
from utils.logger import Logger

from .zoo import HamiltonianFamily, HamiltonianSpec, build_family, grid_description, parameter_grid

BANK_DTYPE = '<f8'
BANK_LAYOUT = 'interleaved-real-imag'

logger = Logger("StateBank")


@dataclass(frozen=True)
class StateBank:
    """
    一个族的基态集合，按参数网格顺序排列

    states 为 (N, 2ⁿ) 复数组，第 i 行是 params[i] 的基态。
    """
    family: HamiltonianFamily
    n_qubits: int
    params: Tuple[Tuple[float, ...], ...]
    states: np.ndarray
    energies: Tuple[float, ...]

    def __post_init__(self):
        states = np.array(self.states, dtype=np.complex128)
        if states.ndim != 2 or states.shape[1] != 1 << self.n_qubits:
            raise DimensionError(f"基态数组形状 {states.shape} 与 n={self.n_qubits} 不一致")
        if not states.shape[0] == len(self.params) == len(self.energies):
            raise DimensionError("参数、能量与基态数量不一致")
        states.setflags(write=False)
        object.__setattr__(self, 'family', HamiltonianFamily(self.family))
        object.__setattr__(self, 'params', tuple(tuple(float(v) for v in p) for p in self.params))
        object.__setattr__(self, 'energies', tuple(float(e) for e in self.energies))
        object.__setattr__(self, 'states', states)

    def __len__(self) -> int:
        return len(self.params)

    def __iter__(self) -> Iterator[Tuple[Tuple[float, ...], Statevector]]:
        for params, amplitudes in zip(self.params, self.states):
            yield params, Statevector(self.n_qubits, amplitudes)

    def entries(self) -> List[Tuple[Tuple[float, ...], Statevector]]:
        return list(self)

    def subset(self, indices) -> "StateBank":
        indices = [int(i) for i in indices]
        return StateBank(
            family=self.family,
            n_qubits=self.n_qubits,
            params=tuple(self.params[i] for i in indices),
            states=self.states[indices] if indices else np.zeros((0, 1 << self.n_qubits), dtype=np.complex128),
            energies=tuple(self.energies[i] for i in indices),
        )


def _solve_point(family: HamiltonianFamily, n_qubits: int, params: Tuple[float, ...]) -> GroundStateResult:
    spec = HamiltonianSpec(family, n_qubits, params)
    try:
        return solve_ground_state(build_family(spec), n_qubits)
    except SolverError as e:
        raise SolverError(f"{spec.label()} 基态求解失败: {e.message}", iterations=e.iterations, params=params) from e


def ground_state_bank(family, n_qubits: int, workers: int = DEFAULT_WORKERS) -> StateBank:
    """
    对参数网格上的每个点求基态

    Args:
        family: HamiltonianFamily 或其名称
        workers: 网格点级线程数，结果顺序与网格一致

    Raises:
        SolverError: 携带出错的参数向量
    """
    family = HamiltonianFamily(family)
    grid = parameter_grid(family)
    logger.info(f"生成 {family.value} 基态库: n={n_qubits}, {len(grid)} 个参数点, workers={workers}")

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(lambda p: _solve_point(family, n_qubits, p), grid))
    else:
        results = [_solve_point(family, n_qubits, p) for p in grid]

    return StateBank(
        family=family,
        n_qubits=n_qubits,
        params=tuple(grid),
        states=np.stack([r.state.amplitudes for r in results]),
        energies=tuple(r.energy for r in results),
    )


def family_bank_split(bank: StateBank, n_train: int = TRAIN_STATES_PER_CLASS) -> Tuple[StateBank, StateBank]:
    """网格顺序前 n_train 个为训练集，其余为测试集"""
    if not 0 < n_train < len(bank):
        raise InputError(f"训练集大小 {n_train} 必须位于 (0, {len(bank)})")
    return bank.subset(range(n_train)), bank.subset(range(n_train, len(bank)))


def _bank_paths(path) -> Tuple[Path, Path]:
    path = Path(path)
    stem = path.with_suffix('') if path.suffix in ('.json', '.bin') else path
    return stem.with_suffix('.json'), stem.with_suffix('.bin')


def default_bank_path(family, n_qubits: int) -> Path:
    family = HamiltonianFamily(family)
    return BANKS_DIR / f"{family.value.lower()}_n{n_qubits}"


def save_bank(bank: StateBank, path) -> Path:
    """写出 JSON 头与二进制振幅，返回 JSON 路径"""
    header_path, body_path = _bank_paths(path)
    header_path.parent.mkdir(parents=True, exist_ok=True)

    body = np.empty((len(bank), bank.states.shape[1], 2), dtype=BANK_DTYPE)
    body[..., 0] = bank.states.real
    body[..., 1] = bank.states.imag
    body_path.write_bytes(body.tobytes())

    header = {
        'schema_version': REPORT_SCHEMA_VERSION,
        'family': bank.family.value,
        'n_qubits': bank.n_qubits,
        'count': len(bank),
        'grid': grid_description(bank.family),
        'params': [list(p) for p in bank.params],
        'energies': list(bank.energies),
        'amplitude_file': body_path.name,
        'dtype': BANK_DTYPE,
        'layout': BANK_LAYOUT,
    }
    with open(header_path, 'w', encoding='utf-8', newline='\n') as f:
        json.dump(header, f, indent=2, sort_keys=True, ensure_ascii=False)
        f.write('\n')

    logger.info(f"基态库已保存: {header_path}")
    return header_path


def load_bank(path) -> StateBank:
    header_path, _ = _bank_paths(path)
    with open(header_path, 'r', encoding='utf-8') as f:
        header = json.load(f)
    if header.get('dtype') != BANK_DTYPE or header.get('layout') != BANK_LAYOUT:
        raise InputError(f"不支持的基态库格式: {header.get('dtype')}, {header.get('layout')}")

    n_qubits = int(header['n_qubits'])
    count = int(header['count'])
    raw = np.frombuffer((header_path.parent / header['amplitude_file']).read_bytes(), dtype=BANK_DTYPE)
    if raw.size != count * (1 << n_qubits) * 2:
        raise DimensionError(f"振幅文件大小 {raw.size} 与头信息 (count={count}, n={n_qubits}) 不一致")
    pairs = raw.reshape(count, 1 << n_qubits, 2)

    return StateBank(
        family=HamiltonianFamily(header['family']),
        n_qubits=n_qubits,
        params=tuple(tuple(p) for p in header['params']),
        states=pairs[..., 0] + 1j * pairs[..., 1],
        energies=tuple(header['energies']),
    )
