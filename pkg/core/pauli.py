"""
Pauli串与期望值计算

Pauli串直接作用在态向量上（比特翻转置换 + ±1/±i 相位），不生成算符矩阵。
比特约定：第 q 个字母作用在第 q 个量子比特上，对应计算基指标的第 (n-1-q) 位（与 kron 顺序一致）。
"""

from dataclasses import dataclass, field
from typing import Dict, List, Sequence, Tuple

import numpy as np

from config.settings import IMAG_TOLERANCE
from utils.exceptions import DimensionError, DomainError, InputError, SizeError

PAULI_LETTERS = "IXYZ"


@dataclass(frozen=True, order=True)
class PauliString:
    """长度为 n 的 {I,X,Y,Z} 字母串"""
    letters: str

    def __post_init__(self):
        letters = self.letters.upper()
        if not letters:
            raise SizeError("Pauli串长度必须至少为1")
        bad = set(letters) - set(PAULI_LETTERS)
        if bad:
            raise DomainError(f"Pauli串包含非法字母: {''.join(sorted(bad))}")
        object.__setattr__(self, 'letters', letters)

    @classmethod
    def parse(cls, text: str) -> "PauliString":
        return cls(text.strip())

    @classmethod
    def identity(cls, n_qubits: int) -> "PauliString":
        return cls("I" * n_qubits)

    @classmethod
    def from_sites(cls, n_qubits: int, sites: Dict[int, str]) -> "PauliString":
        """由 {比特位置: 字母} 构造，例如 from_sites(4, {0: 'Z', 1: 'Z'}) -> ZZII"""
        letters = ["I"] * n_qubits
        for site, letter in sites.items():
            if not 0 <= site < n_qubits:
                raise DimensionError(f"比特位置 {site} 超出范围 [0, {n_qubits})")
            letters[site] = letter
        return cls("".join(letters))

    @classmethod
    def single(cls, n_qubits: int, site: int, letter: str) -> "PauliString":
        return cls.from_sites(n_qubits, {site: letter})

    @property
    def n_qubits(self) -> int:
        return len(self.letters)

    @property
    def is_identity(self) -> bool:
        return set(self.letters) == {"I"}

    @property
    def weight(self) -> int:
        return sum(1 for letter in self.letters if letter != "I")

    @property
    def x_mask(self) -> int:
        """X 或 Y 所在比特的翻转掩码"""
        return self._mask("XY")

    @property
    def z_mask(self) -> int:
        """Z 或 Y 所在比特的相位掩码"""
        return self._mask("ZY")

    @property
    def y_count(self) -> int:
        return self.letters.count("Y")

    def _mask(self, letters: str) -> int:
        n = self.n_qubits
        mask = 0
        for q, letter in enumerate(self.letters):
            if letter in letters:
                mask |= 1 << (n - 1 - q)
        return mask

    def __str__(self):
        return self.letters


def _parity(indices: np.ndarray, mask: int) -> np.ndarray:
    parity = np.zeros(indices.shape, dtype=np.int64)
    bit = 0
    while mask >> bit:
        if (mask >> bit) & 1:
            parity ^= (indices >> bit) & 1
        bit += 1
    return parity


def pauli_action(observable: PauliString) -> Tuple[np.ndarray, np.ndarray]:
    """
    返回 (perm, phase)，满足 (P ψ)[c] = phase[c] * ψ[perm[c]]

    P|b> = i^{nY} (-1)^{popcount(b & z_mask)} |b ^ x_mask>
    """
    dim = 1 << observable.n_qubits
    indices = np.arange(dim, dtype=np.int64)
    perm = indices ^ observable.x_mask
    source_phase = (1j ** observable.y_count) * (1 - 2 * _parity(indices, observable.z_mask))
    return perm, source_phase[perm]


def apply_pauli(amplitudes: np.ndarray, observable: PauliString) -> np.ndarray:
    """
    将 Pauli 串作用到态向量上；二维输入按第0维（即每一列）作用
    """
    amplitudes = np.asarray(amplitudes)
    dim = 1 << observable.n_qubits
    if amplitudes.shape[0] != dim:
        raise DimensionError(
            f"Pauli串 {observable} 需要长度 {dim} 的态向量，实际为 {amplitudes.shape[0]}"
        )
    perm, phase = pauli_action(observable)
    if amplitudes.ndim == 1:
        return phase * amplitudes[perm]
    return phase[:, None] * amplitudes[perm]


def _check_length(n_qubits: int, observable: PauliString):
    if observable.n_qubits != n_qubits:
        raise DimensionError(
            f"Pauli串长度 {observable.n_qubits} 与量子比特数 {n_qubits} 不一致"
        )


def pauli_expectation(state, observable: PauliString) -> float:
    """⟨ψ|P|ψ⟩，截断到 [-1, 1]"""
    _check_length(state.n_qubits, observable)
    amplitudes = state.amplitudes
    value = np.vdot(amplitudes, apply_pauli(amplitudes, observable))
    if abs(value.imag) > IMAG_TOLERANCE:
        # 厄米算符的期望值虚部只能来自舍入误差
        raise DomainError(f"期望值虚部过大: {value.imag:.3e}")
    return float(np.clip(value.real, -1.0, 1.0))


def expectation_table(states, observables: Sequence[PauliString]) -> np.ndarray:
    """
    批量计算期望值表 (N, J)

    Args:
        states: Statevector 列表或形状为 (N, 2^n) 的振幅矩阵
        observables: J 个 Pauli 串
    """
    if len(observables) == 0:
        raise InputError("可观测量列表为空")
    if isinstance(states, np.ndarray):
        amplitudes = np.atleast_2d(states)
    else:
        amplitudes = np.vstack([state.amplitudes for state in states])
    n_qubits = int(np.log2(amplitudes.shape[1]))
    table = np.empty((amplitudes.shape[0], len(observables)))
    conj = np.conj(amplitudes)
    for j, observable in enumerate(observables):
        _check_length(n_qubits, observable)
        perm, phase = pauli_action(observable)
        values = np.sum(conj * (phase[None, :] * amplitudes[:, perm]), axis=1)
        table[:, j] = values.real
    return np.clip(table, -1.0, 1.0)


def random_pauli_string(n_qubits: int, rng: np.random.Generator) -> PauliString:
    """在 4^n - 1 个非恒等 Pauli 串上均匀抽样（拒绝恒等串）"""
    if n_qubits < 1:
        raise SizeError(f"量子比特数必须 ≥ 1，实际为 {n_qubits}")
    while True:
        digits = rng.integers(0, 4, size=n_qubits)
        if np.any(digits):
            return PauliString("".join(PAULI_LETTERS[d] for d in digits))


def random_pauli_strings(n_qubits: int, count: int, rng: np.random.Generator) -> List[PauliString]:
    return [random_pauli_string(n_qubits, rng) for _ in range(count)]


@dataclass(frozen=True)
class ObservableTable:
    """候选态 × 可观测量 的期望值表，元素位于 [-1, 1]"""
    expectations: np.ndarray
    observables: Tuple[PauliString, ...] = field(default=())

    def __post_init__(self):
        table = np.array(self.expectations, dtype=float)
        if table.ndim != 2:
            raise DimensionError(f"期望值表必须是二维矩阵，实际维度 {table.ndim}")
        if table.shape[1] == 0:
            raise InputError("期望值表没有任何可观测量列")
        if np.any(np.abs(table) > 1.0):
            raise DomainError("期望值表元素必须位于 [-1, 1]")
        if self.observables and len(self.observables) != table.shape[1]:
            raise DimensionError(
                f"可观测量数量 {len(self.observables)} 与表的列数 {table.shape[1]} 不一致"
            )
        table.setflags(write=False)
        object.__setattr__(self, 'expectations', table)
        object.__setattr__(self, 'observables', tuple(self.observables))

    @classmethod
    def from_states(cls, states, observables: Sequence[PauliString]) -> "ObservableTable":
        return cls(expectation_table(states, observables), tuple(observables))

    @property
    def n_candidates(self) -> int:
        return self.expectations.shape[0]

    @property
    def n_observables(self) -> int:
        return self.expectations.shape[1]

    def column(self, j: int) -> np.ndarray:
        return self.expectations[:, j]

    def with_expectations(self, expectations: np.ndarray) -> "ObservableTable":
        return ObservableTable(expectations, self.observables)
