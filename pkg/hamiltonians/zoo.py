"""
四类自旋链 Hamiltonian

开边界链：单点项 j ∈ [0, n-1]，两点项 j ∈ [0, n-2]，三点项 j ∈ [0, n-3]。
    Heisenberg: -Σ σ_jσ_{j+1} - hΣ σ_j,  σ ∈ {X, Y, Z}
    SPT:        -Σ Z_jX_{j+1}Z_{j+2} - h1 Σ X_j - h2 Σ X_jX_{j+1}
    Ising:      -Σ Z_jZ_{j+1} - h Σ X_j
    XYZ:        -Σ X_jY_{j+1}Z_{j+2} - h Σ A_j,  A_j 依次取 X, Y, Z
在 n=10 时所有项去重后恰好为 73 个 Pauli 串（30 单点 + 27 两点 + 16 三点）。
"""

from dataclasses import dataclass
from enum import Enum
from typing import List, Sequence, Tuple

import numpy as np

from config.settings import GRID_POINTS_PER_FAMILY, MIN_CHAIN_QUBITS
from core.pauli import PauliString
from utils.exceptions import ConfigurationError, SizeError

TermList = List[Tuple[float, PauliString]]


class HamiltonianFamily(Enum):
    HEISENBERG = "Heisenberg"
    SPT = "SPT"
    ISING = "Ising"
    XYZ = "XYZ"

    @property
    def arity(self) -> int:
        return 2 if self is HamiltonianFamily.SPT else 1

    @property
    def class_label(self) -> int:
        return list(HamiltonianFamily).index(self)


# 单参数族：h = 1.10 + 0.02k, k = 0..99
FIELD_START = 1.1
FIELD_STEP = 0.02
# SPT：h1 ∈ {0, 0.06, ..., 0.24} × h2 ∈ {-0.2, -0.18, ..., 0.18}
SPT_H1_START, SPT_H1_STEP, SPT_H1_COUNT = 0.0, 0.06, 5
SPT_H2_START, SPT_H2_STEP, SPT_H2_COUNT = -0.2, 0.02, 20

SPT_GRID_DESCRIPTION = (
    f"h1 = {SPT_H1_START} + {SPT_H1_STEP}k (k=0..{SPT_H1_COUNT - 1}) 外层, "
    f"h2 = {SPT_H2_START} + {SPT_H2_STEP}k (k=0..{SPT_H2_COUNT - 1}) 内层"
)
FIELD_GRID_DESCRIPTION = f"h = {FIELD_START} + {FIELD_STEP}k (k=0..{GRID_POINTS_PER_FAMILY - 1})"


@dataclass(frozen=True)
class HamiltonianSpec:
    family: HamiltonianFamily
    n_qubits: int
    params: Tuple[float, ...]

    def __post_init__(self):
        family = HamiltonianFamily(self.family)
        params = tuple(float(p) for p in np.atleast_1d(self.params))
        if len(params) != family.arity:
            raise ConfigurationError(
                f"{family.value} 需要 {family.arity} 个参数，实际为 {len(params)}"
            )
        object.__setattr__(self, 'family', family)
        object.__setattr__(self, 'params', params)

    def label(self) -> str:
        if self.family is HamiltonianFamily.SPT:
            return f"SPT(h1={self.params[0]:.2f}, h2={self.params[1]:.2f})"
        return f"{self.family.value}(h={self.params[0]:.2f})"


def _chain_terms(n: int, pattern: str, coefficient: float) -> TermList:
    """pattern 在链上平移得到的所有项，例如 'ZXZ' 给出 n-2 个三点项"""
    span = len(pattern)
    return [
        (coefficient, PauliString.from_sites(n, {j + k: letter for k, letter in enumerate(pattern)}))
        for j in range(n - span + 1)
    ]


def build_family(spec: HamiltonianSpec) -> TermList:
    """按族构造 Hamiltonian 的项列表，系数为零的项被丢弃"""
    n = spec.n_qubits
    if n < MIN_CHAIN_QUBITS:
        raise SizeError(f"三点项要求链长 ≥ {MIN_CHAIN_QUBITS}，实际为 {n}")

    terms: TermList = []
    if spec.family is HamiltonianFamily.HEISENBERG:
        (h,) = spec.params
        for j in range(n - 1):
            for sigma in "XYZ":
                terms.append((-1.0, PauliString.from_sites(n, {j: sigma, j + 1: sigma})))
        for j in range(n):
            for sigma in "XYZ":
                terms.append((-h, PauliString.single(n, j, sigma)))
    elif spec.family is HamiltonianFamily.SPT:
        h1, h2 = spec.params
        terms += _chain_terms(n, "ZXZ", -1.0)
        terms += _chain_terms(n, "X", -h1)
        terms += _chain_terms(n, "XX", -h2)
    elif spec.family is HamiltonianFamily.ISING:
        (h,) = spec.params
        terms += _chain_terms(n, "ZZ", -1.0)
        terms += _chain_terms(n, "X", -h)
    elif spec.family is HamiltonianFamily.XYZ:
        (h,) = spec.params
        terms += _chain_terms(n, "XYZ", -1.0)
        for j in range(n):
            terms.append((-h, PauliString.single(n, j, "XYZ"[j % 3])))

    return [(float(c), p) for c, p in terms if c != 0.0]


def parameter_grid(family) -> List[Tuple[float, ...]]:
    """每族恰好 100 组参数，顺序确定"""
    family = HamiltonianFamily(family)
    if family is HamiltonianFamily.SPT:
        return [
            (round(SPT_H1_START + SPT_H1_STEP * a, 10), round(SPT_H2_START + SPT_H2_STEP * b, 10))
            for a in range(SPT_H1_COUNT)
            for b in range(SPT_H2_COUNT)
        ]
    return [(round(FIELD_START + FIELD_STEP * k, 10),) for k in range(GRID_POINTS_PER_FAMILY)]


def grid_description(family) -> str:
    family = HamiltonianFamily(family)
    return SPT_GRID_DESCRIPTION if family is HamiltonianFamily.SPT else FIELD_GRID_DESCRIPTION


def observable_pool(n_qubits: int, families: Sequence = tuple(HamiltonianFamily)) -> List[PauliString]:
    """所有族的 Hamiltonian 中出现过的 Pauli 串，去重并按字典序排列"""
    pool = set()
    for family in families:
        family = HamiltonianFamily(family)
        unit_params = (1.0,) * family.arity
        for _, pauli in build_family(HamiltonianSpec(family, n_qubits, unit_params)):
            pool.add(pauli)
    return sorted(pool)
