"""
自旋链 Hamiltonian 族与基态库
"""

from .zoo import (
    HamiltonianFamily,
    HamiltonianSpec,
    TermList,
    build_family,
    grid_description,
    observable_pool,
    parameter_grid,
)
from .state_bank import (
    StateBank,
    default_bank_path,
    family_bank_split,
    ground_state_bank,
    load_bank,
    save_bank,
)

__all__ = [
    'HamiltonianFamily',
    'HamiltonianSpec',
    'TermList',
    'build_family',
    'grid_description',
    'observable_pool',
    'parameter_grid',
    'StateBank',
    'default_bank_path',
    'family_bank_split',
    'ground_state_bank',
    'load_bank',
    'save_bank',
]
