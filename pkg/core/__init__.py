"""
量子内核：稠密态向量、Pauli 串期望值、单次测量抽样与精确基态求解
"""

from .statevector import (
    Statevector, ShotOutcome, haar_random_state, haar_random_states,
    outcome_plus_probability, sample_shot, perturb_expectations,
)
from .pauli import (
    PauliString, ObservableTable, apply_pauli, pauli_action, pauli_expectation,
    expectation_table, random_pauli_string, random_pauli_strings,
)
from .ground_state import (
    GroundStateResult, hamiltonian_matrix, apply_hamiltonian, energy,
    solve_ground_state, ground_state,
)

__all__ = [
    'Statevector', 'ShotOutcome', 'haar_random_state', 'haar_random_states',
    'outcome_plus_probability', 'sample_shot', 'perturb_expectations',
    'PauliString', 'ObservableTable', 'apply_pauli', 'pauli_action', 'pauli_expectation',
    'expectation_table', 'random_pauli_string', 'random_pauli_strings',
    'GroundStateResult', 'hamiltonian_matrix', 'apply_hamiltonian', 'energy',
    'solve_ground_state', 'ground_state',
]
