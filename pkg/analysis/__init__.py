from .infogain import (
    SampleStats, HaarMoments, sample_moments, approx_info_gain, haar_moments_pauli,
    haar_moments_general, expected_sample_info_gain, predicted_scaling,
    exact_info_gain_uniform, exact_info_gains_uniform,
)

__all__ = [
    'SampleStats', 'HaarMoments', 'sample_moments', 'approx_info_gain', 'haar_moments_pauli',
    'haar_moments_general', 'expected_sample_info_gain', 'predicted_scaling',
    'exact_info_gain_uniform', 'exact_info_gains_uniform',
]
