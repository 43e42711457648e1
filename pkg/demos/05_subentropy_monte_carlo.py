"""
Subentropy as an average over random bases
==========================================

For an ensemble of pure states, the information from a Haar-random complete
orthogonal measurement averages to the subentropy of the average state.
"""

import numpy as np

from qacc import average_state, measured_information, random_ensemble, random_orthogonal_measurement, subentropy

for d in (2, 3):
    e = random_ensemble(d, (1, 1), 0.35, seed=d)
    samples = np.array([measured_information(e, random_orthogonal_measurement(d, [11, k])) for k in range(20_000)])
    se = samples.std(ddof=1) / np.sqrt(len(samples))
    print(f"d={d}: Monte Carlo mean {samples.mean():.5f} +- {se:.5f}   Q(average) {subentropy(average_state(e)):.5f}")
