"""
Estimating accessible information
=================================

The POVM search gives a lower estimate of accessible information; chi is the
certified upper bound. On qubits a brute-force grid of projective
measurements is an independent check.
"""

import numpy as np

from qacc import (
    OptimizerConfig,
    figure3_ensemble,
    holevo_chi,
    optimize_accessible_information,
    pure_pair,
    qubit_projective_grid,
)

cfg = OptimizerConfig(restarts=8, max_iterations=400, seed=0)

e = pure_pair(np.pi / 4, 0.5)
r = optimize_accessible_information(e, cfg)
print(f"pure pair pi/4: optimizer {r.value:.6f}  grid {qubit_projective_grid(e, 400):.6f}  chi {holevo_chi(e):.6f}")
print("  best POVM from restart", r.restart_labels[int(np.argmax(r.restart_values))],
      "| restarts agreeing:", r.restarts_agreeing)

# The qutrit ensemble: a gap between the estimate and chi stays open.
f3 = figure3_ensemble(0.5)
r = optimize_accessible_information(f3, cfg)
print(f"qutrit pair: optimizer {r.value:.6f}  chi {holevo_chi(f3):.6f}  gap {holevo_chi(f3) - r.value:.4f}")
print("  named measurements:", {k: round(v, 6) for k, v in r.named_values.items()})
