"""
States, entropies and fidelity
==============================

Build a few density matrices and evaluate the scalar measures: von Neumann
entropy, root fidelity, Holevo information and subentropy.
"""

import numpy as np

from qacc import (
    BinaryEnsemble,
    average_state,
    fidelity,
    holevo_chi,
    pure_pair,
    pure_pair_chi,
    relative_entropy,
    subentropy,
    subentropy_maximally_mixed,
    von_neumann_entropy,
)

# Two pure qubit states with overlap cos(pi/3) = 1/2, equal priors.
e = pure_pair(np.pi / 3, 0.5)
print("fidelity          ", fidelity(e.rho0, e.rho1))
print("average spectrum  ", average_state(e).eigenvalues)
print("chi (numerical)   ", holevo_chi(e))
print("chi (closed form) ", pure_pair_chi(np.pi / 3, 0.5))

# Mixed states work the same way; the validator rejects anything that is
# not Hermitian, positive and unit trace.
rho = np.diag([0.5, 0.3, 0.2])
sigma = np.array([[0.4, 0.1, 0], [0.1, 0.4, 0], [0, 0, 0.2]])
mixed = BinaryEnsemble(0.3, rho, sigma)
print("S(rho)            ", von_neumann_entropy(rho))
print("S(rho || sigma)   ", relative_entropy(rho, sigma))
print("chi(mixed)        ", holevo_chi(mixed))

# Subentropy of the average state, and the maximally mixed closed form.
print("Q(average)        ", subentropy(average_state(mixed)))
for d in (2, 3, 8):
    print(f"Q(I/{d})           ", subentropy(np.eye(d) / d), subentropy_maximally_mixed(d))
