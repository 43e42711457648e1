"""
Lower-bound curves
==================

Tabulate the chi-based bounds (t_max), the fidelity bounds, subentropy and
the named-measurement informations along the two pure-pair families: priors
at overlap 1/2, and angles at equal priors.
"""

import numpy as np

from qacc import OptimizerConfig, binary_entropy, build_report, pure_pair, theorem_bound_1, theorem_bound_2

cfg = OptimizerConfig(restarts=2, max_iterations=100)
cols = ("chi", "t_max", "lb1", "lb2", "subentropy_q", "i_pgm", "i_helstrom", "i_acc_est")
print("prior p, overlap 1/2")
print("   p    " + " ".join(f"{c:>12s}" for c in cols))
for p in np.linspace(0, 1, 11):
    r = build_report(pure_pair(np.pi / 3, p), cfg)
    vals = {**r.to_dict(), "t_max": r.t_max}
    print(f"{p:6.2f}  " + " ".join(f"{vals[c]:12.6f}" for c in cols))

print("\nangle theta, equal priors")
for theta in np.linspace(0, np.pi / 2, 7):
    r = build_report(pure_pair(theta, 0.5), cfg)
    vals = {**r.to_dict(), "t_max": r.t_max}
    print(f"{theta:6.3f}  " + " ".join(f"{vals[c]:12.6f}" for c in cols))

# For orthogonal states chi = H(p). The first bound exceeds the second only
# for priors between about 0.105 and 0.895 (excluding 1/2).
print("\northogonal states: t1 - t2")
for p in (0.01, 0.05, 0.1, 0.11, 0.3, 0.7, 0.95):
    chi = binary_entropy(p)
    print(f"  p={p:4.2f}  {theorem_bound_1(p, chi) - theorem_bound_2(p, chi):+.6f}")
