"""
Named measurements and the Holevo bound
=======================================

Measure a random qutrit ensemble with the fidelity-preserving, Helstrom and
pretty good measurements, and compare the information each extracts with chi.
"""

from qacc import (
    classical_fidelity,
    commuting_ensemble,
    fidelity,
    holevo_chi,
    induce_channel,
    measured_information,
    named_measurements,
    random_ensemble,
)

e = random_ensemble(3, (2, 3), 0.4, seed=7)
print(f"chi = {holevo_chi(e):.6f}, fidelity = {fidelity(e.rho0, e.rho1):.6f}")
for name, povm in named_measurements(e).items():
    channel = induce_channel(e, povm)
    print(f"{name:9s} outcomes={len(povm)}  I = {measured_information(e, povm):.6f}"
          f"  classical fidelity = {classical_fidelity(channel):.6f}")

# The fidelity-preserving basis keeps the overlap; the others can only raise it.
# For commuting states the shared eigenbasis reaches chi exactly.
c = commuting_ensemble(4, 0.3, seed=1)
named = named_measurements(c)
print("commuting: chi =", holevo_chi(c), " common basis I =", measured_information(c, named["common"]))
