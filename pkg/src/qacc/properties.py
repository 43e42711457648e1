"""Registry of inequality properties checked by the fuzz harness.

Each property maps an ensemble and its :class:`BoundReport` to a margin:
nonnegative means the property holds, ``None`` means it does not apply to
this ensemble. Margins are computed from the report fields wherever
possible, so a dumped counterexample reproduces its margin when recomputed
from a fresh report.
"""

from __future__ import annotations

import math
from typing import Callable, Optional

from . import matcore
from .bounds import BoundReport, lemma_ub2_gap, report_checks
from .ensembles import BinaryEnsemble, average_state
from .errors import FidelityNotPreserved
from .measurements import COMMUTING_TOL, classical_fidelity, fidelity_preserving_measurement, induce_channel
from .measures import chi_from_relative_entropies, fidelity, relative_entropy, von_neumann_entropy

Property = Callable[[BinaryEnsemble, BoundReport], Optional[float]]

Q_CAP = 0.60995


def _holevo_bound(e, r):
    return r.chi + 1e-8 - max(r.i_fid, r.i_helstrom, r.i_pgm, r.i_acc_est)


def _relinf(e, r):
    # chi as the expected relative entropy to the average state
    other = chi_from_relative_entropies(e)
    if not math.isfinite(other):
        return None
    return 1e-9 - abs(r.chi - other)


def _dacunha_castelle(e, r):
    s = relative_entropy(e.rho0, e.rho1)
    if not math.isfinite(s) or r.fidelity_b <= 0:
        return None
    return s + 2 * math.log2(r.fidelity_b) + 1e-8


def _fidelity_preserved(e, r):
    try:
        m = fidelity_preserving_measurement(e.rho0, e.rho1)
    except FidelityNotPreserved:
        return -1.0
    return 1e-8 - abs(classical_fidelity(induce_channel(e, m)) - r.fidelity_b)


def _fidelity_symmetric(e, r):
    return 1e-10 - abs(fidelity(e.rho1, e.rho0) - r.fidelity_b)


def _subentropy_cap(e, r):
    return Q_CAP - r.subentropy_q


def _subentropy_le_entropy(e, r):
    return von_neumann_entropy(average_state(e)) + 1e-10 - r.subentropy_q


def _subentropy_nonnegative(e, r):
    return r.subentropy_q + 1e-12


def _lemma_ub2(e, r):
    if matcore.commutator_norm(e.rho0.matrix, e.rho1.matrix) > COMMUTING_TOL:
        return None
    lhs, rhs = lemma_ub2_gap(e)
    return rhs + 1e-9 - lhs


def _t2_range(e, r):
    return min(r.t2, 1.0 - r.t2) + 1e-12


def _sandwich(name: str) -> Property:
    def check(e, r):
        for n, lhs, rhs, tol in report_checks(r):
            if n == name:
                return rhs + tol - lhs
        raise KeyError(name)

    return check


_SANDWICH_NAMES = [name for name, *_ in report_checks(BoundReport(*([0.0] * 13), True))]

PROPERTIES: dict[str, Property] = {
    "holevo_bound": _holevo_bound,
    "holevo_relinf": _relinf,
    **{f"sandwich:{n}": _sandwich(n) for n in _SANDWICH_NAMES},
    "t2_in_unit_interval": _t2_range,
    "dacunha_castelle": _dacunha_castelle,
    "fidelity_preserved": _fidelity_preserved,
    "fidelity_symmetric": _fidelity_symmetric,
    "subentropy_cap": _subentropy_cap,
    "subentropy_le_entropy": _subentropy_le_entropy,
    "subentropy_nonnegative": _subentropy_nonnegative,
    "lemma_ub2": _lemma_ub2,
}


def evaluate_properties(e: BinaryEnsemble, r: BoundReport) -> dict[str, Optional[float]]:
    return {name: prop(e, r) for name, prop in PROPERTIES.items()}

