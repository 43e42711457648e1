"""Closed-form lower bounds on accessible information and the per-ensemble report.

The scalar bounds take ``(p, chi)`` or ``(p, fidelity)`` so they can be
plotted and tested without any linear algebra; :func:`build_report` wires
them to the measured quantities of one ensemble.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass

from . import matcore
from .accinfo import OptimizerConfig, optimize_accessible_information
from .ensembles import BinaryEnsemble, average_state
from .errors import DomainError, NotCommuting
from .measurements import COMMUTING_TOL, measured_information, named_measurements
from .measures import binary_entropy, fidelity, measure_report

RADICAND_SLACK = 1e-9
CLOSED_FORM_TOL = 1e-8


def _chi_radicand(p: float, chi: float) -> float:
    """``4p(1-p) - chi^2``, clamped at zero within the float-noise window."""
    if chi < 0:
        chi = 0.0
    rad = 4 * p * (1 - p) - chi * chi
    if rad < -RADICAND_SLACK:
        raise DomainError(f"DomainError: chi={chi} exceeds 2 sqrt(p(1-p)) at p={p}")
    return max(rad, 0.0)


def theorem_bound_1(p: float, chi: float) -> float:
    """``H(p) - sqrt(4p(1-p) - chi^2)``; can be negative."""
    return binary_entropy(p) - math.sqrt(_chi_radicand(p, chi))


def theorem_bound_2(p: float, chi: float) -> float:
    """``-log2[p^2 + (1-p)^2 + 2p(1-p) sqrt(1 - chi^2 / (4p(1-p)))]``.

    The cross term is rewritten as ``sqrt(p(1-p)) sqrt(4p(1-p) - chi^2)`` so
    that ``p`` in ``{0, 1}`` needs no special case.
    """
    rad = _chi_radicand(p, chi)
    bracket = p * p + (1 - p) ** 2 + math.sqrt(p * (1 - p)) * math.sqrt(rad)
    return max(-math.log2(min(bracket, 1.0)), 0.0) + 0.0


def fidelity_bound_1(p: float, b: float) -> float:
    return binary_entropy(p) - 2 * math.sqrt(p * (1 - p)) * b


def fidelity_bound_2(p: float, b: float) -> float:
    bracket = p * p + (1 - p) ** 2 + 2 * p * (1 - p) * b
    return max(-math.log2(min(bracket, 1.0)), 0.0) + 0.0


def chi_upper_from_fidelity(p: float, b: float) -> float:
    """Upper bound on chi from the fidelity of the two states."""
    return 2 * math.sqrt(max(p * (1 - p) * (1 - b * b), 0.0))


def lemma_ub2_gap(e: BinaryEnsemble) -> tuple[float, float]:
    """Both sides of the average-fidelity inequality for a commuting ensemble.

    Returns ``(lhs, rhs)`` with ``lhs = p B(rho0, avg) + (1-p) B(rho1, avg)``
    and ``rhs = sqrt(p^2 + (1-p)^2 + 2p(1-p) B(rho0, rho1))``.

    Raises:
        NotCommuting: if the states do not commute within 1e-8.
    """
    comm = matcore.commutator_norm(e.rho0.matrix, e.rho1.matrix)
    if comm > COMMUTING_TOL:
        raise NotCommuting(f"NotCommuting: commutator norm {comm:.3e}")
    avg = average_state(e)
    p = e.p
    lhs = p * fidelity(e.rho0, avg) + (1 - p) * fidelity(e.rho1, avg)
    rhs = math.sqrt(p * p + (1 - p) ** 2 + 2 * p * (1 - p) * fidelity(e.rho0, e.rho1))
    return lhs, rhs


@dataclass(frozen=True)
class BoundReport:
    p: float
    chi: float
    fidelity_b: float
    h_p: float
    t1: float
    t2: float
    lb1: float
    lb2: float
    subentropy_q: float
    i_fid: float
    i_helstrom: float
    i_pgm: float
    i_acc_est: float
    sandwich_ok: bool

    @property
    def t_max(self) -> float:
        return max(self.t1, self.t2)

    def to_dict(self) -> dict:
        return asdict(self)


def report_checks(r: BoundReport) -> list[tuple[str, float, float, float]]:
    """Chained inequalities of a report as ``(name, lhs, rhs, tolerance)``.

    A check holds when ``lhs <= rhs + tolerance``. The optimizer scores the
    named measurements itself, so they never exceed its estimate.
    """
    cor = chi_upper_from_fidelity(r.p, r.fidelity_b)
    return [
        ("t1<=lb1", r.t1, r.lb1, 1e-10),
        ("t2<=lb2", r.t2, r.lb2, 1e-10),
        ("lb_max<=i_fid", max(r.lb1, r.lb2), r.i_fid, CLOSED_FORM_TOL),
        ("i_fid<=i_acc", r.i_fid, r.i_acc_est, CLOSED_FORM_TOL),
        ("i_helstrom<=i_acc", r.i_helstrom, r.i_acc_est, CLOSED_FORM_TOL),
        ("i_pgm<=i_acc", r.i_pgm, r.i_acc_est, CLOSED_FORM_TOL),
        ("i_acc<=chi", r.i_acc_est, r.chi, CLOSED_FORM_TOL),
        ("chi<=h_p", r.chi, r.h_p, CLOSED_FORM_TOL),
        ("chi<=corollary", r.chi, cor, CLOSED_FORM_TOL),
    ]


def failed_checks(r: BoundReport) -> list[str]:
    return [name for name, lhs, rhs, tol in report_checks(r) if not lhs <= rhs + tol]


def build_report(e: BinaryEnsemble, cfg: OptimizerConfig | None = None) -> BoundReport:
    """Every bound, measured information and the optimizer estimate for ``e``.

    ``sandwich_ok`` is true iff all of :func:`report_checks` hold. Raises
    whatever the measurement constructions raise, including
    ``FidelityNotPreserved``.
    """
    cfg = cfg or OptimizerConfig()
    m = measure_report(e)
    p, chi, b = e.p, max(m.chi, 0.0), m.fidelity_b
    named = named_measurements(e, strict=True)
    acc = optimize_accessible_information(e, cfg, named=named)
    fields = dict(
        p=p,
        chi=chi,
        fidelity_b=b,
        h_p=m.binary_entropy_p,
        t1=theorem_bound_1(p, chi),
        t2=theorem_bound_2(p, chi),
        lb1=fidelity_bound_1(p, b),
        lb2=fidelity_bound_2(p, b),
        subentropy_q=m.subentropy_q,
        i_fid=measured_information(e, named["fidelity"]),
        i_helstrom=measured_information(e, named["helstrom"]),
        i_pgm=measured_information(e, named["pgm"]),
        i_acc_est=acc.value,
    )
    # plain floats without negative zero, for stable serialization
    fields = {k: float(v) + 0.0 for k, v in fields.items()}
    draft = BoundReport(sandwich_ok=True, **fields)
    return BoundReport(sandwich_ok=not failed_checks(draft), **fields)
