"""POVMs, the classical channel they induce on a binary ensemble, and named measurements."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np

from . import matcore
from .ensembles import BinaryEnsemble, DensityMatrix, average_state, validate_density
from .errors import DimensionMismatch, FidelityNotPreserved, NotCommuting, QaccError
from .measures import binary_entropy, fidelity, sqrt_state

log = logging.getLogger(__name__)

ELEMENT_TOL = 1e-10
COMPLETENESS_TOL = 1e-9
NEGLIGIBLE_OUTCOME = 1e-15
COMMUTING_TOL = 1e-8
FIDELITY_CHECK_TOL = 1e-8


@dataclass(frozen=True, eq=False)
class Povm:
    """Finite list of PSD operators summing to the identity."""

    elements: tuple
    label: str = ""
    dim: int = field(init=False)

    def __post_init__(self):
        els = tuple(matcore.check_hermitian(np.asarray(e, dtype=complex), ELEMENT_TOL) for e in self.elements)
        if not els:
            raise QaccError("POVM needs at least one element")
        d = els[0].shape[0]
        for k, e in enumerate(els):
            if e.shape != (d, d):
                raise DimensionMismatch(f"DimensionMismatch: element {k} has shape {e.shape}")
            lo = np.linalg.eigvalsh(e)[0]
            if lo < -ELEMENT_TOL:
                raise QaccError(f"POVM element {k} has eigenvalue {lo:.3e} < 0")
        resid = np.max(np.abs(sum(els) - np.eye(d)))
        if resid > COMPLETENESS_TOL:
            raise QaccError(f"POVM elements sum to identity only within {resid:.3e}")
        object.__setattr__(self, "elements", els)
        object.__setattr__(self, "dim", d)

    def __len__(self):
        return len(self.elements)

    def conjugated(self, u: np.ndarray) -> "Povm":
        return Povm(tuple(u @ e @ u.conj().T for e in self.elements), self.label)

    def rank_one_vectors(self, tol: float = 1e-12) -> np.ndarray:
        """Columns ``a`` with ``sum a a^dagger`` equal to the POVM's elements, one per eigenvector."""
        cols = []
        for e in self.elements:
            w, v = np.linalg.eigh(e)
            for lam, vec in zip(w, v.T):
                if lam > tol:
                    cols.append(np.sqrt(lam) * vec)
        return np.array(cols).T


def povm_from_vectors(vectors, label: str = "", kernel: np.ndarray | None = None) -> Povm:
    """Rank-one POVM ``{v v^dagger}`` from columns, plus an optional extra projector."""
    vectors = np.asarray(vectors, dtype=complex)
    els = [np.outer(v, v.conj()) for v in vectors.T]
    if kernel is not None and np.trace(kernel).real > 0.5:
        els.append(kernel)
    return Povm(tuple(els), label)


def identity_povm(d: int) -> Povm:
    return Povm((np.eye(d, dtype=complex),), "identity")


@dataclass(frozen=True)
class InducedChannel:
    """Joint statistics of the encoded bit and a measurement outcome."""

    p: float
    q0: np.ndarray
    q1: np.ndarray
    q: np.ndarray
    r0: np.ndarray


def channel_from_distributions(p: float, q0, q1) -> InducedChannel:
    q0 = np.asarray(q0, dtype=float)
    q1 = np.asarray(q1, dtype=float)
    # rounding noise on impossible outcomes would leak sqrt(1e-17) into overlaps
    q0 = np.where(q0 < NEGLIGIBLE_OUTCOME, 0.0, q0)
    q1 = np.where(q1 < NEGLIGIBLE_OUTCOME, 0.0, q1)
    q = p * q0 + (1 - p) * q1
    live = q >= NEGLIGIBLE_OUTCOME
    r0 = np.full_like(q, p)
    r0[live] = np.clip(p * q0[live] / q[live], 0.0, 1.0)
    return InducedChannel(p, q0, q1, q, r0)


def induce_channel(e: BinaryEnsemble, m: Povm) -> InducedChannel:
    if e.dim != m.dim:
        raise DimensionMismatch(f"DimensionMismatch: ensemble dim {e.dim}, POVM dim {m.dim}")
    els = np.array(m.elements)
    q0 = np.einsum("mij,ji->m", els, e.rho0.matrix).real
    q1 = np.einsum("mij,ji->m", els, e.rho1.matrix).real
    return channel_from_distributions(e.p, q0, q1)


def mutual_information(c: InducedChannel) -> float:
    """``H(p) - sum_m q(m) H(r0(m))`` in bits."""
    hp = binary_entropy(c.p)
    live = c.q >= NEGLIGIBLE_OUTCOME
    cond = sum(qm * binary_entropy(rm) for qm, rm in zip(c.q[live], c.r0[live]))
    return min(max(hp - cond, 0.0), hp)


def classical_fidelity(c: InducedChannel) -> float:
    """Bhattacharyya overlap ``sum_m sqrt(q0(m) q1(m))``."""
    return float(min(np.sqrt(c.q0 * c.q1).sum(), 1.0))


def measured_information(e: BinaryEnsemble, m: Povm) -> float:
    return mutual_information(induce_channel(e, m))


# --- named measurements ---------------------------------------------------------

def _support(h: np.ndarray, rel: float = matcore.PSEUDO_THRESHOLD):
    w, v = np.linalg.eigh(h)
    keep = w > rel * max(w.max(), 0.0)
    return v[:, keep], v[:, ~keep]


def _geometric_basis(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Eigenvectors of ``B^-1/2 (B^1/2 A B^1/2)^1/2 B^-1/2`` for invertible ``B``."""
    wb, vb = np.linalg.eigh(b)
    b_half = (vb * np.sqrt(wb)) @ vb.conj().T
    b_ihalf = (vb / np.sqrt(wb)) @ vb.conj().T
    inner = b_half @ a @ b_half
    wi, vi = np.linalg.eigh((inner + inner.conj().T) / 2)
    wi = np.where(wi > 1e-14 * wi.max(), wi, 0.0)
    mid = (vi * np.sqrt(wi)) @ vi.conj().T
    o = b_ihalf @ mid @ b_ihalf
    return np.linalg.eigh((o + o.conj().T) / 2)[1]


def _is_invertible(h: np.ndarray, rel: float = 1e-10) -> bool:
    w = np.linalg.eigvalsh(h)
    return w[0] > rel * w[-1]


def _fidelity_candidates(r0: np.ndarray, r1: np.ndarray):
    """Yield (orthonormal basis columns, extra projector) pairs to try, most exact first."""
    s, ker = _support(r0 + r1)
    a, b = s.conj().T @ r0 @ s, s.conj().T @ r1 @ s
    kernel = ker @ ker.conj().T if ker.shape[1] else None
    inv_a, inv_b = _is_invertible(a), _is_invertible(b)
    if inv_a or inv_b:
        if inv_a and inv_b:
            anchor_b = np.linalg.eigvalsh(b)[0] >= np.linalg.eigvalsh(a)[0]
        else:
            anchor_b = inv_b
        basis = _geometric_basis(a, b) if anchor_b else _geometric_basis(b, a)
        yield s @ basis, kernel
    rank0, rank1 = (int(np.sum(np.linalg.eigvalsh(x) > 1e-10)) for x in (a, b))
    if rank0 == 1 and rank1 == 1:
        # two pure states: eigenbasis of the difference on their span
        yield s @ np.linalg.eigh(a - b)[1], kernel
    # anchor on one state's support with its kernel as a single outcome;
    # the other state's weight on that kernel never meets the anchor's
    order = ((r1, r0), (r0, r1)) if rank1 >= rank0 else ((r0, r1), (r1, r0))
    for anchor, other in order:
        sa, ka = _support(anchor)
        aa, oo = sa.conj().T @ anchor @ sa, sa.conj().T @ other @ sa
        yield sa @ _geometric_basis(oo, aa), (ka @ ka.conj().T if ka.shape[1] else None)
    eps = 1e-8 * max(np.trace(a).real, np.trace(b).real)
    reg = eps * np.eye(a.shape[0])
    yield s @ _geometric_basis(a + reg, b + reg), kernel


def fidelity_preserving_measurement(rho0, rho1) -> Povm:
    """Complete orthogonal measurement whose outcome statistics keep the fidelity.

    The basis diagonalizes the operator geometric mean
    ``rho1^-1/2 (rho1^1/2 rho0 rho1^1/2)^1/2 rho1^-1/2`` on the joint support,
    with the joint kernel as one extra outcome. Rank-deficient anchors are
    handled as described in :func:`_fidelity_candidates`.

    Raises:
        FidelityNotPreserved: if no candidate basis reproduces the quantum
            fidelity within 1e-8.
    """
    rho0, rho1 = validate_density(rho0), validate_density(rho1)
    if rho0.dim != rho1.dim:
        raise DimensionMismatch(f"DimensionMismatch: {rho0.dim} vs {rho1.dim}")
    target = fidelity(rho0, rho1)
    probe = BinaryEnsemble(0.5, rho0, rho1)
    best_err = np.inf
    for basis, kernel in _fidelity_candidates(rho0.matrix, rho1.matrix):
        povm = povm_from_vectors(basis, "fidelity", kernel)
        err = abs(classical_fidelity(induce_channel(probe, povm)) - target)
        if err <= FIDELITY_CHECK_TOL:
            return povm
        best_err = min(best_err, err)
    log.warning("fidelity-preserving construction failed, best error %.3e", best_err)
    raise FidelityNotPreserved(
        f"FidelityNotPreserved: classical fidelity misses {target:.12f} by {best_err:.3e}"
    )


def helstrom_measurement(e: BinaryEnsemble) -> Povm:
    """Projective measurement in the eigenbasis of ``p rho0 - (1-p) rho1``."""
    gamma = e.p * e.rho0.matrix - (1 - e.p) * e.rho1.matrix
    return povm_from_vectors(matcore.hermitian_eig(gamma).eigenvectors, "helstrom")


def pretty_good_measurement(e: BinaryEnsemble) -> Povm:
    """Elements ``p_i avg^-1/2 rho_i avg^-1/2`` plus the kernel of the average state."""
    if e.p in (0.0, 1.0):
        return identity_povm(e.dim)
    avg = average_state(e)
    r = matcore.spectral_map(avg.matrix, lambda x: 1 / np.sqrt(x), eig=avg.eig)
    els = [e.p * r @ e.rho0.matrix @ r, (1 - e.p) * r @ e.rho1.matrix @ r]
    els = [(x + x.conj().T) / 2 for x in els]
    kernel = np.eye(e.dim) - (els[0] + els[1])
    if np.trace(kernel).real > 0.5:
        els.append((kernel + kernel.conj().T) / 2)
    return Povm(tuple(els), "pgm")


def common_eigenbasis(a: np.ndarray, b: np.ndarray, tol: float = 1e-9) -> np.ndarray:
    """Orthonormal basis diagonalizing two commuting Hermitian matrices."""
    w, v = np.linalg.eigh(a)
    cols = []
    start = 0
    while start < len(w):
        stop = start + 1
        while stop < len(w) and w[stop] - w[start] <= tol:
            stop += 1
        block = v[:, start:stop]
        sub = block.conj().T @ b @ block
        cols.append(block @ np.linalg.eigh((sub + sub.conj().T) / 2)[1])
        start = stop
    return np.hstack(cols)


def common_eigenbasis_measurement(e: BinaryEnsemble) -> Povm:
    """Projective measurement diagonalizing both states of a commuting ensemble.

    Raises:
        NotCommuting: if ``max |[rho0, rho1]|`` exceeds 1e-8.
    """
    comm = matcore.commutator_norm(e.rho0.matrix, e.rho1.matrix)
    if comm > COMMUTING_TOL:
        raise NotCommuting(f"NotCommuting: commutator norm {comm:.3e}")
    return povm_from_vectors(common_eigenbasis(e.rho0.matrix, e.rho1.matrix), "common")


def random_orthogonal_measurement(d: int, seed) -> Povm:
    return povm_from_vectors(matcore.haar_unitary(d, seed), "random")


def named_measurements(e: BinaryEnsemble, strict: bool = False) -> dict[str, Povm]:
    """Every named construction that applies to ``e``, keyed by short name.

    The fidelity-preserving entry is omitted (and logged) if its
    construction fails verification, unless ``strict`` is set, in which case
    the failure propagates.
    """
    out = {}
    try:
        out["fidelity"] = fidelity_preserving_measurement(e.rho0, e.rho1)
    except FidelityNotPreserved as exc:
        if strict:
            raise
        log.warning("%s", exc)
    out["helstrom"] = helstrom_measurement(e)
    out["pgm"] = pretty_good_measurement(e)
    if matcore.commutator_norm(e.rho0.matrix, e.rho1.matrix) <= COMMUTING_TOL:
        out["common"] = common_eigenbasis_measurement(e)
    return out
