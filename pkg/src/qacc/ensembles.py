"""Density matrices, binary ensembles, and the ensemble families used in the sweeps."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path

import numpy as np

from . import matcore
from .errors import DimensionMismatch, NotPositive, QaccError, TraceNotOne

STATE_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Hermitian, positive semidefinite, unit-trace matrix.

    The constructor validates; an instance that exists satisfies the
    invariants to within 1e-10.
    """

    matrix: np.ndarray = field(repr=False)

    def __post_init__(self):
        m = matcore.check_hermitian(self.matrix, STATE_TOL)
        m = (m + m.conj().T) / 2
        w = np.linalg.eigvalsh(m)
        if w.size and w[0] < -STATE_TOL:
            raise NotPositive(f"NotPositive: smallest eigenvalue {w[0]:.3e} below -{STATE_TOL:.0e}")
        tr = np.trace(m).real
        if abs(tr - 1) > STATE_TOL:
            raise TraceNotOne(f"TraceNotOne: trace {tr:.12g} differs from 1 by {abs(tr - 1):.3e}")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @cached_property
    def eig(self) -> matcore.EigenDecomposition:
        return matcore.hermitian_eig(self.matrix)

    @property
    def eigenvalues(self) -> np.ndarray:
        return self.eig.eigenvalues

    def __repr__(self):
        return f"DensityMatrix(dim={self.dim}, spectrum={np.round(self.eigenvalues, 6).tolist()})"


def validate_density(m) -> DensityMatrix:
    """Wrap ``m`` as a :class:`DensityMatrix` or raise the violated invariant."""
    if isinstance(m, DensityMatrix):
        return m
    return DensityMatrix(np.array(m, dtype=complex))


@dataclass(frozen=True, eq=False)
class BinaryEnsemble:
    """Prior ``p`` on ``rho0`` and ``1 - p`` on ``rho1``."""

    p: float
    rho0: DensityMatrix
    rho1: DensityMatrix

    def __post_init__(self):
        p = float(self.p)
        if not 0.0 <= p <= 1.0:
            raise QaccError(f"prior p={p} outside [0, 1]")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "rho0", validate_density(self.rho0))
        object.__setattr__(self, "rho1", validate_density(self.rho1))
        if self.rho0.dim != self.rho1.dim:
            raise DimensionMismatch(f"DimensionMismatch: {self.rho0.dim} vs {self.rho1.dim}")

    @property
    def dim(self) -> int:
        return self.rho0.dim

    def with_prior(self, p: float) -> "BinaryEnsemble":
        return BinaryEnsemble(p, self.rho0, self.rho1)

    def conjugated(self, u: np.ndarray) -> "BinaryEnsemble":
        """Ensemble with both states rotated to ``U rho U^dagger``."""
        rot = lambda r: u @ r.matrix @ u.conj().T
        return BinaryEnsemble(self.p, DensityMatrix(rot(self.rho0)), DensityMatrix(rot(self.rho1)))


def average_state(e: BinaryEnsemble) -> DensityMatrix:
    return DensityMatrix(e.p * e.rho0.matrix + (1 - e.p) * e.rho1.matrix)


def projector(v) -> np.ndarray:
    v = np.asarray(v, dtype=complex)
    v = v / np.linalg.norm(v)
    return np.outer(v, v.conj())


def pure_pair(theta: float, p: float) -> BinaryEnsemble:
    """Two qubit pure states with overlap ``cos(theta)``: ``|0>`` and ``cos t|0> + sin t|1>``."""
    if not -1e-12 <= theta <= np.pi / 2 + 1e-12:
        raise QaccError(f"angle {theta} outside [0, pi/2]")
    rho0 = projector([1.0, 0.0])
    rho1 = projector([np.cos(theta), np.sin(theta)])
    return BinaryEnsemble(p, DensityMatrix(rho0), DensityMatrix(rho1))


FIGURE3_RHO0 = np.diag([0.01, 0.01, 0.98]).astype(complex)
FIGURE3_V = np.sqrt(np.array([0.02, 0.96, 0.02]))


def figure3_ensemble(p: float) -> BinaryEnsemble:
    """Mixed qutrit state against the pure state ``sqrt(.02)|0> + sqrt(.96)|1> + sqrt(.02)|2>``."""
    return BinaryEnsemble(p, DensityMatrix(FIGURE3_RHO0.copy()), DensityMatrix(projector(FIGURE3_V)))


def orthogonal_pair(p: float = 0.5, d: int = 2) -> BinaryEnsemble:
    """``|0><0|`` and ``|1><1|`` embedded in dimension ``d``."""
    e0, e1 = np.zeros(d), np.zeros(d)
    e0[0], e1[1] = 1, 1
    return BinaryEnsemble(p, DensityMatrix(projector(e0)), DensityMatrix(projector(e1)))


def _random_state(d: int, rank: int, rng: np.random.Generator) -> DensityMatrix:
    u = matcore.haar_unitary(d, rng)
    w = np.zeros(d)
    w[:rank] = rng.exponential(size=rank)
    w /= w.sum()
    return DensityMatrix((u * w) @ u.conj().T)


def random_ensemble(d: int, ranks: tuple[int, int], p: float, seed) -> BinaryEnsemble:
    """Two independent random states ``U diag(w) U^dagger`` of the given ranks.

    ``U`` is Haar and ``w`` is drawn uniformly from the probability simplex
    on ``rank`` entries (normalized exponentials).
    """
    r0, r1 = ranks
    if not (1 <= r0 <= d and 1 <= r1 <= d):
        raise QaccError(f"ranks {ranks} must lie in [1, {d}]")
    rng = np.random.default_rng(seed)
    return BinaryEnsemble(p, _random_state(d, r0, rng), _random_state(d, r1, rng))


def commuting_ensemble(d: int, p: float, seed) -> BinaryEnsemble:
    """Two full-rank states diagonal in one shared Haar-random basis."""
    if d < 1:
        raise QaccError("dimension must be at least 1")
    rng = np.random.default_rng(seed)
    u = matcore.haar_unitary(d, rng)
    states = []
    for _ in range(2):
        w = rng.exponential(size=d)
        w /= w.sum()
        states.append(DensityMatrix((u * w) @ u.conj().T))
    return BinaryEnsemble(p, *states)


# JSON wire format: {"p": float, "rho0": rows, "rho1": rows}, each entry [re, im].

def _matrix_to_rows(m: np.ndarray) -> list:
    return [[[float(z.real), float(z.imag)] for z in row] for row in m]


def _rows_to_matrix(rows) -> np.ndarray:
    try:
        arr = np.array(rows, dtype=float)
    except (TypeError, ValueError) as exc:
        raise QaccError(f"malformed matrix: {exc}") from None
    if arr.ndim != 3 or arr.shape[2] != 2 or arr.shape[0] != arr.shape[1]:
        raise QaccError(f"malformed matrix: expected d x d x 2 array, got shape {arr.shape}")
    return arr[..., 0] + 1j * arr[..., 1]


def ensemble_to_dict(e: BinaryEnsemble) -> dict:
    return {"p": e.p, "rho0": _matrix_to_rows(e.rho0.matrix), "rho1": _matrix_to_rows(e.rho1.matrix)}


def ensemble_from_dict(obj: dict) -> BinaryEnsemble:
    missing = {"p", "rho0", "rho1"} - set(obj)
    if missing:
        raise QaccError(f"ensemble JSON missing fields {sorted(missing)}")
    return BinaryEnsemble(
        float(obj["p"]),
        validate_density(_rows_to_matrix(obj["rho0"])),
        validate_density(_rows_to_matrix(obj["rho1"])),
    )


def load_ensemble(path) -> BinaryEnsemble:
    return ensemble_from_dict(json.loads(Path(path).read_text()))


def dump_ensemble(e: BinaryEnsemble, path) -> None:
    Path(path).write_text(json.dumps(ensemble_to_dict(e), indent=1) + "\n")
