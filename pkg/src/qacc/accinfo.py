"""Numerical estimate of accessible information by direct POVM search.

The feasible set of rank-one POVMs with ``K`` outcomes is parameterized
without constraints: any ``K`` vectors ``a_m`` are mapped to
``G^-1/2 a_m a_m^dagger G^-1/2`` with ``G = sum_m a_m a_m^dagger``. A
derivative-free coordinate search with a shrinking step runs over the real
and imaginary parts of the vectors, from warm starts (the named
measurements) and from random starts. The reported value is a lower
estimate; the Holevo quantity is the certified upper bound.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.special import xlogy

from .ensembles import BinaryEnsemble
from .errors import DegenerateInput, DimensionMismatch, QaccError
from .measurements import Povm, identity_povm, measured_information, named_measurements

GRAM_CUTOFF = 1e-12
MIN_GAIN = 1e-14
INITIAL_STEP = 0.1


@dataclass(frozen=True)
class OptimizerConfig:
    """Search settings. ``outcomes=None`` means ``d**2``."""

    outcomes: int | None = None
    restarts: int = 32
    max_iterations: int = 2000
    step_tolerance: float = 1e-10
    value_tolerance: float = 1e-10
    seed: int = 0

    def __post_init__(self):
        if self.outcomes is not None and self.outcomes < 2:
            raise QaccError(f"outcomes must be at least 2, got {self.outcomes}")
        if self.restarts < 1:
            raise QaccError(f"restarts must be at least 1, got {self.restarts}")
        if self.max_iterations < 1:
            raise QaccError("max_iterations must be positive")

    def outcomes_for(self, d: int) -> int:
        return self.outcomes if self.outcomes is not None else d * d


@dataclass(frozen=True)
class AccInfoResult:
    value: float
    best_povm: Povm
    restarts_agreeing: int
    iterations_used: int
    restart_values: tuple = field(default=(), repr=False)
    restart_labels: tuple = field(default=(), repr=False)
    named_values: dict = field(default_factory=dict, repr=False)


def _inv_sqrt_gram(vectors: np.ndarray):
    """Batched ``G^-1/2`` on the support of ``G = V V^dagger`` for ``V`` of shape (..., d, K)."""
    g = vectors @ np.conj(np.swapaxes(vectors, -1, -2))
    w, u = np.linalg.eigh(g)
    keep = w > GRAM_CUTOFF * np.maximum(w[..., -1:], 0)
    scale = np.where(keep, 1 / np.sqrt(np.where(keep, w, 1.0)), 0.0)
    return (u * scale[..., None, :]) @ np.conj(np.swapaxes(u, -1, -2)), keep


def canonicalize_povm(vectors, label: str = "canonical") -> Povm:
    """Map ``K`` column vectors to a rank-one POVM, adding a kernel outcome if needed.

    Raises:
        DegenerateInput: if every vector has norm below 1e-12.
    """
    v = np.asarray(vectors, dtype=complex)
    if v.ndim != 2 or v.shape[1] < 2:
        raise QaccError("need a d x K array of K >= 2 column vectors")
    if np.all(np.linalg.norm(v, axis=0) < 1e-12):
        raise DegenerateInput("DegenerateInput: all vectors vanish")
    r, keep = _inv_sqrt_gram(v)
    b = r @ v
    els = [np.outer(c, c.conj()) for c in b.T]
    if not np.all(keep):
        _, u = np.linalg.eigh(v @ v.conj().T)
        ker = u[:, ~keep]
        els.append(ker @ ker.conj().T)
    return Povm(tuple(els), label)


class _Objective:
    """Measured information of a batch of parameter vectors, in bits."""

    def __init__(self, e: BinaryEnsemble, k: int):
        self.p = e.p
        self.d = e.dim
        self.k = k
        self.rho0 = e.rho0.matrix
        self.rho1 = e.rho1.matrix

    def unpack(self, x: np.ndarray) -> np.ndarray:
        n = self.d * self.k
        return (x[..., :n] + 1j * x[..., n:]).reshape(x.shape[:-1] + (self.d, self.k))

    def pack(self, v: np.ndarray) -> np.ndarray:
        flat = v.reshape(v.shape[:-2] + (-1,))
        return np.concatenate([flat.real, flat.imag], axis=-1)

    def __call__(self, x: np.ndarray) -> np.ndarray:
        v = self.unpack(x)
        r, _ = _inv_sqrt_gram(v)
        b = r @ v
        bc = np.conj(b)
        q0 = np.einsum("nak,ab,nbk->nk", bc, self.rho0, b).real
        q1 = np.einsum("nak,ab,nbk->nk", bc, self.rho1, b).real
        q0 = np.concatenate([q0, 1 - q0.sum(-1, keepdims=True)], axis=-1)
        q1 = np.concatenate([q1, 1 - q1.sum(-1, keepdims=True)], axis=-1)
        q0 = np.where(q0 < 1e-15, 0.0, q0)
        q1 = np.where(q1 < 1e-15, 0.0, q1)
        p = self.p
        q = p * q0 + (1 - p) * q1
        nats = (p * xlogy(q0, q0) + (1 - p) * xlogy(q1, q1) - xlogy(q, q)).sum(-1)
        return nats / np.log(2)


def _coordinate_search(obj: _Objective, x: np.ndarray, cfg: OptimizerConfig):
    """Maximize ``obj`` from ``x``; returns (x, value, iterations)."""
    n = x.size
    basis = np.vstack([np.eye(n), -np.eye(n)])
    f = float(obj(x[None])[0])
    step = INITIAL_STEP
    it = 0
    while it < cfg.max_iterations and step >= cfg.step_tolerance:
        it += 1
        trial = obj(x + step * basis)
        gains = np.maximum(trial[:n], trial[n:]) - f
        improving = gains > MIN_GAIN
        if not np.any(improving):
            step *= 0.5
            continue
        sign = np.where(trial[:n] >= trial[n:], 1.0, -1.0)
        best = int(np.argmax(gains))
        single = x + step * sign[best] * np.eye(n)[best]
        f_single = f + gains[best]
        combined = x + step * np.where(improving, sign, 0.0)
        f_combined = float(obj(combined[None])[0])
        if f_combined > f_single:
            x, f = combined, f_combined
        else:
            x, f = single, float(f_single)
    return x, f, it


def _fit_columns(vectors: np.ndarray, k: int) -> np.ndarray:
    """Pad with zero columns or keep the ``k`` largest, to get exactly ``k`` columns."""
    d, m = vectors.shape
    if m < k:
        return np.hstack([vectors, np.zeros((d, k - m), dtype=complex)])
    order = np.argsort(-np.linalg.norm(vectors, axis=0), kind="stable")
    return vectors[:, np.sort(order[:k])]


def optimize_accessible_information(
    e: BinaryEnsemble, cfg: OptimizerConfig | None = None, named: dict[str, Povm] | None = None
) -> AccInfoResult:
    """Best measured information found over POVMs with ``cfg.outcomes`` outcomes.

    The restarts run the local search first from the named measurements
    (fidelity-preserving, Helstrom, pretty good, common eigenbasis when the
    states commute) and then from seeded random vectors. Restart ``i`` uses
    the generator seeded with ``(cfg.seed, i)``, so results do not depend on
    execution order. The named measurements are also scored unpolished, so
    the value never falls below the best of them. Pass ``named`` to reuse
    measurements already built for ``e``.
    """
    cfg = cfg or OptimizerConfig()
    d = e.dim
    if e.p in (0.0, 1.0):
        return AccInfoResult(0.0, identity_povm(d), cfg.restarts, 0, (0.0,) * cfg.restarts)
    k = cfg.outcomes_for(d)
    if k > 2 * d * d:
        raise QaccError(f"outcomes {k} exceeds 2 d^2 = {2 * d * d}")
    obj = _Objective(e, k)

    if named is None:
        named = named_measurements(e)
    named_values = {name: measured_information(e, m) for name, m in named.items()}
    starts = [(name, _fit_columns(m.rank_one_vectors(), k)) for name, m in named.items()]
    starts = starts[: cfg.restarts]
    for i in range(len(starts), cfg.restarts):
        rng = np.random.default_rng([cfg.seed, i])
        v = (rng.standard_normal((d, k)) + 1j * rng.standard_normal((d, k))) / np.sqrt(2)
        starts.append((f"random{i}", v))

    values, labels, povms, iters = [], [], [], []
    for label, v in starts:
        x, _, it = _coordinate_search(obj, obj.pack(v), cfg)
        povm = canonicalize_povm(obj.unpack(x), label)
        values.append(measured_information(e, povm))
        labels.append(label)
        povms.append(povm)
        iters.append(it)

    best = int(np.argmax(values))
    value, best_povm, used = values[best], povms[best], iters[best]
    for name, val in named_values.items():
        if val > value:
            value, best_povm, used = val, named[name], 0
    agreeing = sum(1 for v in values if value - v <= cfg.value_tolerance)
    return AccInfoResult(value, best_povm, agreeing, used, tuple(values), tuple(labels), named_values)


_PAULIS = (
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)


def bloch_vector(rho: np.ndarray) -> np.ndarray:
    return np.array([np.trace(rho @ s).real for s in _PAULIS])


def qubit_projective_grid(e: BinaryEnsemble, resolution: int) -> float:
    """Brute-force maximum over two-outcome projective qubit measurements.

    Measurement axes run over a ``resolution x resolution`` grid of polar
    angle in ``[0, pi]`` and azimuth in ``[0, 2 pi)``; refining the grid from
    ``r`` to ``2r - 1`` keeps every earlier axis, so the value is monotone
    along such refinements.

    Raises:
        DimensionMismatch: if the ensemble is not a qubit ensemble.
    """
    if e.dim != 2:
        raise DimensionMismatch(f"DimensionMismatch: grid oracle needs d=2, got {e.dim}")
    if resolution < 2:
        raise QaccError("resolution must be at least 2")
    theta = np.linspace(0.0, np.pi, resolution)
    phi = np.linspace(0.0, 2 * np.pi, resolution)
    t, f = np.meshgrid(theta, phi, indexing="ij")
    axes = np.stack([np.sin(t) * np.cos(f), np.sin(t) * np.sin(f), np.cos(t)], axis=-1).reshape(-1, 3)
    p = e.p
    c0 = axes @ bloch_vector(e.rho0.matrix)
    c1 = axes @ bloch_vector(e.rho1.matrix)
    q0 = np.stack([(1 + c0) / 2, (1 - c0) / 2], axis=-1).clip(0, 1)
    q1 = np.stack([(1 + c1) / 2, (1 - c1) / 2], axis=-1).clip(0, 1)
    q = p * q0 + (1 - p) * q1
    nats = (p * xlogy(q0, q0) + (1 - p) * xlogy(q1, q1) - xlogy(q, q)).sum(-1)
    return float(max(nats.max() / np.log(2), 0.0))
