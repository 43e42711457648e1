"""Scalar information measures on states and binary ensembles.

All logarithms are base 2 and every entropy is in bits.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import mpmath
import numpy as np

from . import matcore
from .ensembles import BinaryEnsemble, DensityMatrix, average_state, validate_density
from .errors import DimensionMismatch, DomainError

ZERO_EIG = 1e-12
SUPPORT_REL = 1e-10
ESCAPE_WEIGHT = 1e-8
# (1 - Euler gamma) * log2(e)
SUBENTROPY_CAP = (1 - 0.5772156649015329) / math.log(2)


def _xlog2x(x: np.ndarray) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    out = np.zeros_like(x)
    pos = x > 0
    out[pos] = x[pos] * np.log2(x[pos])
    return out


def binary_entropy(p: float) -> float:
    """``H(p) = -p log p - (1-p) log(1-p)`` with ``0 log 0 = 0``."""
    if not -1e-12 <= p <= 1 + 1e-12 or math.isnan(p):
        raise DomainError(f"DomainError: probability {p} outside [0, 1]")
    p = min(max(p, 0.0), 1.0)
    return float(-_xlog2x(np.array([p, 1 - p])).sum())


def shannon_entropy(dist) -> float:
    return float(-_xlog2x(np.asarray(dist, dtype=float)).sum())


def entropy_of_spectrum(w) -> float:
    w = np.asarray(w, dtype=float)
    w = np.where(w < ZERO_EIG, 0.0, w)
    return max(0.0, shannon_entropy(w))


def von_neumann_entropy(rho) -> float:
    rho = validate_density(rho)
    return entropy_of_spectrum(rho.eigenvalues)


def _same_dim(a: DensityMatrix, b: DensityMatrix):
    if a.dim != b.dim:
        raise DimensionMismatch(f"DimensionMismatch: {a.dim} vs {b.dim}")


def relative_entropy(rho, sigma) -> float:
    """``S(rho || sigma)`` in bits, ``inf`` when rho leaks out of sigma's support.

    sigma's support is its eigenvectors with eigenvalue above 1e-10 times the
    largest; rho counts as leaking when it puts weight above 1e-8 outside.
    """
    rho, sigma = validate_density(rho), validate_density(sigma)
    _same_dim(rho, sigma)
    ws, vs = sigma.eig.eigenvalues, sigma.eig.eigenvectors
    supp = ws > SUPPORT_REL * ws.max()
    # diagonal of rho in sigma's eigenbasis
    rho_diag = np.einsum("ij,jk,ki->i", vs.conj().T, rho.matrix, vs).real
    if rho_diag[~supp].sum() > ESCAPE_WEIGHT:
        return math.inf
    cross = float(np.dot(rho_diag[supp], np.log2(ws[supp])))
    neg_entropy = -von_neumann_entropy(rho)
    return max(0.0, neg_entropy - cross)


def fidelity(rho, sigma) -> float:
    """Root fidelity ``|| sqrt(rho) sqrt(sigma) ||_tr``, clamped to ``[0, 1]``."""
    rho, sigma = validate_density(rho), validate_density(sigma)
    _same_dim(rho, sigma)
    val = matcore.trace_norm(sqrt_state(rho) @ sqrt_state(sigma))
    return min(val, 1.0)


SQRT_FLOOR = 1e-14


def sqrt_state(rho: DensityMatrix) -> np.ndarray:
    # Only rounding noise is cut: sqrt turns a 1e-17 eigenvalue into 3e-9, while
    # the generic 1e-10 pseudo-threshold would shift sqrt by up to 1e-5.
    return matcore.spectral_map(rho.matrix, lambda x: np.sqrt(np.clip(x, 0, None)), SQRT_FLOOR, eig=rho.eig)


def holevo_chi(e: BinaryEnsemble) -> float:
    """``S(avg) - p S(rho0) - (1-p) S(rho1)``."""
    avg = average_state(e)
    return (
        von_neumann_entropy(avg)
        - e.p * von_neumann_entropy(e.rho0)
        - (1 - e.p) * von_neumann_entropy(e.rho1)
    )


def chi_from_relative_entropies(e: BinaryEnsemble) -> float:
    """Expected relative entropy of each state to the average; equals chi."""
    avg = average_state(e)
    total = 0.0
    for w, r in ((e.p, e.rho0), (1 - e.p, e.rho1)):
        if w > 0:
            total += w * relative_entropy(r, avg)
    return total


def pure_pair_eigenvalues(theta: float, p: float) -> tuple[float, float]:
    root = math.sqrt(max(0.0, 1 - 4 * p * (1 - p) * math.sin(theta) ** 2))
    return (1 - root) / 2, (1 + root) / 2


def pure_pair_chi(theta: float, p: float) -> float:
    """Holevo information of two pure states at angle ``theta`` in closed form."""
    return binary_entropy(pure_pair_eigenvalues(theta, p)[1])


def upph_gap(delta: float) -> float:
    """``sqrt(1 - (2 delta)^2) - H(1/2 + delta)``; nonnegative on ``[-1/2, 1/2]``."""
    if abs(delta) > 0.5 + 1e-15:
        raise DomainError(f"DomainError: |delta| = {abs(delta)} exceeds 1/2")
    delta = max(-0.5, min(0.5, delta))
    return math.sqrt(max(0.0, 1 - (2 * delta) ** 2)) - binary_entropy(0.5 + delta)


# --- subentropy -----------------------------------------------------------------

def _subentropy_product(w: np.ndarray) -> tuple[float, float]:
    """Product formula; also returns the largest term magnitude as a conditioning gauge."""
    d = len(w)
    terms = np.zeros(d)
    for k in range(d):
        if w[k] == 0.0:
            continue
        others = np.delete(w, k)
        terms[k] = w[k] ** d * math.log2(w[k]) / np.prod(w[k] - others)
    return float(-terms.sum()) + 0.0, float(np.max(np.abs(terms), initial=0.0))


def _xn_log_taylor(x, n: int, k: int):
    """``g^(k)(x) / k!`` for ``g(x) = x^n ln x`` and ``k < n``."""
    if x == 0:
        return mpmath.mpf(0)
    harm = sum(mpmath.mpf(1) / j for j in range(n - k + 1, n + 1))
    return mpmath.binomial(n, k) * x ** (n - k) * (mpmath.log(x) + harm)


def _subentropy_divided(w: np.ndarray) -> float:
    """Minus the divided difference of ``x^d log2 x`` over the spectrum.

    Repeated eigenvalues use the confluent (Hermite) limit. The float inputs
    are treated as exact and the table is built with enough digits to absorb
    the cancellation of near-equal points.
    """
    d = len(w)
    xs = sorted(float(v) for v in w)
    with mpmath.workdps(40 + 18 * d):
        x = [mpmath.mpf(v) for v in xs]
        table = [_xn_log_taylor(v, d, 0) for v in x]
        for order in range(1, d):
            nxt = []
            for i in range(d - order):
                j = i + order
                if x[j] == x[i]:
                    nxt.append(_xn_log_taylor(x[i], d, order))
                else:
                    nxt.append((table[i + 1] - table[i]) / (x[j] - x[i]))
            table = nxt
        return float(-table[0] / mpmath.log(2)) + 0.0


def subentropy_of_spectrum(w, method: str = "auto") -> float:
    w = np.asarray(w, dtype=float)
    w = np.where(w < ZERO_EIG, 0.0, w)
    if method == "divided":
        return _subentropy_divided(w)
    gaps = np.diff(np.sort(w))
    if method == "product":
        return _subentropy_product(w)[0]
    if method != "auto":
        raise ValueError(f"unknown subentropy method {method!r}")
    if len(w) == 1:
        return 0.0
    if gaps.min() >= 1e-6:
        q, scale = _subentropy_product(w)
        if scale < 1e3:
            return q
    return _subentropy_divided(w)


def subentropy(rho, method: str = "auto") -> float:
    """Subentropy ``Q(rho)`` in bits.

    ``method`` selects the evaluation route: ``"product"`` (closed-form sum,
    distinct eigenvalues only), ``"divided"`` (confluent divided differences
    in extended precision) or ``"auto"``.
    """
    rho = validate_density(rho)
    return subentropy_of_spectrum(rho.eigenvalues, method)


def subentropy_maximally_mixed(d: int) -> float:
    """``Q(I/d) = log2 d - (H_d - 1) log2 e`` via harmonic numbers."""
    harmonic = sum(1.0 / j for j in range(1, d + 1))
    return math.log2(d) - (harmonic - 1) / math.log(2)


@dataclass(frozen=True)
class MeasureReport:
    chi: float
    fidelity_b: float
    subentropy_q: float
    entropy_avg: float
    entropy_rho0: float
    entropy_rho1: float
    binary_entropy_p: float


def measure_report(e: BinaryEnsemble) -> MeasureReport:
    avg = average_state(e)
    s_avg, s0, s1 = (von_neumann_entropy(r) for r in (avg, e.rho0, e.rho1))
    return MeasureReport(
        chi=s_avg - e.p * s0 - (1 - e.p) * s1,
        fidelity_b=fidelity(e.rho0, e.rho1),
        subentropy_q=subentropy(avg),
        entropy_avg=s_avg,
        entropy_rho0=s0,
        entropy_rho1=s1,
        binary_entropy_p=binary_entropy(e.p),
    )
