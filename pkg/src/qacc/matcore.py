"""Dense complex Hermitian linear algebra for small matrices.

Everything here works on plain ``numpy`` arrays of shape ``(d, d)`` with
``d`` up to about 8. Two eigensolvers are provided: LAPACK (through
``numpy.linalg.eigh``) is the default used by the rest of the package, and a
cyclic Jacobi solver is kept as an independent route for cross-checks.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import DomainError, NotHermitian

HERMITIAN_TOL = 1e-10
PSEUDO_THRESHOLD = 1e-10
JACOBI_TOL = 1e-13


@dataclass(frozen=True)
class EigenDecomposition:
    """Ascending eigenvalues and the unitary whose columns are eigenvectors."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        v = self.eigenvectors
        return (v * self.eigenvalues) @ v.conj().T


def as_matrix(a) -> np.ndarray:
    """Return ``a`` as a square complex array, unwrapping state objects."""
    m = getattr(a, "matrix", a)
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix has non-finite entries")
    return m


def hermitian_violation(h: np.ndarray) -> float:
    return float(np.max(np.abs(h - h.conj().T))) if h.size else 0.0


def check_hermitian(h: np.ndarray, tol: float = HERMITIAN_TOL) -> np.ndarray:
    h = as_matrix(h)
    err = hermitian_violation(h)
    if err > tol:
        raise NotHermitian(f"NotHermitian: max |H - H^dagger| = {err:.3e} exceeds {tol:.1e}")
    return h


def jacobi_eigh(h: np.ndarray, tol: float = JACOBI_TOL, max_sweeps: int = 100) -> EigenDecomposition:
    """Cyclic Jacobi eigensolver for a complex Hermitian matrix.

    Each rotation first removes the phase of the pivot with a diagonal
    unitary, then applies the classical real Jacobi rotation. Sweeps stop
    once every off-diagonal magnitude is below ``tol`` (scaled by the
    matrix norm when that exceeds one).
    """
    a = check_hermitian(h).copy()
    a = (a + a.conj().T) / 2
    n = a.shape[0]
    v = np.eye(n, dtype=complex)
    scale = max(1.0, float(np.max(np.abs(a))) if n else 1.0)
    for _ in range(max_sweeps):
        off = np.abs(a - np.diag(np.diag(a)))
        if n < 2 or off.max() < tol * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                g = a[p, q]
                mag = abs(g)
                if mag < tol * scale * 1e-3:
                    continue
                phase = g / mag
                app, aqq = a[p, p].real, a[q, q].real
                tau = (aqq - app) / (2 * mag)
                if tau == 0.0:
                    t = 1.0
                else:
                    t = np.sign(tau) / (abs(tau) + np.sqrt(1 + tau * tau))
                c = 1 / np.sqrt(1 + t * t)
                s = t * c
                j = np.eye(n, dtype=complex)
                j[p, p] = c
                j[q, q] = c * np.conj(phase)
                j[p, q] = s
                j[q, p] = -s * np.conj(phase)
                a = j.conj().T @ a @ j
                a[p, q] = a[q, p] = 0.0
                v = v @ j
    w = np.diag(a).real
    order = np.argsort(w, kind="stable")
    return EigenDecomposition(w[order], v[:, order])


def hermitian_eig(h: np.ndarray, method: str = "lapack") -> EigenDecomposition:
    """Eigendecomposition of a Hermitian matrix with ascending eigenvalues.

    Raises:
        NotHermitian: if ``max |H - H^dagger|`` exceeds 1e-10.
    """
    h = check_hermitian(h)
    if method == "jacobi":
        return jacobi_eigh(h)
    if method != "lapack":
        raise ValueError(f"unknown eigensolver {method!r}")
    w, v = np.linalg.eigh((h + h.conj().T) / 2)
    return EigenDecomposition(w, v)


def spectral_map(
    h: np.ndarray,
    f: Callable[[np.ndarray], np.ndarray],
    threshold: float = PSEUDO_THRESHOLD,
    eig: EigenDecomposition | None = None,
) -> np.ndarray:
    """Apply ``f`` to the spectrum of ``h`` as ``V f(L) V^dagger``.

    Eigenvalues with ``|l| <= threshold * max|l|`` are sent to zero rather
    than through ``f``, which gives pseudo-inverses and logarithms on the
    support.
    """
    if eig is None:
        eig = hermitian_eig(h)
    w, v = eig.eigenvalues, eig.eigenvectors
    top = np.max(np.abs(w)) if w.size else 0.0
    keep = np.abs(w) > threshold * top
    out = np.zeros_like(w)
    if np.any(keep):
        with np.errstate(all="ignore"):
            fw = np.asarray(f(w[keep]), dtype=float)
        if not np.all(np.isfinite(fw)):
            bad = w[keep][~np.isfinite(fw)]
            raise DomainError(f"DomainError: function undefined at eigenvalue(s) {bad}")
        out[keep] = fw
    return (v * out) @ v.conj().T


def psd_sqrt(h: np.ndarray, threshold: float = PSEUDO_THRESHOLD) -> np.ndarray:
    return spectral_map(h, np.sqrt, threshold)


def psd_inv_sqrt(h: np.ndarray, threshold: float = PSEUDO_THRESHOLD) -> np.ndarray:
    return spectral_map(h, lambda x: 1 / np.sqrt(x), threshold)


def trace_norm(a: np.ndarray) -> float:
    """Sum of singular values."""
    a = as_matrix(a)
    return float(np.linalg.svd(a, compute_uv=False).sum())


def _phase_fixed_qr(z: np.ndarray) -> np.ndarray:
    q, r = np.linalg.qr(z)
    d = np.diagonal(r, axis1=-2, axis2=-1)
    ph = np.where(np.abs(d) > 0, d / np.where(np.abs(d) > 0, np.abs(d), 1), 1)
    return q * ph[..., None, :]


def haar_unitary(d: int, seed) -> np.ndarray:
    """Haar-distributed ``d x d`` unitary, deterministic for a given seed.

    ``seed`` may be anything accepted by ``numpy.random.default_rng``,
    including an existing ``Generator``.
    """
    if d < 1:
        raise ValueError("dimension must be at least 1")
    rng = np.random.default_rng(seed)
    z = (rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))) / np.sqrt(2)
    return _phase_fixed_qr(z)


def haar_unitaries(d: int, n: int, seed) -> np.ndarray:
    """Stack of ``n`` independent Haar unitaries, shape ``(n, d, d)``."""
    rng = np.random.default_rng(seed)
    z = (rng.standard_normal((n, d, d)) + 1j * rng.standard_normal((n, d, d))) / np.sqrt(2)
    return _phase_fixed_qr(z)


def commutator_norm(a: np.ndarray, b: np.ndarray) -> float:
    """Largest entry magnitude of ``AB - BA``."""
    a, b = as_matrix(a), as_matrix(b)
    return float(np.max(np.abs(a @ b - b @ a)))
