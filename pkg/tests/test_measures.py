import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, strategies as st

from qacc import matcore
from qacc.ensembles import (
    BinaryEnsemble,
    average_state,
    commuting_ensemble,
    orthogonal_pair,
    projector,
    pure_pair,
    random_ensemble,
)
from qacc.errors import DimensionMismatch, DomainError
from qacc.measures import (
    SUBENTROPY_CAP,
    binary_entropy,
    chi_from_relative_entropies,
    fidelity,
    holevo_chi,
    measure_report,
    pure_pair_chi,
    relative_entropy,
    subentropy,
    subentropy_maximally_mixed,
    subentropy_of_spectrum,
    upph_gap,
    von_neumann_entropy,
)

# frozen from 40-digit mpmath evaluations of the defining formulas
H_011 = 0.4999159581645279956
H_075 = 0.8112781244591328639
KL_EXAMPLE = 0.2075187496394219093
UPPH_025 = 0.0547472793253057829
Q_HALF_IDENTITY = 0.2786524795555182963


def test_binary_entropy_examples():
    assert binary_entropy(0.5) == 1.0
    assert binary_entropy(0.0) == 0.0
    assert binary_entropy(1.0) == 0.0
    assert binary_entropy(0.11) == pytest.approx(H_011, abs=1e-14)
    with pytest.raises(DomainError):
        binary_entropy(1.2)


@given(st.floats(0, 1))
def test_binary_entropy_symmetric(p):
    h = binary_entropy(p)
    assert 0 <= h <= 1
    # 1 - p is exact for p in [1/2, 1]
    p = max(p, 1 - p)
    assert abs(binary_entropy(p) - binary_entropy(1 - p)) <= 1e-15


def test_von_neumann_examples():
    assert von_neumann_entropy(projector([1, 0])) == 0
    assert von_neumann_entropy(np.eye(2) / 2) == pytest.approx(1, abs=1e-15)
    assert von_neumann_entropy(np.diag([0.25, 0.75])) == pytest.approx(H_075, abs=1e-14)


@given(st.integers(0, 2**32), st.integers(1, 6))
def test_von_neumann_range(seed, d):
    rho = random_ensemble(d, (d, 1), 0.5, seed)
    s = von_neumann_entropy(rho.rho0)
    assert -1e-12 <= s <= math.log2(d) + 1e-12
    assert von_neumann_entropy(rho.rho1) <= 1e-10


def test_relative_entropy_examples():
    rho = random_ensemble(3, (3, 3), 0.5, 1).rho0
    assert relative_entropy(rho, rho) == pytest.approx(0, abs=1e-12)
    assert relative_entropy(np.diag([1.0, 0.0]), np.diag([0.0, 1.0])) == math.inf
    assert relative_entropy(np.diag([0.5, 0.5]), np.diag([0.25, 0.75])) == pytest.approx(KL_EXAMPLE, abs=1e-14)
    with pytest.raises(DimensionMismatch):
        relative_entropy(np.eye(2) / 2, np.eye(3) / 3)


def test_relative_entropy_support_rule():
    # rho stays inside sigma's support: finite even though sigma is singular
    assert math.isfinite(relative_entropy(projector([1, 0, 0]), np.diag([0.6, 0.4, 0.0])))
    assert relative_entropy(np.diag([0.5, 0.5, 0.0]), np.diag([1.0, 0.0, 0.0])) == math.inf


def test_fidelity_examples():
    rho = random_ensemble(3, (2, 2), 0.5, 2).rho0
    assert fidelity(rho, rho) == pytest.approx(1, abs=1e-10)
    assert fidelity(projector([1, 0]), projector([0, 1])) == pytest.approx(0, abs=1e-12)
    e = pure_pair(np.pi / 3, 0.5)
    assert fidelity(e.rho0, e.rho1) == pytest.approx(0.5, abs=1e-12)


@given(st.integers(0, 2**32))
def test_fidelity_symmetric_and_invariant(seed):
    rng = np.random.default_rng(seed)
    d = int(rng.integers(2, 5))
    e = random_ensemble(d, tuple(rng.integers(1, d + 1, size=2)), 0.5, rng)
    b = fidelity(e.rho0, e.rho1)
    assert 0 <= b <= 1
    assert abs(b - fidelity(e.rho1, e.rho0)) <= 1e-10
    u = matcore.haar_unitary(d, rng)
    f = e.conjugated(u)
    assert abs(fidelity(f.rho0, f.rho1) - b) <= 1e-9


def test_holevo_examples():
    assert holevo_chi(orthogonal_pair(0.5)) == pytest.approx(1, abs=1e-14)
    rho = random_ensemble(3, (3, 3), 0.5, 4).rho0
    assert holevo_chi(BinaryEnsemble(0.3, rho, rho)) == pytest.approx(0, abs=1e-12)
    assert holevo_chi(pure_pair(np.pi / 3, 0.5)) == pytest.approx(H_075, abs=1e-12)


@given(st.integers(0, 2**32))
def test_holevo_properties(seed):
    rng = np.random.default_rng(seed)
    d = int(rng.integers(2, 5))
    e = random_ensemble(d, tuple(rng.integers(1, d + 1, size=2)), float(rng.uniform()), rng)
    chi = holevo_chi(e)
    assert chi >= -1e-10
    assert chi <= binary_entropy(e.p) + 1e-9
    rel = chi_from_relative_entropies(e)
    if math.isfinite(rel):
        assert abs(chi - rel) <= 1e-9
    b = fidelity(e.rho0, e.rho1)
    assert chi <= 2 * math.sqrt(e.p * (1 - e.p) * (1 - b * b)) + 1e-8


def test_pure_pair_chi_examples():
    assert pure_pair_chi(np.pi / 2, 0.5) == pytest.approx(1, abs=1e-15)
    assert pure_pair_chi(0.0, 0.3) == 0
    assert pure_pair_chi(np.pi / 3, 0.5) == pytest.approx(0.811278, abs=1e-6)


@given(st.floats(0, np.pi / 2), st.floats(0, 1))
def test_pure_pair_chi_matches_holevo(theta, p):
    assert abs(pure_pair_chi(theta, p) - holevo_chi(pure_pair(theta, p))) <= 1e-9


def test_dacunha_castelle_full_rank():
    rng = np.random.default_rng(3)
    for _ in range(2000):
        d = int(rng.integers(2, 5))
        e = random_ensemble(d, (d, int(rng.integers(1, d + 1))), 0.5, rng)
        s = relative_entropy(e.rho1, e.rho0)
        assert s >= -2 * math.log2(fidelity(e.rho0, e.rho1)) - 1e-8


def _q_oracle(w):
    """JRW product formula evaluated at 60 digits (distinct eigenvalues only)."""
    with mpmath.workdps(60):
        w = [mpmath.mpf(float(x)) for x in w]
        total = mpmath.mpf(0)
        for k, lk in enumerate(w):
            if lk == 0:
                continue
            prod = mpmath.mpf(1)
            for j, lj in enumerate(w):
                if j != k:
                    prod *= lk / (lk - lj)
            total += prod * lk * mpmath.log(lk, 2)
        return float(-total)


def test_subentropy_examples():
    assert subentropy(projector([0, 1, 0])) == 0.0
    assert subentropy(np.eye(2) / 2) == pytest.approx(Q_HALF_IDENTITY, abs=1e-12)
    for d in range(1, 9):
        harmonic = sum(1 / j for j in range(1, d + 1))
        oracle = math.log2(d) - (harmonic - 1) * math.log2(math.e)
        assert subentropy(np.eye(d) / d) == pytest.approx(oracle, abs=1e-12)
        assert subentropy_maximally_mixed(d) == pytest.approx(oracle, abs=1e-14)


@given(st.integers(0, 2**32), st.integers(2, 8))
def test_subentropy_matches_oracle(seed, d):
    rng = np.random.default_rng(seed)
    w = rng.dirichlet(np.ones(d))
    q = subentropy_of_spectrum(w)
    assert abs(q - _q_oracle(w)) <= 1e-10
    assert abs(subentropy_of_spectrum(w, "divided") - q) <= 1e-10


def test_subentropy_near_degenerate_is_continuous():
    base = np.array([0.3, 0.3, 0.4])
    exact = subentropy_of_spectrum(base)
    for eps in (1e-3, 1e-6, 1e-9, 1e-12):
        w = base + np.array([eps, -eps, 0])
        assert abs(subentropy_of_spectrum(w) - exact) <= 10 * eps + 1e-12


@given(st.integers(0, 2**32), st.integers(1, 8))
def test_subentropy_bounds(seed, d):
    rng = np.random.default_rng(seed)
    rho = random_ensemble(d, (int(rng.integers(1, d + 1)), 1), 0.5, rng).rho0
    q = subentropy(rho)
    assert -1e-12 <= q <= SUBENTROPY_CAP
    assert SUBENTROPY_CAP <= 0.60995
    assert q <= von_neumann_entropy(rho) + 1e-12


def test_upph_gap_examples():
    assert upph_gap(0.0) == 0
    assert upph_gap(0.5) == 0
    assert upph_gap(0.25) == pytest.approx(UPPH_025, abs=1e-14)
    with pytest.raises(DomainError):
        upph_gap(0.6)


def test_upph_gap_grid():
    assert min(upph_gap(d) for d in np.linspace(-0.5, 0.5, 10_001)) >= -1e-12


@given(st.integers(0, 2**32))
def test_measure_report_invariants(seed):
    rng = np.random.default_rng(seed)
    e = random_ensemble(3, tuple(rng.integers(1, 4, size=2)), float(rng.uniform()), rng)
    m = measure_report(e)
    assert abs(m.chi - (m.entropy_avg - e.p * m.entropy_rho0 - (1 - e.p) * m.entropy_rho1)) <= 1e-10
    assert min(m.entropy_avg, m.entropy_rho0, m.entropy_rho1) >= 0
    assert 0 <= m.fidelity_b <= 1 + 1e-10
    assert m.subentropy_q == subentropy(average_state(e))


def test_commuting_chi_is_classical():
    e = commuting_ensemble(3, 0.4, 8)
    # diagonal in a shared basis: chi equals classical mutual information of the spectra
    w, v = np.linalg.eigh(e.rho0.matrix + 2 * e.rho1.matrix)
    q0 = np.einsum("ij,jk,ki->i", v.conj().T, e.rho0.matrix, v).real
    q1 = np.einsum("ij,jk,ki->i", v.conj().T, e.rho1.matrix, v).real
    q = 0.4 * q0 + 0.6 * q1
    mi = sum(x * math.log2(x / y) * 0.4 for x, y in zip(q0, q)) + sum(x * math.log2(x / y) * 0.6 for x, y in zip(q1, q))
    assert holevo_chi(e) == pytest.approx(mi, abs=1e-12)
