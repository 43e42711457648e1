import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from qacc import OptimizerConfig, random_ensemble

settings.register_profile(
    "qacc", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("qacc")

# small budget for tests that run the optimizer on many ensembles
FAST = OptimizerConfig(restarts=3, max_iterations=60)


def random_hermitian(d: int, rng: np.random.Generator) -> np.ndarray:
    a = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    return (a + a.conj().T) / 2


def random_case(seed, d=None):
    """Ensemble with random dimension (2-4 unless given), ranks and prior."""
    rng = np.random.default_rng(seed)
    d = d or int(rng.integers(2, 5))
    ranks = tuple(int(r) for r in rng.integers(1, d + 1, size=2))
    return random_ensemble(d, ranks, float(rng.uniform()), rng)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


# criterion -> (passed, detail); filled by test_acceptance.py
ACCEPTANCE: dict[str, list] = {}


def record(criterion: str, ok: bool, detail: str) -> None:
    """Fold one sub-check into the pass/fail line of an acceptance criterion."""
    line = f"{criterion}: {'PASS' if ok else 'FAIL'}  {detail}"
    print(line)
    prev = ACCEPTANCE.get(criterion)
    if prev is None:
        ACCEPTANCE[criterion] = [ok, detail]
    else:
        prev[0] = prev[0] and ok
        prev[1] = f"{prev[1]}; {detail}"


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for key in sorted(ACCEPTANCE, key=lambda k: int(k[1:])):
        ok, detail = ACCEPTANCE[key]
        terminalreporter.write_line(f"{key}: {'PASS' if ok else 'FAIL'}  {detail}")
