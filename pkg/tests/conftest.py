import numpy as np
import pytest

from aginorm.linalg import make_rng


@pytest.fixture
def rng():
    return make_rng(20240917)


def rel_err(x, y):
    return abs(x - y) / max(1.0, abs(y))


def close(x, y, tol=1e-12):
    return rel_err(float(x), float(y)) <= tol


def hermitian_from(rng, n, scale=1.0):
    g = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) * scale
    return (g + g.conj().T) / 2


def mat_close(a, b, tol):
    a, b = np.asarray(a), np.asarray(b)
    return np.linalg.norm(a - b) <= tol * max(1.0, np.linalg.norm(b))


# Acceptance criteria register their outcome here; printed after the run.
ACCEPTANCE: dict[int, str] = {}


def record_criterion(number: int, ok: bool, title: str, detail: str) -> None:
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {title} ({detail})"
    ACCEPTANCE[number] = line
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for number in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[number])
