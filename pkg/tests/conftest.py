import numpy as np
import pytest
from hypothesis import strategies as st

from corrdet import SymMatrix, validate_correlation

EX11 = [[1, 0, -0.5], [0, 1, 0.5], [-0.5, 0.5, 1]]
EX12 = [[1, -0.3, -0.3], [-0.3, 1, -0.5], [-0.3, -0.5, 1]]
EX2 = [[1, 0, 0.8], [0, 1, -0.5], [0.8, -0.5, 1]]


@pytest.fixture
def ex11():
    return validate_correlation(SymMatrix(EX11))


@pytest.fixture
def ex12():
    return validate_correlation(SymMatrix(EX12))


@pytest.fixture
def ex2():
    return validate_correlation(SymMatrix(EX2))


def sym_arrays(min_n=1, max_n=7, bound=10.0):
    """Strategy for symmetric float arrays with moderate entries."""

    @st.composite
    def build(draw):
        n = draw(st.integers(min_n, max_n))
        vals = draw(
            st.lists(
                st.floats(-bound, bound, allow_nan=False, allow_infinity=False),
                min_size=n * n,
                max_size=n * n,
            )
        )
        a = np.array(vals).reshape(n, n)
        return (a + a.T) / 2.0

    return build()


def correlation_matrices(min_n=2, max_n=7):
    """Strategy drawing Gram-type correlation matrices from hypothesis-chosen rows."""

    @st.composite
    def build(draw):
        n = draw(st.integers(min_n, max_n))
        k = draw(st.integers(1, n))
        vals = draw(
            st.lists(st.floats(-1, 1, allow_nan=False), min_size=n * k, max_size=n * k)
        )
        rows = np.array(vals).reshape(n, k)
        rows[np.linalg.norm(rows, axis=1) < 1e-3, 0] = 1.0
        rows /= np.linalg.norm(rows, axis=1, keepdims=True)
        g = np.clip(rows @ rows.T, -1, 1)
        np.fill_diagonal(g, 1.0)
        return validate_correlation(SymMatrix(g))

    return build()


ACCEPTANCE_LINES = []


def record_criterion(number, title, ok, detail=""):
    ACCEPTANCE_LINES.append(f"[{'PASS' if ok else 'FAIL'}] AC{number:<2} {title}" + (f"  ({detail})" if detail else ""))
    return ok


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda l: int(l.split("AC")[1].split()[0])):
            terminalreporter.write_line(line)
