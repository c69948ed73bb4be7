import numpy as np
import pytest

from hyperdual.materials import ISOTROPIC_LAWS, make_law

_ACCEPTANCE_LINES = []


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture(params=ISOTROPIC_LAWS)
def law(request):
    return make_law(request.param)


@pytest.fixture
def criterion():
    """Record one PASS/FAIL line per acceptance criterion; printed in the terminal summary."""

    def record(name, ok, detail=""):
        line = f"{'PASS' if ok else 'FAIL'}  {name}  {detail}"
        _ACCEPTANCE_LINES.append(line)
        print(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def fd_grad_sym(fun, X, step):
    """Test-side central-difference gradient w.r.t. a symmetric tensor, perturbing X[i,j] and X[j,i] together."""
    G = np.zeros((3, 3))
    for i in range(3):
        for j in range(i, 3):
            E = np.zeros((3, 3))
            E[i, j] = E[j, i] = 1.0
            d = (fun(X + step * E) - fun(X - step * E)) / (2 * step)
            G[i, j] = G[j, i] = d if i == j else d / 2
    return G
