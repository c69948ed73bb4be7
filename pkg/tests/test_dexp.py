import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.linalg import expm, expm_frechet

from hyperdual.dexp import dexp_fd, dexp_quadrature, dexp_spectral, exp_divided_differences
from hyperdual.errors import InvalidInputError
from hyperdual.quadrature import gauss_legendre_unit
from hyperdual.sampling import random_rotation, random_sym, random_unit_sym
from hyperdual.tensor import commutator_norm, exp_sym, from_sym6, inner, sym

METHODS = {
    "quadrature": lambda A, dA: dexp_quadrature(A, dA),
    "spectral": dexp_spectral,
    "fd": lambda A, dA: dexp_fd(A, dA),
}


def rel(X, Y):
    return np.linalg.norm(X - Y) / max(np.linalg.norm(Y), 1e-300)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 8, 16, 32])
def test_rule_integrates_polynomials(n):
    s, w = gauss_legendre_unit(n)
    assert np.sum(w) == pytest.approx(1.0, abs=1e-15)
    assert np.allclose(s, 1.0 - s[::-1], rtol=0, atol=2e-16)
    assert np.array_equal(w, w[::-1])
    for k in range(2 * n):
        assert np.sum(w * s**k) == pytest.approx(1.0 / (k + 1), rel=1e-13)


@pytest.mark.parametrize("bad", [0, -1, 2.5, True])
def test_rule_rejects_bad_node_counts(bad):
    with pytest.raises(InvalidInputError):
        gauss_legendre_unit(bad)
    with pytest.raises(InvalidInputError):
        dexp_quadrature(np.eye(3), np.eye(3), nodes=bad)


def test_quadrature_at_zero_is_identity_map(rng):
    dA = random_unit_sym(rng)
    assert np.linalg.norm(dexp_quadrature(np.zeros((3, 3)), dA) - dA) <= 1e-15


def test_quadrature_commuting_case():
    A, dA = np.diag([1.0, 2.0, 3.0]), np.diag([4.0, 5.0, 6.0])
    expected = np.diag([4 * np.e, 5 * np.e**2, 6 * np.e**3])
    assert rel(dexp_quadrature(A, dA), expected) <= 1e-14


def test_off_diagonal_divided_difference():
    A = np.diag([0.0, np.log(4.0), 0.0])
    dA = np.zeros((3, 3))
    dA[0, 1] = dA[1, 0] = 1.0
    # (e^0 - e^ln4) / (0 - ln4) = 3 / ln 4
    expected = 3.0 / np.log(4.0)
    assert expected == pytest.approx(2.1640, abs=1e-4)
    h = 1e-6
    fd_oracle = (expm(A + h * dA) - expm(A - h * dA)) / (2 * h)
    assert fd_oracle[0, 1] == pytest.approx(expected, rel=1e-8)
    for name in ("quadrature", "spectral"):
        X = METHODS[name](A, dA)
        assert X[0, 1] == pytest.approx(expected, rel=1e-13)
        assert X[1, 0] == pytest.approx(expected, rel=1e-13)
        assert np.max(np.abs(np.diag(X))) <= 1e-15


def test_spectral_examples(rng):
    dA = random_unit_sym(rng)
    assert rel(dexp_spectral(np.zeros((3, 3)), dA), dA) <= 1e-15
    assert rel(dexp_spectral(np.eye(3), dA), np.e * dA) <= 1e-15


def test_spectral_nearly_repeated_matches_quadrature(rng):
    Q = random_rotation(rng)
    A = (Q * np.array([1.0, 1.0 + 1e-9, 2.0])) @ Q.T
    dA = sym(rng.standard_normal((3, 3)))
    assert rel(dexp_spectral(A, dA), dexp_quadrature(A, dA, 32)) <= 1e-9


def test_divided_differences_near_degenerate_branch():
    phi = exp_divided_differences([1.0, 1.0 + 1e-12, 1.0 + 1e-6])
    assert phi[0, 1] == np.exp(1.0 + 0.5e-12)
    assert phi[0, 2] == pytest.approx(np.exp(1.0) * np.expm1(1e-6) / 1e-6, rel=1e-15)
    assert np.allclose(phi, phi.T, rtol=1e-15, atol=0)


def test_spectral_matches_scipy_frechet(rng):
    for _ in range(100):
        A, dA = random_sym(rng, 2.0), random_unit_sym(rng)
        assert rel(dexp_spectral(A, dA), expm_frechet(A, dA, compute_expm=False)) <= 1e-12


def test_fd_examples(rng):
    assert np.linalg.norm(dexp_fd(np.zeros((3, 3)), np.eye(3), step=1e-5) - np.eye(3)) <= 1e-9
    for _ in range(50):
        A, dA = random_sym(rng, 2.0), random_unit_sym(rng)
        assert rel(dexp_fd(A, dA, 1e-5), dexp_spectral(A, dA)) <= 1e-6
    with pytest.raises(InvalidInputError):
        dexp_fd(np.eye(3), np.eye(3), step=0.0)


def test_fd_error_is_second_order(rng):
    A, dA = random_sym(rng, 2.0), random_unit_sym(rng)
    A *= 2.0 / np.linalg.norm(A)
    ref = dexp_spectral(A, dA)
    errs = [rel(dexp_fd(A, dA, h), ref) for h in (1e-3, 1e-4, 1e-5)]
    assert 50 < errs[0] / errs[1] < 200
    assert errs[2] < errs[1] or errs[2] < 1e-10


def test_quadrature_asymmetry_is_recorded(rng):
    A, dA = random_sym(rng, 2.0), random_unit_sym(rng)
    X, asym = dexp_quadrature(A, dA, 8, return_asymmetry=True)
    assert 0.0 <= asym <= 1e-12 * np.linalg.norm(X)
    assert np.array_equal(X, X.T)


def test_quadrature_convergence_monotone(rng):
    for _ in range(30):
        A, dA = random_sym(rng, 2.0), random_unit_sym(rng)
        ref = dexp_spectral(A, dA)
        errs = [rel(dexp_quadrature(A, dA, n), ref) for n in (2, 4, 8, 16, 32)]
        assert all(b <= a or b <= 1e-14 for a, b in zip(errs, errs[1:]))
        assert errs[0] > 0


@pytest.mark.parametrize("name", sorted(METHODS))
def test_linearity(rng, name):
    f = METHODS[name]
    tol = 1e-12 if name != "fd" else 1e-9
    for _ in range(20):
        A, X, Y = random_sym(rng, 2.0), random_unit_sym(rng), random_unit_sym(rng)
        a, b = rng.uniform(-2, 2, 2)
        assert rel(f(A, a * X + b * Y), a * f(A, X) + b * f(A, Y)) <= tol


def test_self_adjoint(rng):
    for _ in range(100):
        A, V, W = random_sym(rng, 2.0), random_unit_sym(rng), random_unit_sym(rng)
        lhs, rhs = inner(W, dexp_spectral(A, V)), inner(V, dexp_spectral(A, W))
        assert abs(lhs - rhs) <= 1e-12 * max(1.0, abs(lhs))


@pytest.mark.parametrize("name", sorted(METHODS))
def test_commuting_collapse(rng, name):
    for _ in range(20):
        Q = random_rotation(rng)
        A = (Q * rng.uniform(-1, 1, 3)) @ Q.T
        dA = (Q * rng.uniform(-1, 1, 3)) @ Q.T
        assert commutator_norm(A, dA) <= 1e-13
        expected = sym(exp_sym(A) @ dA)
        # central differences bottom out near 1e-10 from round-off in exp_sym
        assert rel(METHODS[name](A, dA), expected) <= (1e-9 if name == "fd" else 1e-10)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.floats(-1.0, 1.0), min_size=6, max_size=6), st.lists(st.floats(-1.0, 1.0), min_size=6, max_size=6))
def test_routes_agree_property(a, d):
    A, dA = from_sym6(a), from_sym6(d)
    if np.linalg.norm(dA) < 1e-3:
        return
    ref = dexp_spectral(A, dA)
    assert rel(dexp_quadrature(A, dA), ref) <= 1e-10
    assert rel(dexp_fd(A, dA), ref) <= 1e-6
