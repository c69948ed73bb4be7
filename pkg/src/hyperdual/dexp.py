"""Directional derivative of the matrix exponential at a symmetric argument.

Three independent routes:

* :func:`dexp_quadrature`: ``exp(A) * integral_0^1 exp(-sA) dA exp(sA) ds``
  approximated by Gauss-Legendre on [0, 1];
* :func:`dexp_spectral`: divided differences of ``exp`` in the eigenbasis of A;
* :func:`dexp_fd`: central finite differences of ``exp_sym``.
"""

from __future__ import annotations

import numpy as np

from .constants import DEFAULT_QUADRATURE_NODES, DEFAULT_TOLERANCES, Tolerances
from .errors import InvalidInputError, NotConvergedError
from .quadrature import gauss_legendre_unit
from .tensor import as_mat3, eig_sym, exp_sym, frob, sym


def dexp_quadrature(A, dA, nodes: int = DEFAULT_QUADRATURE_NODES, tol: Tolerances = DEFAULT_TOLERANCES,
                    return_asymmetry: bool = False):
    """Gauss-Legendre evaluation of the integral form of D(exp)(A)[dA].

    The exact integral is symmetric and the node set is mirror-symmetric, so
    the raw quadrature sum must already be symmetric to round-off; an
    asymmetry above ``tol.dexp_asymmetry`` relative raises.
    """
    s, w = gauss_legendre_unit(nodes)
    A = as_mat3(A)
    dA = as_mat3(dA)
    e = eig_sym(A)
    Q, lam = e.frame, e.eigenvalues
    integral = np.zeros((3, 3))
    for s_k, w_k in zip(s, w):
        left = (Q * np.exp(-s_k * lam)) @ Q.T
        right = (Q * np.exp(s_k * lam)) @ Q.T
        integral += w_k * (left @ dA @ right)
    X = ((Q * np.exp(lam)) @ Q.T) @ integral
    asymmetry = frob(X - X.T)
    if asymmetry > tol.dexp_asymmetry * max(frob(X), np.finfo(float).tiny):
        raise NotConvergedError(f"quadrature result asymmetric: ||X - X^T|| = {asymmetry:.3e}")
    X = sym(X)
    return (X, asymmetry) if return_asymmetry else X


def exp_divided_differences(lam, tol: Tolerances = DEFAULT_TOLERANCES) -> np.ndarray:
    """Matrix phi[i, j] = (e^li - e^lj)/(li - lj), with the diagonal e^li.

    Gaps below ``tol.divided_difference_gap * max(1, |li|, |lj|)`` use the
    midpoint value ``exp((li + lj)/2)``.
    """
    lam = np.asarray(lam, dtype=float)
    phi = np.empty((3, 3))
    for i in range(3):
        for j in range(3):
            x, y = lam[i], lam[j]
            gap = x - y
            if abs(gap) > tol.divided_difference_gap * max(1.0, abs(x), abs(y)):
                # expm1 form avoids cancellation in e^x - e^y
                phi[i, j] = np.exp(y) * np.expm1(gap) / gap
            else:
                phi[i, j] = np.exp(0.5 * (x + y))
    return phi


def dexp_spectral(A, dA, tol: Tolerances = DEFAULT_TOLERANCES) -> np.ndarray:
    e = eig_sym(as_mat3(A))
    Q = e.frame
    dA_eig = Q.T @ as_mat3(dA) @ Q
    return sym(Q @ (dA_eig * exp_divided_differences(e.eigenvalues, tol)) @ Q.T)


def default_fd_step(A, tol: Tolerances = DEFAULT_TOLERANCES) -> float:
    return tol.fd_step_scale * (1.0 + frob(A))


def dexp_fd(A, dA, step: float | None = None) -> np.ndarray:
    """Central difference ``(exp(A + h u) - exp(A - h u)) / 2h`` scaled by ||dA||, with u = dA/||dA||.

    ``step`` is the length of the perturbation, so accuracy does not depend
    on the scale of ``dA``.
    """
    A = as_mat3(A)
    dA = as_mat3(dA)
    h = default_fd_step(A) if step is None else float(step)
    if not h > 0.0:
        raise InvalidInputError("finite-difference step must be positive")
    size = frob(dA)
    if size == 0.0:
        return np.zeros((3, 3))
    u = dA / size
    return sym((exp_sym(A + h * u) - exp_sym(A - h * u)) * (size / (2.0 * h)))
