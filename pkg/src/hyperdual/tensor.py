"""3x3 symmetric tensor algebra.

Tensors are plain ``(3, 3)`` float arrays. A symmetric tensor (``Sym3``) is a
``(3, 3)`` array that is exactly symmetric; its six independent components are
ordered ``(xx, yy, zz, xy, xz, yz)`` with no factor-of-2 shear scaling (see
:func:`sym6` / :func:`from_sym6`). Because shear components are stored once,
the trace pairing :func:`inner` counts each off-diagonal component twice.

Spectral functions go through :func:`eig_sym`, a cyclic Jacobi solver.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .constants import DEFAULT_TOLERANCES, Tolerances
from .errors import DomainError, InvalidInputError, NotConvergedError

I3 = np.eye(3)

# (row, col) of the six independent components, in storage order
SYM6_INDICES = ((0, 0), (1, 1), (2, 2), (0, 1), (0, 2), (1, 2))

_JACOBI_PAIRS = ((0, 1), (0, 2), (1, 2))


@dataclass(frozen=True)
class EigenDecomp:
    """Eigenvalues sorted ascending and a proper orthogonal frame.

    Column ``i`` of ``frame`` is the unit eigenvector of ``eigenvalues[i]``.
    """

    eigenvalues: np.ndarray
    frame: np.ndarray

    def reconstruct(self) -> np.ndarray:
        Q = self.frame
        return (Q * self.eigenvalues) @ Q.T


def sym(X) -> np.ndarray:
    X = np.asarray(X, dtype=float)
    return 0.5 * (X + X.T)


def as_mat3(X) -> np.ndarray:
    X = np.array(X, dtype=float)
    if X.shape != (3, 3):
        raise InvalidInputError(f"expected a 3x3 tensor, got shape {X.shape}")
    if not np.all(np.isfinite(X)):
        raise InvalidInputError("tensor has non-finite entries")
    return X


def as_sym(X, tol: float | None = None) -> np.ndarray:
    """Validate ``X`` as a symmetric tensor and return an exactly symmetric copy.

    Accepts a 3x3 array or the six components in ``SYM6_INDICES`` order.
    """
    X = np.asarray(X, dtype=float)
    if X.shape == (6,):
        return from_sym6(X)
    X = as_mat3(X)
    tol = DEFAULT_TOLERANCES.symmetry if tol is None else tol
    if np.linalg.norm(X - X.T) > tol * max(1.0, np.linalg.norm(X)):
        raise InvalidInputError("tensor is not symmetric")
    return sym(X)


def sym6(A) -> np.ndarray:
    A = np.asarray(A, dtype=float)
    return np.array([A[i, j] for i, j in SYM6_INDICES])


def from_sym6(v) -> np.ndarray:
    v = np.asarray(v, dtype=float)
    if v.shape != (6,):
        raise InvalidInputError(f"expected 6 components, got shape {v.shape}")
    if not np.all(np.isfinite(v)):
        raise InvalidInputError("tensor has non-finite entries")
    A = np.empty((3, 3))
    for value, (i, j) in zip(v, SYM6_INDICES):
        A[i, j] = A[j, i] = value
    return A


def as_rotation(R, tol: float | None = None) -> np.ndarray:
    R = as_mat3(R)
    tol = DEFAULT_TOLERANCES.rotation if tol is None else tol
    if np.linalg.norm(R.T @ R - I3) > tol or abs(np.linalg.det(R) - 1.0) > tol:
        raise InvalidInputError("matrix is not a proper rotation")
    return R


def frob(A) -> float:
    return float(np.linalg.norm(A))


def inner(A, B) -> float:
    """Trace pairing tr(AB)."""
    return float(np.sum(np.asarray(A) * np.asarray(B).T))


def commutator_norm(A, B) -> float:
    A = np.asarray(A, dtype=float)
    B = np.asarray(B, dtype=float)
    return frob(A @ B - B @ A)


def dev(A) -> np.ndarray:
    return A - (np.trace(A) / 3.0) * I3


def _jacobi(a: list, tol_rel: float, max_sweeps: int):
    v = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]
    norm_a = math.sqrt(sum(a[i][j] ** 2 for i in range(3) for j in range(3)))
    threshold = tol_rel * norm_a
    for _ in range(max_sweeps + 1):
        off = math.sqrt(2.0 * (a[0][1] ** 2 + a[0][2] ** 2 + a[1][2] ** 2))
        if off <= threshold:
            return a, v
        for p, q in _JACOBI_PAIRS:
            apq = a[p][q]
            if apq == 0.0:
                continue
            theta = (a[q][q] - a[p][p]) / (2.0 * apq)
            t = 1.0 / (abs(theta) + math.sqrt(theta * theta + 1.0))
            if theta < 0.0:
                t = -t
            c = 1.0 / math.sqrt(t * t + 1.0)
            s = t * c
            r = 3 - p - q
            arp, arq = a[r][p], a[r][q]
            a[r][p] = a[p][r] = c * arp - s * arq
            a[r][q] = a[q][r] = s * arp + c * arq
            a[p][p] -= t * apq
            a[q][q] += t * apq
            a[p][q] = a[q][p] = 0.0
            for k in range(3):
                vkp, vkq = v[k][p], v[k][q]
                v[k][p] = c * vkp - s * vkq
                v[k][q] = s * vkp + c * vkq
    raise NotConvergedError(f"Jacobi eigensolver did not converge in {max_sweeps} sweeps")


def eig_sym(A, tol: Tolerances = DEFAULT_TOLERANCES) -> EigenDecomp:
    """Eigendecomposition of a symmetric 3x3 tensor by cyclic Jacobi rotations.

    Sweeps run until the off-diagonal Frobenius norm is at most
    ``tol.jacobi_offdiag * ||A||_F``. The frame is forced to det = +1.
    """
    A = np.asarray(A, dtype=float)
    if A.shape != (3, 3) or not np.all(np.isfinite(A)):
        raise InvalidInputError("eig_sym needs a finite 3x3 tensor")
    a = sym(A).tolist()
    d, v = _jacobi(a, tol.jacobi_offdiag, tol.jacobi_max_sweeps)
    eigenvalues = np.array([d[0][0], d[1][1], d[2][2]])
    frame = np.array(v)
    order = np.argsort(eigenvalues, kind="stable")
    eigenvalues = eigenvalues[order]
    frame = frame[:, order]
    if np.linalg.det(frame) < 0.0:
        frame[:, 0] = -frame[:, 0]
    return EigenDecomp(eigenvalues, frame)


def apply_spectral(A, f: Callable[[np.ndarray], np.ndarray], decomp: EigenDecomp | None = None) -> np.ndarray:
    """Isotropic tensor function ``Q diag(f(lambda)) Q^T``.

    ``f`` receives the array of eigenvalues. Repeated eigenvalues need no
    special handling: any orthonormal basis of the eigenspace gives the same
    result.
    """
    e = eig_sym(A) if decomp is None else decomp
    Q = e.frame
    return sym((Q * f(e.eigenvalues)) @ Q.T)


def _require_positive(decomp: EigenDecomp, what: str) -> None:
    lam = decomp.eigenvalues[0]
    if not lam > 0.0:
        raise DomainError(f"{what} requires a positive definite tensor; found eigenvalue {lam!r}", eigenvalue=float(lam))


def exp_sym(A) -> np.ndarray:
    return apply_spectral(A, np.exp)


def log_sym(A) -> np.ndarray:
    e = eig_sym(A)
    _require_positive(e, "log_sym")
    return apply_spectral(A, np.log, e)


def sqrt_sym(A) -> np.ndarray:
    e = eig_sym(A)
    _require_positive(e, "sqrt_sym")
    return apply_spectral(A, np.sqrt, e)


def pow_sym(A, s: float) -> np.ndarray:
    """Real power ``A**s``; non-integer ``s`` needs ``A`` positive definite."""
    e = eig_sym(A)
    if float(s).is_integer():
        if s < 0 and np.any(e.eigenvalues == 0.0):
            raise DomainError("negative power of a singular tensor", eigenvalue=0.0)
    else:
        _require_positive(e, f"pow_sym(s={s})")
    return apply_spectral(A, lambda lam: lam ** float(s), e)


def axis_flip(n, tol: float | None = None) -> np.ndarray:
    """Rotation by pi about the unit axis ``n``: ``2 n n^T - I``."""
    n = np.asarray(n, dtype=float)
    tol = DEFAULT_TOLERANCES.unit_vector if tol is None else tol
    if n.shape != (3,) or not np.all(np.isfinite(n)):
        raise InvalidInputError("axis must be a finite 3-vector")
    if abs(np.linalg.norm(n) - 1.0) > tol:
        raise InvalidInputError(f"axis is not a unit vector (norm {np.linalg.norm(n)!r})")
    return 2.0 * np.outer(n, n) - I3
