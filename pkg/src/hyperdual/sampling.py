"""Seeded random tensors for property sweeps."""

from __future__ import annotations

import numpy as np

from .tensor import I3, sym


def random_rotation(rng: np.random.Generator) -> np.ndarray:
    # QR of a Gaussian matrix with the sign fix gives a Haar-distributed orthogonal Q
    Q, Rr = np.linalg.qr(rng.standard_normal((3, 3)))
    Q = Q * np.sign(np.diag(Rr))
    if np.linalg.det(Q) < 0.0:
        Q[:, 0] = -Q[:, 0]
    return Q


def random_spd(rng: np.random.Generator, lo: float = 0.2, hi: float = 5.0, eigenvalues=None) -> np.ndarray:
    lam = rng.uniform(lo, hi, 3) if eigenvalues is None else np.asarray(eigenvalues, dtype=float)
    Q = random_rotation(rng)
    return sym((Q * lam) @ Q.T)


def random_sym(rng: np.random.Generator, max_norm: float = 2.0) -> np.ndarray:
    """Symmetric tensor with Frobenius norm uniform in [0, max_norm]."""
    X = sym(rng.standard_normal((3, 3)))
    return X * (rng.uniform(0.0, max_norm) / np.linalg.norm(X))


def random_unit_sym(rng: np.random.Generator) -> np.ndarray:
    X = sym(rng.standard_normal((3, 3)))
    return X / np.linalg.norm(X)


def random_defgrad(rng: np.random.Generator, det_range=(0.5, 2.0)) -> np.ndarray:
    """F = (I + 0.3 G) diag(stretches), resampled until det F lies in ``det_range``."""
    while True:
        G = rng.uniform(-1.0, 1.0, (3, 3))
        stretches = rng.uniform(0.7, 1.5, 3)
        F = (I3 + 0.3 * G) * stretches
        J = np.linalg.det(F)
        if det_range[0] <= J <= det_range[1]:
            return F
