"""Deformation-gradient kinematics: C, B, polar factors, Hencky strain, mass ratio."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .constants import DEFAULT_TOLERANCES
from .errors import DegenerateDeformationError
from .tensor import as_mat3, eig_sym, log_sym, sym


class DefGrad:
    """Deformation gradient with det F above a floor (default 1e-8)."""

    __slots__ = ("F",)

    def __init__(self, F, det_floor: float | None = None):
        F = as_mat3(F)
        floor = DEFAULT_TOLERANCES.det_floor if det_floor is None else det_floor
        J = np.linalg.det(F)
        if not J >= floor:
            raise DegenerateDeformationError(f"det F = {J!r} is below the floor {floor!r}")
        F.setflags(write=False)
        self.F = F

    def __repr__(self):
        return f"DefGrad({self.F.tolist()!r})"


def as_defgrad(F) -> DefGrad:
    return F if isinstance(F, DefGrad) else DefGrad(F)


@dataclass(frozen=True)
class PolarFactors:
    R: np.ndarray
    U: np.ndarray


def right_cauchy_green(F) -> np.ndarray:
    F = as_defgrad(F).F
    return sym(F.T @ F)


def left_cauchy_green(F) -> np.ndarray:
    F = as_defgrad(F).F
    return sym(F @ F.T)


def polar(F) -> PolarFactors:
    """Right polar decomposition F = R U with U = sqrt(F^T F)."""
    F = as_defgrad(F).F
    e = eig_sym(sym(F.T @ F))
    floor = DEFAULT_TOLERANCES.spd_floor
    if not e.eigenvalues[0] > floor:
        raise DegenerateDeformationError(
            f"right stretch is numerically singular (C eigenvalue {e.eigenvalues[0]!r})"
        )
    Q = e.frame
    stretches = np.sqrt(e.eigenvalues)
    U = sym((Q * stretches) @ Q.T)
    U_inv = sym((Q / stretches) @ Q.T)
    return PolarFactors(R=F @ U_inv, U=U)


def log_strain(F) -> np.ndarray:
    """Hencky strain ln B."""
    return log_sym(left_cauchy_green(F))


def mass_ratio(F) -> float:
    """rho0 / rho = det F."""
    return float(np.linalg.det(as_defgrad(F).F))
