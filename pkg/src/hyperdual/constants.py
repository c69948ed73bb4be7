"""Central table of numerical tolerances.

Every tolerance used by the library lives here. Callers override by passing a
modified copy, e.g. ``dataclasses.replace(DEFAULT_TOLERANCES, exact=1e-8)``.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Tolerances:
    # tensor_core
    jacobi_offdiag: float = 1e-14
    jacobi_max_sweeps: int = 50
    unit_vector: float = 1e-12
    rotation: float = 1e-12
    symmetry: float = 1e-12

    # kinematics
    det_floor: float = 1e-8
    spd_floor: float = 1e-12

    # dexp
    dexp_asymmetry: float = 1e-12
    divided_difference_gap: float = 1e-8
    fd_step_scale: float = 1e-5

    # materials
    coaxiality: float = 1e-10

    # duality: pairwise relative residuals
    exact: float = 1e-9
    fd: float = 1e-6
    fd_gradient_step: float = 1e-5

    # fenchel
    newton_grad: float = 1e-10
    newton_max_iter: int = 100
    newton_max_halvings: int = 30
    unbounded_bound: float = 50.0
    convexity_floor: float = -1e-8
    hessian_step: float = 1e-5


DEFAULT_TOLERANCES = Tolerances()

DEFAULT_QUADRATURE_NODES = 16
