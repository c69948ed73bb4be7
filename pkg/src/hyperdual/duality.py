"""Four independent computations of sigma/rho and their cross-check.

* push-forward ``F h(C) F^T`` of the second Piola-Kirchhoff stress;
* ``h(B) B``;
* the gradient of ``beta(H) = alpha(exp H)`` at ``H = ln B`` by central
  finite differences;
* the same gradient by the chain rule, ``Dexp(ln B)[h(B)]`` (the spectral
  derivative of exp is self-adjoint under the trace pairing, so its adjoint
  application is a forward one).

If the law is isotropic and hyperelastic the four agree.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from .constants import DEFAULT_TOLERANCES, Tolerances
from .dexp import dexp_spectral
from .errors import HyperdualError, InvalidInputError
from .kinematics import DefGrad, as_defgrad, left_cauchy_green, log_strain, mass_ratio, right_cauchy_green
from .materials import MaterialLaw, cauchy_over_rho, h_of
from .tensor import SYM6_INDICES, frob, sym

PATHS = ("sigma_pushforward", "sigma_hB_B", "sigma_grad_fd", "sigma_grad_chain")
EXACT_PATHS = ("sigma_pushforward", "sigma_hB_B", "sigma_grad_chain")
PAIRS = tuple(combinations(PATHS, 2))


def pair_key(a: str, b: str) -> str:
    return f"{a}/{b}"


def relative_residual(X, Y, scale: float = 1.0) -> float:
    """||X - Y||_F / max(||X||_F, ||Y||_F, scale)."""
    return frob(X - Y) / max(frob(X), frob(Y), scale)


def sigma_pushforward(law: MaterialLaw, F) -> np.ndarray:
    F = as_defgrad(F).F
    return sym(F @ h_of(law, right_cauchy_green(F)) @ F.T)


def sigma_hB_B(law: MaterialLaw, F, tol: Tolerances = DEFAULT_TOLERANCES) -> np.ndarray:
    return cauchy_over_rho(law, left_cauchy_green(F), tol)


def sym_basis():
    """The six symmetric basis directions: unit diagonals and symmetric off-diagonal pairs."""
    basis = []
    for i, j in SYM6_INDICES:
        E = np.zeros((3, 3))
        E[i, j] = E[j, i] = 1.0
        basis.append(E)
    return basis


_BASIS = sym_basis()


def fd_gradient(fun, X, step: float) -> np.ndarray:
    """Central-difference gradient of a scalar function of a symmetric tensor.

    The result G satisfies ``inner(G, dX) ~ Df(X)[dX]``. An off-diagonal pair
    direction picks up each shear component twice in the trace pairing, so its
    directional derivative is halved.
    """
    G = np.zeros((3, 3))
    for (i, j), E in zip(SYM6_INDICES, _BASIS):
        d = (fun(X + step * E) - fun(X - step * E)) / (2.0 * step)
        if i != j:
            d *= 0.5
        G[i, j] = G[j, i] = d
    return G


def sigma_from_log_potential_fd(law: MaterialLaw, F, step: float | None = None,
                                tol: Tolerances = DEFAULT_TOLERANCES) -> np.ndarray:
    H = log_strain(F)
    h = tol.fd_gradient_step * (1.0 + frob(H)) if step is None else float(step)
    if not h > 0.0:
        raise InvalidInputError("finite-difference step must be positive")
    return fd_gradient(law.beta, H, h)


def sigma_from_log_potential_chain(law: MaterialLaw, F) -> np.ndarray:
    B = left_cauchy_green(F)
    return dexp_spectral(log_strain(F), h_of(law, B))


def absolute_cauchy(law: MaterialLaw, F) -> np.ndarray:
    """sigma = rho (sigma/rho) with rho = rho0 / det F."""
    F = as_defgrad(F)
    rho = law.params.rho0 / mass_ratio(F)
    return rho * sigma_pushforward(law, F)


@dataclass
class StressReport:
    F: np.ndarray
    sigma_pushforward: np.ndarray | None
    sigma_hB_B: np.ndarray | None
    sigma_grad_fd: np.ndarray | None
    sigma_grad_chain: np.ndarray | None
    residuals: dict
    mass_ratio: float
    densities: tuple
    passed: bool
    errors: dict = field(default_factory=dict)

    def path(self, name: str):
        return getattr(self, name)

    def to_json_dict(self) -> dict:
        def tensor(X):
            return None if X is None else np.asarray(X).tolist()

        out = {"F": tensor(self.F)}
        for name in PATHS:
            out[name] = tensor(self.path(name))
        out["residuals"] = dict(self.residuals)
        out["pass"] = bool(self.passed)
        out["mass_ratio"] = self.mass_ratio
        out["densities"] = {"rho0": self.densities[0], "rho": self.densities[1]}
        if self.errors:
            out["errors"] = dict(self.errors)
        return out


def verify_theorem(law: MaterialLaw, F, tol: Tolerances = DEFAULT_TOLERANCES,
                   fd_step: float | None = None) -> StressReport:
    """Compute all four sigma/rho paths and compare them pairwise.

    Pairs among the exact paths must agree to ``tol.exact``; pairs involving
    the finite-difference path to ``tol.fd``. Residuals are relative with a
    floor of ``mu`` (the law's stress scale). A path that raises is recorded
    in ``errors`` and the report fails.
    """
    F = as_defgrad(F)
    compute = {
        "sigma_pushforward": lambda: sigma_pushforward(law, F),
        "sigma_hB_B": lambda: sigma_hB_B(law, F, tol),
        "sigma_grad_fd": lambda: sigma_from_log_potential_fd(law, F, fd_step, tol),
        "sigma_grad_chain": lambda: sigma_from_log_potential_chain(law, F),
    }
    values, errors = {}, {}
    for name, fn in compute.items():
        try:
            values[name] = fn()
        except (HyperdualError, np.linalg.LinAlgError) as exc:
            values[name] = None
            errors[name] = f"{type(exc).__name__}: {exc}"

    scale = law.params.mu
    residuals = {}
    passed = not errors
    for a, b in PAIRS:
        if values[a] is None or values[b] is None:
            residuals[pair_key(a, b)] = None
            continue
        r = relative_residual(values[a], values[b], scale)
        residuals[pair_key(a, b)] = r
        limit = tol.exact if (a in EXACT_PATHS and b in EXACT_PATHS) else tol.fd
        if not r <= limit:
            passed = False

    J = mass_ratio(F)
    return StressReport(
        F=np.array(F.F),
        residuals=residuals,
        mass_ratio=J,
        densities=(law.params.rho0, law.params.rho0 / J),
        passed=passed,
        errors=errors,
        **values,
    )


def report_objectivity_residual(law: MaterialLaw, F, Q, tol: Tolerances = DEFAULT_TOLERANCES) -> float:
    """Largest relative gap between each path at QF and Q (path at F) Q^T."""
    F = as_defgrad(F)
    base = verify_theorem(law, F, tol)
    moved = verify_theorem(law, DefGrad(Q @ F.F), tol)
    worst = 0.0
    for name in PATHS:
        X, Y = base.path(name), moved.path(name)
        worst = max(worst, relative_residual(Q @ X @ Q.T, Y, law.params.mu))
    return worst
