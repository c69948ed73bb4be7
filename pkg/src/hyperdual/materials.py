"""Isotropic hyperelastic potentials and their property checks.

A law supplies ``alpha(C)``, the stored energy per unit reference mass, and
its analytic gradient ``grad_alpha(C) = d alpha / dC``, so that the second
Piola-Kirchhoff stress per unit reference density is ``h(C) = grad_alpha(C)``.
The same tensor function evaluated at B gives the Cauchy stress per unit
current density as ``h(B) B``.
"""

from __future__ import annotations

import math
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Callable, Iterable

import numpy as np

from .constants import DEFAULT_TOLERANCES, Tolerances
from .errors import CoaxialityViolationError, DomainError, InvalidInputError
from .tensor import I3, axis_flip, commutator_norm, dev, eig_sym, exp_sym, frob, pow_sym, sqrt_sym, sym


@dataclass(frozen=True)
class MaterialParams:
    lam: float = 1.0
    mu: float = 1.0
    rho0: float = 1.0

    def __post_init__(self):
        for name in ("lam", "mu", "rho0"):
            if not math.isfinite(getattr(self, name)):
                raise InvalidInputError(f"{name} must be finite")
        if not self.mu > 0.0:
            raise InvalidInputError(f"mu must be > 0, got {self.mu!r}")
        if not self.rho0 > 0.0:
            raise InvalidInputError(f"rho0 must be > 0, got {self.rho0!r}")
        if not self.lam >= 0.0:
            raise InvalidInputError(f"lambda must be >= 0, got {self.lam!r}")

    @property
    def kappa(self) -> float:
        """Bulk-type modulus lambda + 2 mu / 3."""
        return self.lam + 2.0 * self.mu / 3.0

    @classmethod
    def from_kappa(cls, mu: float, kappa: float, rho0: float = 1.0) -> MaterialParams:
        return cls(lam=kappa - 2.0 * mu / 3.0, mu=mu, rho0=rho0)


class MaterialLaw(ABC):
    """Isotropic potential alpha(C) with its analytic C-gradient."""

    name: str = "abstract"

    def __init__(self, params: MaterialParams | None = None):
        self.params = MaterialParams() if params is None else params

    @abstractmethod
    def alpha(self, C) -> float:
        ...

    @abstractmethod
    def grad_alpha(self, C) -> np.ndarray:
        ...

    def beta(self, H) -> float:
        """The composed potential alpha(exp(H))."""
        return self.alpha(exp_sym(H))

    def __repr__(self):
        p = self.params
        return f"{type(self).__name__}(lam={p.lam!r}, mu={p.mu!r}, rho0={p.rho0!r})"


class StVenantKirchhoff(MaterialLaw):
    name = "svk"

    def alpha(self, C) -> float:
        E = 0.5 * (np.asarray(C) - I3)
        trE = np.trace(E)
        return float(0.5 * self.params.lam * trE**2 + self.params.mu * np.sum(E * E))

    def grad_alpha(self, C) -> np.ndarray:
        E = 0.5 * (np.asarray(C) - I3)
        return sym(0.5 * (self.params.lam * np.trace(E) * I3 + 2.0 * self.params.mu * E))


def _logdet_inv(C):
    sign, logdet = np.linalg.slogdet(C)
    if sign <= 0.0:
        raise DomainError("det C must be positive")
    return logdet, sym(np.linalg.inv(C))


class NeoHookeanCompressible(MaterialLaw):
    name = "neo-hookean"

    def alpha(self, C) -> float:
        C = np.asarray(C, dtype=float)
        logdet, _ = _logdet_inv(C)
        p = self.params
        return float(0.5 * p.mu * (np.trace(C) - 3.0 - logdet) + 0.125 * p.lam * logdet**2)

    def grad_alpha(self, C) -> np.ndarray:
        logdet, C_inv = _logdet_inv(np.asarray(C, dtype=float))
        p = self.params
        return sym(0.5 * p.mu * (I3 - C_inv) + 0.25 * p.lam * logdet * C_inv)


class HenckyQuadratic(MaterialLaw):
    """Quadratic energy in the stretch logarithm ``ht = ln(B)/2``.

    Written in the log variable ``H = ln B`` (or ``ln C`` in the reference
    frame): ``beta(H) = mu |dev(ht)|^2 + kappa/2 (tr ht)^2`` with
    ``kappa = lambda + 2 mu / 3``. Note the factor 1/2 between ``ht`` and ``H``.
    ``alpha(C)`` is ``beta(log C)``.
    """

    name = "hencky"

    def beta_direct(self, H) -> float:
        ht = 0.5 * np.asarray(H, dtype=float)
        d = dev(ht)
        return float(self.params.mu * np.sum(d * d) + 0.5 * self.params.kappa * np.trace(ht) ** 2)

    def grad_beta_direct(self, H) -> np.ndarray:
        """d beta / dH = mu dev(ht) + (kappa/2) tr(ht) I."""
        ht = 0.5 * np.asarray(H, dtype=float)
        return sym(self.params.mu * dev(ht) + 0.5 * self.params.kappa * np.trace(ht) * I3)

    def _log_frame(self, C):
        e = eig_sym(C)
        if not e.eigenvalues[0] > 0.0:
            raise DomainError("Hencky energy needs a positive definite argument", eigenvalue=float(e.eigenvalues[0]))
        return e

    def alpha(self, C) -> float:
        e = self._log_frame(C)
        Q = e.frame
        return self.beta_direct((Q * np.log(e.eigenvalues)) @ Q.T)

    def grad_alpha(self, C) -> np.ndarray:
        # grad_beta(ln C) commutes with C, so the log-derivative adjoint reduces to G C^-1
        e = self._log_frame(C)
        Q = e.frame
        G = self.grad_beta_direct((Q * np.log(e.eigenvalues)) @ Q.T)
        return sym(G @ ((Q / e.eigenvalues) @ Q.T))


class BrokenAnisotropic(StVenantKirchhoff):
    """Negative control: SVK plus a fixed-direction term mu/2 (C11 - 1)^2.

    Not isotropic, so it must fail the isotropy and coaxiality checks.
    """

    name = "broken-anisotropic"

    def alpha(self, C) -> float:
        return super().alpha(C) + 0.5 * self.params.mu * (float(np.asarray(C)[0, 0]) - 1.0) ** 2

    def grad_alpha(self, C) -> np.ndarray:
        G = super().grad_alpha(C)
        G[0, 0] += self.params.mu * (float(np.asarray(C)[0, 0]) - 1.0)
        return G


class FunctionLaw(MaterialLaw):
    """User-defined law from two callables."""

    def __init__(self, alpha: Callable, grad_alpha: Callable, params: MaterialParams | None = None,
                 name: str = "custom"):
        super().__init__(params)
        self._alpha = alpha
        self._grad_alpha = grad_alpha
        self.name = name

    def alpha(self, C) -> float:
        return float(self._alpha(np.asarray(C, dtype=float)))

    def grad_alpha(self, C) -> np.ndarray:
        return sym(self._grad_alpha(np.asarray(C, dtype=float)))


LAWS = {
    cls.name: cls for cls in (StVenantKirchhoff, NeoHookeanCompressible, HenckyQuadratic, BrokenAnisotropic)
}
ISOTROPIC_LAWS = ("svk", "neo-hookean", "hencky")


def make_law(name: str, params: dict | MaterialParams | None = None) -> MaterialLaw:
    """Build a law from its name and a parameter map.

    Recognised keys: ``lambda``, ``mu``, ``rho0``, ``kappa``. When ``kappa`` is
    given, ``lambda`` is derived as ``kappa - 2 mu / 3`` and must not also be set.
    """
    try:
        cls = LAWS[name]
    except KeyError:
        raise InvalidInputError(f"unknown law {name!r}; choose from {sorted(LAWS)}") from None
    if params is None or isinstance(params, MaterialParams):
        return cls(params)
    params = {k: v for k, v in params.items() if v is not None}
    unknown = set(params) - {"lambda", "mu", "rho0", "kappa"}
    if unknown:
        raise InvalidInputError(f"unknown material parameters: {sorted(unknown)}")
    mu = float(params.get("mu", 1.0))
    rho0 = float(params.get("rho0", 1.0))
    if "kappa" in params:
        if "lambda" in params:
            raise InvalidInputError("give either lambda or kappa, not both")
        return cls(MaterialParams.from_kappa(mu, float(params["kappa"]), rho0))
    return cls(MaterialParams(lam=float(params.get("lambda", 1.0)), mu=mu, rho0=rho0))


def _require_spd(X):
    X = np.asarray(X, dtype=float)
    e = eig_sym(X)
    if not e.eigenvalues[0] > 0.0:
        raise DomainError(f"argument is not positive definite (eigenvalue {e.eigenvalues[0]!r})",
                          eigenvalue=float(e.eigenvalues[0]))
    return X


def h_of(law: MaterialLaw, X) -> np.ndarray:
    """The constitutive tensor function h evaluated at C or at B."""
    return sym(law.grad_alpha(_require_spd(X)))


def cauchy_over_rho(law: MaterialLaw, B, tol: Tolerances = DEFAULT_TOLERANCES) -> np.ndarray:
    """sigma/rho = h(B) B, cross-checked against B^1/2 h(B) B^1/2."""
    B = _require_spd(B)
    h = h_of(law, B)
    hB = h @ B
    root = sqrt_sym(B)
    mid = root @ h @ root
    gap = frob(hB - mid)
    if gap > tol.coaxiality * max(1.0, frob(hB)):
        raise CoaxialityViolationError(
            f"h(B)B and B^1/2 h(B) B^1/2 differ by {gap:.3e}; law {law.name!r} is not isotropic"
        )
    return sym(hB)


def isotropy_residuals(law: MaterialLaw, C, R) -> tuple[float, float]:
    """(|alpha(R C R^T) - alpha(C)|, ||R h(C) R^T - h(R C R^T)||_F)."""
    C = _require_spd(C)
    R = np.asarray(R, dtype=float)
    rotated = sym(R @ C @ R.T)
    energy = abs(law.alpha(rotated) - law.alpha(C))
    stress = frob(R @ h_of(law, C) @ R.T - h_of(law, rotated))
    return energy, stress


def coaxiality_residuals(law: MaterialLaw, B, s_values: Iterable[float] = (-1.0, -0.5, 0.5, 1.0, 2.0)) -> list[float]:
    """||[h(B), B^s]||_F for each power s."""
    h = h_of(law, B)
    return [commutator_norm(h, pow_sym(B, s)) for s in s_values]


def axis_flip_residuals(law: MaterialLaw, B) -> list[float]:
    """For each unit eigenvector n of B: ||S h(B) n - h(B) n|| with S the pi-rotation about n.

    Zero means h(B) n is left unchanged by S, hence parallel to n.
    """
    h = h_of(law, B)
    e = eig_sym(B)
    out = []
    for k in range(3):
        n = e.frame[:, k]
        hn = h @ n
        out.append(float(np.linalg.norm(axis_flip(n) @ hn - hn)))
    return out
