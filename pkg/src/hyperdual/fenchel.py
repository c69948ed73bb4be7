"""Convex conjugate of beta = alpha o exp and inversion of the Cauchy law.

``beta*(T) = sup_H [tr(T H) - beta(H)]``. For an isotropic law the maximiser
is coaxial with T, so the default solver works on the three eigenvalues
``h`` of H in the eigenframe of T and maximises
``g(h) = t . h - beta_hat(h)`` by damped Newton. A six-component solver over
the full symmetric H is available as a cross-check (``mode="full"``).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .constants import DEFAULT_TOLERANCES
from .dexp import dexp_spectral
from .errors import InvalidInputError, NotConvergedError, UnboundedConjugateError
from .materials import MaterialLaw
from .tensor import as_sym, eig_sym, exp_sym, from_sym6, inner, sym, sym6

_EPS = np.finfo(float).eps
_OFFDIAG_WEIGHT = np.array([1.0, 1.0, 1.0, 2.0, 2.0, 2.0])


@dataclass(frozen=True)
class FenchelOptions:
    mode: str = "reduced"
    max_iter: int = DEFAULT_TOLERANCES.newton_max_iter
    grad_tol: float = DEFAULT_TOLERANCES.newton_grad
    max_halvings: int = DEFAULT_TOLERANCES.newton_max_halvings
    bound: float = DEFAULT_TOLERANCES.unbounded_bound
    hessian_step: float = DEFAULT_TOLERANCES.hessian_step

    def __post_init__(self):
        if self.mode not in ("reduced", "full"):
            raise InvalidInputError(f"unknown conjugate mode {self.mode!r}")


@dataclass(frozen=True)
class ConjugateResult:
    value: float
    argmax: np.ndarray
    iterations: int
    converged: bool
    gradient_norm_final: float


def _fd_jacobian(grad, x, step):
    n = x.size
    J = np.empty((n, n))
    for k in range(n):
        e = np.zeros(n)
        e[k] = step
        J[:, k] = (grad(x + e) - grad(x - e)) / (2.0 * step)
    return 0.5 * (J + J.T)


def _newton_maximize(g, grad_g, x0, opts: FenchelOptions, bound_norm):
    """Damped Newton ascent on a concave objective.

    The Hessian comes from central differences of the analytic gradient.
    Returns (x, g(x), iterations, converged, final gradient inf-norm).
    """
    x = np.array(x0, dtype=float)
    gx = g(x)
    dg = grad_g(x)
    for it in range(opts.max_iter + 1):
        gnorm = float(np.max(np.abs(dg)))
        if gnorm <= opts.grad_tol * (1.0 + abs(gx)):
            return x, gx, it, True, gnorm
        if it == opts.max_iter:
            break
        step = opts.hessian_step * (1.0 + float(np.max(np.abs(x))))
        neg_hess = -_fd_jacobian(grad_g, x, step)
        try:
            np.linalg.cholesky(neg_hess)
            d = np.linalg.solve(neg_hess, dg)
        except np.linalg.LinAlgError:
            d = dg
        if not d @ dg > 0.0:
            d = dg
        a = 1.0
        accepted = False
        for _ in range(opts.max_halvings + 1):
            x_new = x + a * d
            g_new = g(x_new)
            if g_new > gx:
                accepted = True
                break
            # near the optimum the increase drops below round-off; accept if the gradient shrinks
            if g_new >= gx - 8.0 * _EPS * (1.0 + abs(gx)):
                if np.max(np.abs(grad_g(x_new))) < gnorm:
                    accepted = True
                    break
            a *= 0.5
        if not accepted:
            return x, gx, it, False, gnorm
        if bound_norm(x_new) > opts.bound:
            raise UnboundedConjugateError(
                f"objective keeps increasing beyond |h| = {opts.bound}; beta is not convex here "
                "or the stress lies outside the law's range"
            )
        x, gx = x_new, g_new
        dg = grad_g(x)
    return x, gx, opts.max_iter, False, float(np.max(np.abs(dg)))


def _start_point(law: MaterialLaw, T):
    # linear-elastic guess
    return np.asarray(T, dtype=float) / (2.0 * law.params.mu)


def _conjugate_reduced(law: MaterialLaw, T, opts):
    e = eig_sym(T)
    Q, t = e.frame, e.eigenvalues

    def lift(h):
        return sym((Q * np.exp(h)) @ Q.T)

    def beta_hat(h):
        return law.alpha(lift(h))

    def grad_beta_hat(h):
        G = Q.T @ law.grad_alpha(lift(h)) @ Q
        return np.exp(h) * np.diag(G)

    def g(h):
        return float(t @ h - beta_hat(h))

    def grad_g(h):
        return t - grad_beta_hat(h)

    h, value, iters, converged, gnorm = _newton_maximize(
        g, grad_g, _start_point(law, t), opts, lambda v: float(np.max(np.abs(v)))
    )
    argmax = sym((Q * h) @ Q.T)
    return ConjugateResult(value, argmax, iters, converged, gnorm)


def grad_beta(law: MaterialLaw, H) -> np.ndarray:
    """Gradient of beta(H) = alpha(exp H): the spectral dexp at H applied to h(exp H)."""
    return dexp_spectral(H, law.grad_alpha(exp_sym(H)))


def _conjugate_full(law: MaterialLaw, T, opts):
    def g(x):
        H = from_sym6(x)
        return inner(T, H) - law.beta(H)

    def grad_g(x):
        # d/dx of the trace pairing counts each shear component twice
        return _OFFDIAG_WEIGHT * sym6(T - grad_beta(law, from_sym6(x)))

    def box(x):
        return float(np.max(np.abs(eig_sym(from_sym6(x)).eigenvalues)))

    x, value, iters, converged, gnorm = _newton_maximize(g, grad_g, sym6(_start_point(law, T)), opts, box)
    return ConjugateResult(value, from_sym6(x), iters, converged, gnorm)


def conjugate(law: MaterialLaw, T, options: FenchelOptions | None = None) -> ConjugateResult:
    """beta*(T) and its maximiser.

    Raises :class:`UnboundedConjugateError` when the objective keeps rising
    past the search bound (non-convex beta, or T outside the stress range).
    Non-convergence returns a result with ``converged=False``.
    """
    opts = FenchelOptions() if options is None else options
    T = as_sym(T)
    with np.errstate(over="ignore", invalid="ignore"):
        if opts.mode == "full":
            return _conjugate_full(law, T, opts)
        return _conjugate_reduced(law, T, opts)


def invert_law(law: MaterialLaw, sigma_over_rho, options: FenchelOptions | None = None) -> np.ndarray:
    """ln B producing the given sigma/rho, as the maximiser of the conjugate."""
    res = conjugate(law, sigma_over_rho, options)
    if not res.converged:
        raise NotConvergedError(
            f"conjugate solver stopped after {res.iterations} iterations "
            f"(gradient norm {res.gradient_norm_final:.3e})"
        )
    return res.argmax


@dataclass(frozen=True)
class ConvexityReport:
    min_eigenvalue: float
    argmin: np.ndarray
    convex: bool
    samples: int

    def to_json_dict(self):
        return {
            "min_eigenvalue": self.min_eigenvalue,
            "argmin": self.argmin.tolist(),
            "convex": self.convex,
            "samples": self.samples,
        }


def beta_hat_hessian(law: MaterialLaw, h, step: float = DEFAULT_TOLERANCES.hessian_step) -> np.ndarray:
    """Hessian of beta restricted to diagonal arguments, by differences of the analytic gradient."""
    h = np.asarray(h, dtype=float)

    def grad(v):
        return np.exp(v) * np.diag(law.grad_alpha(np.diag(np.exp(v))))

    return _fd_jacobian(grad, h, step * (1.0 + float(np.max(np.abs(h)))))


def convexity_probe(law: MaterialLaw, region=(-1.0, 1.0), samples: int = 200, seed: int = 0,
                    floor: float = DEFAULT_TOLERANCES.convexity_floor) -> ConvexityReport:
    """Sample Hessians of beta_hat over a box of log-eigenvalue triples.

    ``region`` is ``(lo, hi)`` applied to every component, or a (3, 2) array of
    per-component bounds. The region is flagged non-convex if any sampled
    Hessian eigenvalue is below ``floor``. This reports, it does not certify.
    """
    if samples < 1:
        raise InvalidInputError("convexity_probe needs at least one sample")
    bounds = np.asarray(region, dtype=float)
    if bounds.shape == (2,):
        bounds = np.tile(bounds, (3, 1))
    rng = np.random.default_rng(seed)
    worst, where = np.inf, None
    for _ in range(samples):
        h = rng.uniform(bounds[:, 0], bounds[:, 1])
        m = float(np.linalg.eigvalsh(beta_hat_hessian(law, h))[0])
        if m < worst:
            worst, where = m, h
    return ConvexityReport(worst, where, bool(worst >= floor), samples)
