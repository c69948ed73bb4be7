"""Seeded property suites behind ``hyperdual verify``.

Each suite returns a :class:`SuiteResult` with its worst residual in the
suite's own normalisation (documented per suite) and the bound it is
compared against. Random streams are derived from ``(seed, suite, law)`` so
results do not depend on which other suites run.
"""

from __future__ import annotations

import zlib
from dataclasses import asdict, dataclass

import numpy as np

from .constants import DEFAULT_QUADRATURE_NODES, DEFAULT_TOLERANCES, Tolerances
from .dexp import dexp_fd, dexp_quadrature, dexp_spectral
from .duality import verify_theorem
from .errors import HyperdualError
from .fenchel import conjugate
from .kinematics import DefGrad, left_cauchy_green, log_strain, mass_ratio, polar, right_cauchy_green
from .materials import MaterialLaw, coaxiality_residuals, h_of, isotropy_residuals
from .sampling import random_defgrad, random_rotation, random_spd, random_sym, random_unit_sym
from .tensor import exp_sym, frob, log_sym, pow_sym

COAXIALITY_POWERS = (-1.0, -0.5, 0.5, 1.0, 2.0)
INVERTIBLE_LAWS = ("hencky", "neo-hookean")


@dataclass
class SuiteResult:
    suite: str
    law: str | None
    samples: int
    passed: int
    max_residual: float
    tolerance: float

    @property
    def ok(self) -> bool:
        return self.passed == self.samples

    def to_json_dict(self):
        d = asdict(self)
        d["pass"] = self.ok
        return d


def suite_rng(seed: int, suite: str, law: str | None = None) -> np.random.Generator:
    key = zlib.crc32(f"{suite}:{law}".encode())
    return np.random.default_rng([seed, key])


def _finish(suite, law, residuals, tolerance):
    residuals = np.asarray(residuals, dtype=float)
    passed = int(np.sum(residuals <= tolerance))
    return SuiteResult(suite, law, len(residuals), passed, float(np.max(residuals)), tolerance)


def theorem_suite(law: MaterialLaw, samples: int, seed: int, tol: Tolerances = DEFAULT_TOLERANCES) -> SuiteResult:
    """Four-path agreement; the residual is the worst pair over its own bound (1 = at the bound)."""
    rng = suite_rng(seed, "theorem", law.name)
    worst = []
    for _ in range(samples):
        report = verify_theorem(law, random_defgrad(rng), tol)
        if report.errors:
            worst.append(np.inf)
            continue
        ratios = []
        for key, r in report.residuals.items():
            exact = "grad_fd" not in key
            ratios.append(r / (tol.exact if exact else tol.fd))
        worst.append(max(ratios))
    return _finish("theorem", law.name, worst, 1.0)


def coaxial_residual(law: MaterialLaw, B) -> float:
    """max_s ||[h(B), B^s]|| / max(mu, ||h(B)||) / ||B^s||."""
    h = h_of(law, B)
    scale = max(law.params.mu, frob(h))
    res = coaxiality_residuals(law, B, COAXIALITY_POWERS)
    return max(r / (scale * frob(pow_sym(B, s))) for r, s in zip(res, COAXIALITY_POWERS))


def coaxiality_suite(law: MaterialLaw, samples: int, seed: int, tol: Tolerances = DEFAULT_TOLERANCES) -> SuiteResult:
    rng = suite_rng(seed, "coaxiality", law.name)
    res = [coaxial_residual(law, random_spd(rng, 0.25, 4.0)) for _ in range(samples)]
    return _finish("coaxiality", law.name, res, tol.coaxiality)


def isotropy_residual(law: MaterialLaw, C, R) -> float:
    """Energy gap over max(mu, |alpha|) and stress gap over max(mu, ||h||), whichever is larger."""
    energy, stress = isotropy_residuals(law, C, R)
    return max(energy / max(law.params.mu, abs(law.alpha(C))),
               stress / max(law.params.mu, frob(h_of(law, C))))


def isotropy_suite(law: MaterialLaw, samples: int, seed: int, tol: Tolerances = DEFAULT_TOLERANCES) -> SuiteResult:
    rng = suite_rng(seed, "isotropy", law.name)
    res = [isotropy_residual(law, random_spd(rng, 0.25, 4.0), random_rotation(rng)) for _ in range(samples)]
    return _finish("isotropy", law.name, res, tol.coaxiality)


def dexp_pairs(rng, samples: int):
    return [(random_sym(rng, 2.0), random_unit_sym(rng)) for _ in range(samples)]


def dexp_suites(samples: int, seed: int, nodes: int = DEFAULT_QUADRATURE_NODES) -> list[SuiteResult]:
    """Quadrature vs spectral (1e-10) and finite differences vs spectral (1e-6), plain relative."""
    rng = suite_rng(seed, "dexp")
    quad, fd = [], []
    for A, dA in dexp_pairs(rng, samples):
        ref = dexp_spectral(A, dA)
        quad.append(frob(dexp_quadrature(A, dA, nodes) - ref) / frob(ref))
        fd.append(frob(dexp_fd(A, dA) - ref) / frob(ref))
    return [_finish(f"dexp-quadrature-{nodes}", None, quad, 1e-10), _finish("dexp-fd", None, fd, 1e-6)]


def kinematic_residuals(F) -> dict:
    F = DefGrad(F)
    C, B = right_cauchy_green(F), left_cauchy_green(F)
    J = mass_ratio(F)
    pf = polar(F)
    return {
        "det": max(abs(J - np.sqrt(np.linalg.det(C))), abs(J - np.sqrt(np.linalg.det(B)))) / J,
        "polar": max(frob(pf.R @ pf.U - F.F) / frob(F.F), frob(pf.R @ C @ pf.R.T - B) / frob(B)),
        "exp-log": frob(exp_sym(log_strain(F)) - B) / frob(B),
    }


def kinematics_suites(samples: int, seed: int) -> list[SuiteResult]:
    rng = suite_rng(seed, "kinematics")
    rows = [kinematic_residuals(random_defgrad(rng)) for _ in range(samples)]
    rng = suite_rng(seed, "exp-log")
    spd = []
    for _ in range(samples):
        B = random_spd(rng, 0.2, 5.0)
        spd.append(frob(exp_sym(log_sym(B)) - B) / frob(B))
    return [
        _finish("kinematics-det", None, [r["det"] for r in rows], 1e-12),
        _finish("kinematics-polar", None, [r["polar"] for r in rows], 1e-10),
        _finish("kinematics-exp-log", None, [r["exp-log"] for r in rows], 1e-12),
        _finish("spd-exp-log", None, spd, 1e-12),
    ]


def inversion_suite(law: MaterialLaw, samples: int, seed: int, tol: Tolerances = DEFAULT_TOLERANCES) -> SuiteResult:
    """Forward-then-invert round trip; residual is max |ln B recovered - ln B|."""
    rng = suite_rng(seed, "inversion", law.name)
    bound = 1e-8 if law.name == "hencky" else 1e-6
    res = []
    for _ in range(samples):
        F = random_defgrad(rng)
        lnB = log_strain(F)
        T = h_of(law, left_cauchy_green(F)) @ left_cauchy_green(F)
        try:
            out = conjugate(law, 0.5 * (T + T.T))
            res.append(float(np.max(np.abs(out.argmax - lnB))) if out.converged else np.inf)
        except HyperdualError:
            res.append(np.inf)
    return _finish("inversion", law.name, res, bound)


def run_all(laws: list[MaterialLaw], samples: int, seed: int, tol: Tolerances = DEFAULT_TOLERANCES,
            nodes: int = DEFAULT_QUADRATURE_NODES) -> list[SuiteResult]:
    results = []
    for law in laws:
        results.append(theorem_suite(law, samples, seed, tol))
        results.append(coaxiality_suite(law, samples, seed, tol))
        results.append(isotropy_suite(law, samples, seed, tol))
        if law.name in INVERTIBLE_LAWS:
            results.append(inversion_suite(law, samples, seed, tol))
    results.extend(dexp_suites(samples, seed, nodes))
    results.extend(kinematics_suites(samples, seed))
    return results


def dexp_convergence_table(samples: int, seed: int, nodes_list=(2, 4, 8, 16, 32)) -> list[dict]:
    """Max relative error of the quadrature route against the spectral one.

    Two sample sets: ``zero`` (A = 0, random unit dA) and ``random``
    (||A||_F <= 2). One row per (set, nodes).
    """
    rng = suite_rng(seed, "dexp-table")
    pairs = dexp_pairs(rng, samples)
    sets = {
        "zero": [(np.zeros((3, 3)), dA) for _, dA in pairs],
        "random": pairs,
    }
    rows = []
    for name, group in sets.items():
        refs = [dexp_spectral(A, dA) for A, dA in group]
        for n in nodes_list:
            err = max(frob(dexp_quadrature(A, dA, n) - ref) / frob(ref) for (A, dA), ref in zip(group, refs))
            rows.append({"set": name, "nodes": n, "max_rel_error": float(err)})
    return rows


def is_monotone_to_floor(errors, floor: float = 1e-14) -> bool:
    """Each error no larger than its predecessor, unless already at the noise floor."""
    return all(b <= a or b <= floor for a, b in zip(errors, errors[1:]))
