import json

import numpy as np
import pytest

from hyperdual.duality import (
    PATHS,
    absolute_cauchy,
    fd_gradient,
    report_objectivity_residual,
    sigma_from_log_potential_chain,
    sigma_from_log_potential_fd,
    sigma_hB_B,
    sigma_pushforward,
    verify_theorem,
)
from hyperdual.kinematics import left_cauchy_green, log_strain
from hyperdual.materials import BrokenAnisotropic, FunctionLaw, HenckyQuadratic, MaterialParams, StVenantKirchhoff, h_of, make_law
from hyperdual.sampling import random_defgrad, random_rotation, random_unit_sym
from hyperdual.tensor import exp_sym, inner

SVK01 = StVenantKirchhoff(MaterialParams(lam=0.0, mu=1.0))
F_UNI = np.diag([2.0, 1.0, 1.0])


def rot_z(deg):
    t = np.radians(deg)
    return np.array([[np.cos(t), -np.sin(t), 0], [np.sin(t), np.cos(t), 0], [0, 0, 1]])


def rel(X, Y):
    return np.linalg.norm(X - Y) / max(np.linalg.norm(X), np.linalg.norm(Y), 1.0)


def test_pushforward_at_identity_is_piola_stress():
    p = 0.7
    law = FunctionLaw(lambda C: p * np.trace(C), lambda C: p * np.eye(3))
    assert np.allclose(sigma_pushforward(law, np.eye(3)), p * np.eye(3), rtol=0, atol=1e-15)


@pytest.mark.parametrize("name", ["svk", "neo-hookean", "hencky"])
def test_stress_free_under_rotation(name):
    law = make_law(name)
    R = rot_z(40)
    for fn in (sigma_pushforward, sigma_hB_B, sigma_from_log_potential_fd, sigma_from_log_potential_chain):
        assert np.max(np.abs(fn(law, R))) <= 1e-9


def test_uniaxial_svk_value():
    expected = np.diag([6.0, 0.0, 0.0])
    assert np.allclose(sigma_pushforward(SVK01, F_UNI), expected, rtol=0, atol=1e-14)
    assert rel(sigma_from_log_potential_fd(SVK01, F_UNI), expected) <= 1e-6
    assert rel(sigma_from_log_potential_chain(SVK01, F_UNI), expected) <= 1e-12


def test_hencky_volumetric_three_way():
    law = HenckyQuadratic(MaterialParams.from_kappa(mu=1.0, kappa=1.0))
    stretch = 1.3
    F = stretch * np.eye(3)
    # ht = ln(stretch) I, dev part zero: sigma/rho = (kappa/2) * 3 ln(stretch) I
    expected = 1.5 * np.log(stretch) * np.eye(3)
    push = sigma_pushforward(law, F)
    assert rel(push, expected) <= 1e-12
    assert rel(sigma_from_log_potential_fd(law, F), push) <= 1e-6
    assert rel(sigma_from_log_potential_chain(law, F), push) <= 1e-12


def test_chain_collapses_for_diagonal_F(rng, law):
    for _ in range(10):
        F = np.diag(rng.uniform(0.7, 1.5, 3))
        B = left_cauchy_green(F)
        assert rel(sigma_from_log_potential_chain(law, F), h_of(law, B) @ B) <= 1e-12


def test_fd_gradient_pairing_convention(rng):
    # for f(X) = inner(G, X), the reassembled gradient is G itself
    G = random_unit_sym(rng)
    grad = fd_gradient(lambda X: inner(G, X), np.zeros((3, 3)), 1e-3)
    assert np.allclose(grad, G, atol=1e-12)


def test_random_sweep_agrees(rng, law):
    for _ in range(40):
        F = random_defgrad(rng)
        push = sigma_pushforward(law, F)
        assert rel(sigma_from_log_potential_chain(law, F), push) <= 1e-9
        assert rel(sigma_hB_B(law, F), push) <= 1e-9
        assert rel(sigma_from_log_potential_fd(law, F), push) <= 1e-6


def test_verify_identity_passes(law):
    report = verify_theorem(law, np.eye(3))
    assert report.passed
    for name in PATHS:
        assert np.max(np.abs(report.path(name))) <= 1e-9
    for key, r in report.residuals.items():
        assert r <= (1e-9 if "grad_fd" in key else 0.0) + 1e-12


def test_report_json_fields(rng):
    report = verify_theorem(make_law("neo-hookean"), random_defgrad(rng))
    d = json.loads(json.dumps(report.to_json_dict()))
    for key in ("F", "sigma_pushforward", "sigma_hB_B", "sigma_grad_fd", "sigma_grad_chain", "residuals", "pass"):
        assert key in d
    assert d["pass"] is True
    assert len(d["residuals"]) == 6
    assert d["densities"]["rho"] == pytest.approx(1.0 / d["mass_ratio"])


def test_negative_control_fails_without_raising(rng):
    report = verify_theorem(BrokenAnisotropic(), random_defgrad(rng))
    assert not report.passed
    assert "sigma_hB_B" in report.errors
    assert report.residuals["sigma_pushforward/sigma_grad_chain"] > 1e-3


def test_absolute_cauchy():
    law1 = StVenantKirchhoff(MaterialParams(lam=0.0, mu=1.0, rho0=1.0))
    law2 = StVenantKirchhoff(MaterialParams(lam=0.0, mu=1.0, rho0=2.0))
    F = random_defgrad(np.random.default_rng(3))
    assert np.array_equal(absolute_cauchy(law1, np.eye(3)), sigma_pushforward(law1, np.eye(3)))
    assert np.allclose(absolute_cauchy(law2, F_UNI), sigma_pushforward(law2, F_UNI))
    assert np.allclose(absolute_cauchy(law1, F_UNI), np.diag([3.0, 0, 0]))
    assert np.allclose(absolute_cauchy(law1, F), sigma_pushforward(law1, F) / np.linalg.det(F))


def test_objectivity(rng, law):
    for _ in range(10):
        assert report_objectivity_residual(law, random_defgrad(rng), random_rotation(rng)) <= 1e-9


def test_work_pairing_remainder_is_second_order(rng, law):
    F = random_defgrad(rng)
    H = log_strain(F)
    sigma = sigma_pushforward(law, F)
    D = random_unit_sym(rng)
    base = law.alpha(exp_sym(H))
    rem = [abs(law.alpha(exp_sym(H + t * D)) - base - t * inner(sigma, D)) for t in (1e-3, 1e-4, 1e-5)]
    assert 30 < rem[0] / rem[1] < 300
    assert rem[2] < rem[1]
