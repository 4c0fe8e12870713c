import cmath
import json
import math

import numpy as np
import pytest

from harmonia.algebra import BivariateLaurentExpr, LogLaurentExpr
from harmonia.errors import NonzeroMeanError, QuadratureConvergenceError
from harmonia.geometry import PathSpec
from harmonia.numerics import (
    QuadratureConfig,
    TrigPolynomial,
    fd_laplacian,
    fourier_neumann_oracle,
    integrate_path,
    run_verification_suite,
)


def test_integrate_reciprocal_segment():
    got = integrate_path(lambda t: 1.0 / t, PathSpec.segment(1.0 + 0j, 2.0 + 0j))
    assert abs(got - math.log(2.0)) < 1e-12


def test_integrate_radial_against_antiderivative():
    # integrand (z^2/2)/z has exact primitive z^2/4
    e = LogLaurentExpr.monomial(0.5, 2)
    got = integrate_path(lambda t: e.eval(t) / t, PathSpec.radial_ray(0.0, 0.5, 1.0))
    assert abs(got - 0.1875) < 1e-12


def test_integrate_constant_segment():
    a, b = 0.3 + 0.1j, 1.2 - 0.7j
    got = integrate_path(lambda t: 2.5 + 0j, PathSpec.segment(a, b))
    assert abs(got - 2.5 * (b - a)) < 1e-13


def test_integrate_nonconvergence():
    cfg = QuadratureConfig(abs_tol=1e-16, max_depth=1)
    with pytest.raises(QuadratureConvergenceError):
        integrate_path(lambda t: 1.0 / t, PathSpec.segment(0.01 + 0j, 2.0 + 0j, 1), cfg)


def test_quadrature_config_validation():
    with pytest.raises(ValueError):
        QuadratureConfig(abs_tol=0.0)
    with pytest.raises(ValueError):
        QuadratureConfig(max_depth=0)


def test_quadrature_vs_exact_property():
    rng = np.random.default_rng(31)
    for _ in range(50):
        e = LogLaurentExpr(
            [
                (complex(rng.uniform(-1, 1), rng.uniform(-1, 1)),
                 int(rng.integers(-4, 5)), int(rng.integers(0, 3)))
                for _ in range(int(rng.integers(1, 7)))
            ]
        )
        th = float(rng.uniform(-2.5, 2.5))
        r0, r1 = sorted(rng.uniform(0.5, 2.0, size=2))
        if r1 - r0 < 1e-3:
            r1 = r0 + 0.5
        numeric = integrate_path(lambda t: e.eval(t) / t, PathSpec.radial_ray(th, r0, r1))
        prim = e.antiderivative_over_arg().restrict_to_ray(th)
        exact = prim.eval(complex(r1)) - prim.eval(complex(r0))
        assert abs(numeric - exact) < 1e-9


def test_fd_laplacian_examples():
    saddle = lambda x, y: x * x - y * y
    assert abs(fd_laplacian(saddle, 0.7, -0.3, 1e-4)) < 1e-6
    logr = lambda x, y: 0.5 * math.log(x * x + y * y)
    assert abs(fd_laplacian(logr, 2.0, 0.0, 1e-4)) < 1e-5
    # non-harmonic control
    assert abs(fd_laplacian(lambda x, y: x * x, 0.3, 0.8, 1e-4) - 2.0) < 1e-6
    with pytest.raises(ValueError):
        fd_laplacian(saddle, 0.0, 0.0, 0.0)


def test_fd_laplacian_scaling():
    logr = lambda x, y: 0.5 * math.log(x * x + y * y)
    for h in (1e-3, 1e-4):
        assert abs(fd_laplacian(logr, 2.0, 0.0, h)) < 1e-4


def test_fourier_oracle_examples():
    cos2 = TrigPolynomial((0.0, 0.0, 1.0), (0.0,))
    for r, th in ((0.5, 0.3), (1.0, -1.2)):
        assert abs(fourier_neumann_oracle(cos2, r, th) - 0.5 * r * r * math.cos(2 * th)) < 1e-14
    cos1 = TrigPolynomial((0.0, 1.0), (0.0,))
    assert abs(fourier_neumann_oracle(cos1, 0.7, 0.4) - 0.7 * math.cos(0.4)) < 1e-14
    zero = TrigPolynomial((0.0,), (0.0,))
    assert fourier_neumann_oracle(zero, 0.5, 1.0) == 0.0


def test_fourier_oracle_rejects_nonzero_mean():
    with pytest.raises(NonzeroMeanError):
        fourier_neumann_oracle(TrigPolynomial((1.0, 1.0), (0.0,)), 0.5, 0.0)


def test_trig_polynomial_round_trips():
    trig = TrigPolynomial((0.0, 0.5, -0.25, 0.1), (0.0, -0.3, 0.7, 0.0))
    phi = trig.to_bivariate()
    back = TrigPolynomial.from_bivariate_circle_trace(phi)
    assert np.allclose(back.cos, trig.cos) and np.allclose(back.sin, trig.sin)
    # the bivariate trace and the pair trace agree with the boundary values
    pair = trig.to_harmonic_pair()
    for th in np.linspace(-3.0, 3.0, 7):
        z = cmath.exp(1j * th)
        expected = trig.boundary_value(float(th))
        assert abs(phi.eval(z, z.conjugate()) - expected) < 1e-12
        assert abs(pair.part_z.eval(z) + pair.part_zeta.eval(z.conjugate()) - expected) < 1e-12
    assert abs(trig.dirichlet_value(1.0, 0.9) - trig.boundary_value(0.9)) < 1e-13


def test_trig_polynomial_validation():
    with pytest.raises(ValueError):
        TrigPolynomial((0.0,), (1.0,))
    mixed = BivariateLaurentExpr([(1j, 1, 0)])
    with pytest.raises(ValueError):
        TrigPolynomial.from_bivariate_circle_trace(mixed)


def test_suite_full_pass_and_failures_listing():
    report = run_verification_suite()
    assert report.all_passed
    assert report.failures == ()
    assert len(report.checks) >= 25


def test_suite_negative_control():
    report = run_verification_suite(
        targets=["boundary_recovery_dirichlet"], corrupt="dtn_sign_flip"
    )
    assert not report.all_passed
    assert report.checks[0].max_residual > 1e-2


def test_suite_empty_selection_passes():
    report = run_verification_suite(targets=[])
    assert report.all_passed and report.checks == ()


def test_suite_unknown_target_rejected():
    with pytest.raises(ValueError):
        run_verification_suite(targets=["nonexistent_check"])


def test_suite_tag_selection():
    report = run_verification_suite(targets=["algebra"])
    assert report.all_passed
    assert {c.tag for c in report.checks} == {"algebra"}


def test_suite_deterministic_json():
    a = run_verification_suite(targets=["algebra", "geometry"]).to_json()
    b = run_verification_suite(targets=["algebra", "geometry"]).to_json()
    assert a == b
    payload = json.loads(a)
    assert payload["seed"] == 1729
    assert all(c["passed"] for c in payload["checks"])


def test_suite_summary_table_shape():
    report = run_verification_suite(targets=["algebra"])
    table = report.summary_table()
    assert "PASS" in table and "antiderivative_round_trip" in table
