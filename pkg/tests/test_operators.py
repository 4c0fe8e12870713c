import cmath
import math

import numpy as np
import pytest

from harmonia.algebra import BivariateLaurentExpr, LogLaurentExpr
from harmonia.errors import DomainError, NonzeroMeanError, ResonanceError
from harmonia.geometry import BiPoint, PathSpec, SchwarzMap
from harmonia.harmonic import (
    HarmonicPair,
    RobinParams,
    eval_pair,
    eval_real,
    field_scale,
    radial_derivative,
    robin_trace_circle,
)
from harmonia.numerics import TrigPolynomial, fd_laplacian, fourier_neumann_oracle
from harmonia.operators import (
    BasePointNormalization,
    dirichlet_from_robin_pair,
    neumann_from_dirichlet_disk,
    neumann_from_dirichlet_pair,
    neumann_from_dirichlet_schwarz,
    neumann_from_robin_pair,
    solve_robin_analytic,
)

CONSTANT = HarmonicPair.constant(1.0)
LOG_RADIAL = HarmonicPair.symmetric(LogLaurentExpr.monomial(0.5, 0, 1))
SADDLE = HarmonicPair.symmetric(LogLaurentExpr.monomial(0.5, 2))
LINEAR = HarmonicPair.symmetric(LogLaurentExpr.monomial(0.5, 1))

GRID = [(r, th) for r in np.linspace(0.6, 1.4, 10) for th in np.linspace(-2.0, 2.0, 10)]


def pinned(field_fn):
    base = field_fn(1.0, 0.0)
    return lambda r, th: field_fn(r, th) - base


def max_grid_residual(computed, expected_fn):
    got = pinned(lambda r, th: eval_real(computed, r * math.cos(th), r * math.sin(th)))
    want = pinned(expected_fn)
    return max(abs(got(r, th) - want(r, th)) for r, th in GRID)


def symmetric_pair(rng, n_terms=4, kmax=3, allow_log=True):
    terms = [
        (complex(rng.uniform(-1, 1), rng.uniform(-1, 1)),
         int(rng.integers(-kmax, kmax + 1)),
         int(rng.integers(0, 3)) if allow_log else 0)
        for _ in range(n_terms)
    ]
    return HarmonicPair.symmetric(LogLaurentExpr(terms))


# -- Dirichlet -> Neumann, exact pair form ------------------------------------


def test_dtn_constant_trace_gives_log_field():
    v = neumann_from_dirichlet_pair(HarmonicPair.constant(3.0))
    assert max_grid_residual(v, lambda r, th: 3.0 * math.log(r)) < 1e-10


def test_dtn_log_trace_gives_squared_log_field():
    # exact integration gives (1/2)(log^2 r - theta^2); see the ledger for
    # the half-scale variant that circulates for this case
    v = neumann_from_dirichlet_pair(LOG_RADIAL)
    assert max_grid_residual(v, lambda r, th: 0.5 * (math.log(r) ** 2 - th * th)) < 1e-10


def test_dtn_saddle_trace():
    v = neumann_from_dirichlet_pair(SADDLE)
    assert (
        max_grid_residual(
            v, lambda r, th: 0.5 * (r * r) * math.cos(2 * th)
        )
        < 1e-10
    )


def test_dtn_linear_trace():
    v = neumann_from_dirichlet_pair(LINEAR)
    assert max_grid_residual(v, lambda r, th: r * math.cos(th)) < 1e-10


def test_dtn_base_point_normalization():
    norm = BasePointNormalization(z0=cmath.exp(0.5j), value_at_base=2.0)
    v = neumann_from_dirichlet_pair(SADDLE, norm)
    p = BiPoint.from_polar(1.0, 0.5)
    assert abs(eval_pair(v, p) - 2.0) < 1e-12
    with pytest.raises(DomainError):
        neumann_from_dirichlet_pair(SADDLE, BasePointNormalization(z0=2.0 + 0j))


def test_dtn_boundary_recovery_property():
    rng = np.random.default_rng(41)
    for _ in range(10):
        u = symmetric_pair(rng, n_terms=8)
        v = neumann_from_dirichlet_pair(u)
        for th in np.linspace(-2.0, 2.0, 32):
            trace = eval_pair(u, BiPoint.from_polar(1.0, float(th)))
            assert abs(radial_derivative(v, 1.0, float(th)) - trace) < 1e-10


def test_dtn_output_is_harmonic():
    rng = np.random.default_rng(42)
    u = symmetric_pair(rng)
    v = neumann_from_dirichlet_pair(u)
    field = lambda x, y: eval_real(v, x, y)
    for r, th in ((0.8, 0.3), (1.2, -1.5), (1.0, 1.9)):
        x, y = r * math.cos(th), r * math.sin(th)
        assert abs(fd_laplacian(field, x, y, 1e-4)) / field_scale(v, x, y) < 1e-5


# -- Robin -> Neumann ----------------------------------------------------------


@pytest.mark.parametrize("a,b", [(1.0, 1.0), (2.0, -1.0), (0.5, 3.0)])
def test_rtn_log_solution(a, b):
    v = neumann_from_robin_pair(LOG_RADIAL, RobinParams(a, b))
    expected = lambda r, th: 0.5 * b * math.log(r) + 0.25 * a * (math.log(r) ** 2 - th * th)
    assert max_grid_residual(v, expected) < 1e-10


def test_rtn_zero_solution():
    v = neumann_from_robin_pair(HarmonicPair.zero(), RobinParams(1.0, 2.0))
    vals = [eval_real(v, r * math.cos(th), r * math.sin(th)) for r, th in GRID[:10]]
    assert max(abs(x - vals[0]) for x in vals) < 1e-14


def test_rtn_pure_scaling_when_a_zero():
    b = 2.0
    v = neumann_from_robin_pair(SADDLE, RobinParams(0.0, b))
    assert max_grid_residual(v, lambda r, th: 0.5 * b * r * r * math.cos(2 * th)) < 1e-10
    # boundary-condition oracle: dv/dr at r=1 equals half the Robin trace
    for th in (-1.0, 0.4):
        assert abs(radial_derivative(v, 1.0, th) - b * math.cos(2 * th)) < 1e-12


def test_rtn_boundary_recovery_property():
    rng = np.random.default_rng(43)
    for a, b in ((1.0, 1.0), (2.0, -1.0), (0.5, 3.0)):
        params = RobinParams(a, b)
        for _ in range(4):
            w = symmetric_pair(rng, n_terms=6)
            v = neumann_from_robin_pair(w, params)
            for th in np.linspace(-2.0, 2.0, 32):
                target = 0.5 * robin_trace_circle(w, params, float(th))
                assert abs(radial_derivative(v, 1.0, float(th)) - target) < 1e-10


# -- Dirichlet from Robin -------------------------------------------------------


def test_dfr_log_solution():
    a, b = 1.3, -0.6
    u = dirichlet_from_robin_pair(LOG_RADIAL, RobinParams(a, b))
    for r, th in ((0.7, 0.2), (1.2, -1.0)):
        expected = 0.5 * a * math.log(r) + 0.5 * b
        assert abs(eval_real(u, r * math.cos(th), r * math.sin(th)) - expected) < 1e-13


def test_dfr_saddle_solution():
    a, b = 0.8, 1.1
    u = dirichlet_from_robin_pair(SADDLE, RobinParams(a, b))
    expected = HarmonicPair.symmetric(LogLaurentExpr.monomial((a + 2 * b) / 4.0, 2))
    assert (u.part_z - expected.part_z).is_zero()
    assert (u.part_zeta - expected.part_zeta).is_zero()


def test_dfr_zero():
    u = dirichlet_from_robin_pair(HarmonicPair.zero(), RobinParams(2.0, 1.0))
    assert u.part_z.is_zero() and u.part_zeta.is_zero()


def test_dfr_trace_is_half_robin_trace():
    rng = np.random.default_rng(44)
    params = RobinParams(1.7, 0.9)
    for _ in range(5):
        w = symmetric_pair(rng)
        u = dirichlet_from_robin_pair(w, params)
        for th in (-1.2, 0.0, 0.8):
            lhs = eval_pair(u, BiPoint.from_polar(1.0, th))
            assert abs(lhs - 0.5 * robin_trace_circle(w, params, th)) < 1e-11


def test_corollary_chain_is_constant_field():
    rng = np.random.default_rng(45)
    for _ in range(20):
        params = RobinParams(float(rng.uniform(-2, 2)), float(rng.choice([1.0, -1.0, 3.0])))
        w = symmetric_pair(rng, n_terms=5)
        chain = neumann_from_dirichlet_pair(dirichlet_from_robin_pair(w, params))
        direct = neumann_from_robin_pair(w, params)
        diffs = [
            eval_real(chain, r * math.cos(th), r * math.sin(th))
            - eval_real(direct, r * math.cos(th), r * math.sin(th))
            for r in np.linspace(0.7, 1.3, 5)
            for th in np.linspace(-1.8, 1.8, 5)
        ]
        assert float(np.var(diffs)) < 1e-18


# -- termwise Robin ODE ----------------------------------------------------------


def ode_residual(h, f, g, params):
    zmul = LogLaurentExpr.monomial(1.0, 1)
    rhs = zmul * f.differentiate() + g
    return params.a * h + params.b * (zmul * h.differentiate()) - rhs


def test_solve_robin_constant_rhs():
    f = LogLaurentExpr.zero()
    g = LogLaurentExpr.constant(3.0)
    h = solve_robin_analytic(f, g, RobinParams(1.5, 1.0))
    assert (h - LogLaurentExpr.constant(2.0)).is_zero()


def test_solve_robin_resonant_term():
    # a + b k = 0 at k = 2: the solution picks up a log factor c/b
    params = RobinParams(-2.0, 1.0)
    g = LogLaurentExpr.monomial(3.0, 2)
    h = solve_robin_analytic(LogLaurentExpr.zero(), g, params)
    assert (h - LogLaurentExpr.monomial(3.0, 2, 1)).is_zero()
    assert ode_residual(h, LogLaurentExpr.zero(), g, params).is_zero()


def test_solve_robin_quadratic_inputs():
    # f = g = z^2/2 gives rhs = (3/2) z^2, so z h' = (3/2) z^2 at a=0, b=1
    f = g = LogLaurentExpr.monomial(0.5, 2)
    params = RobinParams(0.0, 1.0)
    h = solve_robin_analytic(f, g, params)
    assert (h - LogLaurentExpr.monomial(0.75, 2)).is_zero()
    assert ode_residual(h, f, g, params).is_zero()


def test_solve_robin_identity_property():
    rng = np.random.default_rng(46)
    for a, b in ((1.0, 1.0), (2.0, -1.0), (0.5, 3.0)):
        params = RobinParams(a, b)
        for _ in range(10):
            f = 0.5 * LogLaurentExpr(
                [
                    (complex(rng.uniform(-1, 1)), int(rng.integers(-4, 5)), int(rng.integers(0, 2)))
                    for _ in range(3)
                ]
            )
            g = 0.5 * LogLaurentExpr(
                [
                    (complex(rng.uniform(-1, 1)), int(rng.integers(-4, 5)), int(rng.integers(0, 2)))
                    for _ in range(3)
                ]
            )
            assert ode_residual(solve_robin_analytic(f, g, params), f, g, params).is_zero()


def test_solve_robin_log_squared_rhs_relative():
    # (a, b) = (0.5, 3) at k = 0 amplifies rounding as (b/s)^2; assert the
    # identity holds relative to the amplified coefficients
    params = RobinParams(0.5, 3.0)
    g = LogLaurentExpr.monomial(1.0, 0, 2)
    h = solve_robin_analytic(LogLaurentExpr.zero(), g, params)
    residual = ode_residual(h, LogLaurentExpr.zero(), g, params)
    amplitude = max(abs(t.coeff) for t in h.terms)
    worst = max((abs(t.coeff) for t in residual.terms), default=0.0)
    assert worst <= 1e-14 * max(1.0, amplitude)


def test_solve_robin_near_resonance_rejected():
    params = RobinParams(1.0 + 1e-13, -1.0)
    with pytest.raises(ResonanceError):
        solve_robin_analytic(LogLaurentExpr.zero(), LogLaurentExpr.monomial(1.0, 1), params)


# -- disk operator ---------------------------------------------------------------


def test_disk_operator_cos2():
    phi = BivariateLaurentExpr([(0.5, 2, 0), (0.5, 0, 2)])
    for r, th in ((0.3, 0.0), (0.9, 1.4), (1.0, -0.8)):
        z = r * cmath.exp(1j * th)
        assert abs(neumann_from_dirichlet_disk(phi, z) - 0.5 * r * r * math.cos(2 * th)) < 1e-10


def test_disk_operator_cos1():
    phi = BivariateLaurentExpr([(0.5, 1, 0), (0.5, 0, 1)])
    z = 0.6 * cmath.exp(0.5j)
    assert abs(neumann_from_dirichlet_disk(phi, z) - 0.6 * math.cos(0.5)) < 1e-10


def test_disk_operator_zero_and_origin():
    assert neumann_from_dirichlet_disk(BivariateLaurentExpr.zero(), 0.5 + 0.2j) == 0.0
    phi = BivariateLaurentExpr([(0.5, 2, 0), (0.5, 0, 2)])
    assert neumann_from_dirichlet_disk(phi, 0j) == 0.0


def test_disk_operator_rejects_nonzero_mean():
    with pytest.raises(NonzeroMeanError):
        neumann_from_dirichlet_disk(BivariateLaurentExpr.constant(1.0), 0.5 + 0j)
    # zeta = 1/z on the circle: z*zeta has a hidden constant trace
    with pytest.raises(NonzeroMeanError):
        neumann_from_dirichlet_disk(BivariateLaurentExpr.monomial(1.0, 1, 1), 0.5 + 0j)


def test_disk_operator_rejects_outside_disk():
    phi = BivariateLaurentExpr([(0.5, 1, 0), (0.5, 0, 1)])
    with pytest.raises(DomainError):
        neumann_from_dirichlet_disk(phi, 1.5 + 0j)


def test_disk_operator_matches_fourier_oracle():
    rng = np.random.default_rng(47)
    for _ in range(3):
        cos = (0.0,) + tuple(rng.uniform(-1, 1, size=6))
        sin = (0.0,) + tuple(rng.uniform(-1, 1, size=6))
        trig = TrigPolynomial(cos, sin)
        phi = trig.to_bivariate()
        for _ in range(17):
            r = float(rng.uniform(0.0, 1.0))
            th = float(rng.uniform(-math.pi + 0.1, math.pi - 0.1))
            z = r * cmath.exp(1j * th)
            assert abs(
                neumann_from_dirichlet_disk(phi, z) - fourier_neumann_oracle(trig, r, th)
            ) < 1e-8


# -- Schwarz-arc generalization ----------------------------------------------------


def test_arc_operator_reduces_to_circle():
    rng = np.random.default_rng(48)
    smap = SchwarzMap.unit_circle()
    u = symmetric_pair(rng, allow_log=False)
    exact = neumann_from_dirichlet_pair(u)
    path = PathSpec.segment(0.75 + 0j, 1.0 + 0j)
    field = neumann_from_dirichlet_schwarz(u, smap, path, path)
    for _ in range(20):
        p = BiPoint.from_polar(float(rng.uniform(0.6, 0.95)), float(rng.uniform(-2, 2)))
        assert abs(field.eval(p) - eval_real(exact, p.z.real, p.z.imag)) < 1e-9


def test_arc_operator_zero_input_is_constant():
    smap = SchwarzMap.unit_circle()
    path = PathSpec.segment(0.8 + 0j, 1.0 + 0j)
    norm = BasePointNormalization(value_at_base=1.5)
    field = neumann_from_dirichlet_schwarz(HarmonicPair.zero(), smap, path, path, norm)
    for p in (BiPoint.from_polar(0.7, 0.5), BiPoint.from_polar(0.9, -1.2)):
        assert abs(field.eval(p) - 1.5) < 1e-12


def test_arc_operator_scaled_circle_constant_data():
    # constant data C on |z| = 2 gives v = 2 C log(r/2) + const, whose
    # outward normal derivative at the boundary is C
    smap = SchwarzMap.circle(0j, 2.0)
    C = 1.3
    path = PathSpec.segment(1.5 + 0j, 2.0 + 0j)
    field = neumann_from_dirichlet_schwarz(HarmonicPair.constant(C), smap, path, path)
    for r, th in ((1.5, 0.4), (1.8, -0.9)):
        assert abs(field.eval(BiPoint.from_polar(r, th)) - 2.0 * C * math.log(r / 2.0)) < 1e-9
    h = 1e-5
    fd = (field.eval_real(2.0 + h, 0.0) - field.eval_real(2.0 - h, 0.0)) / (2 * h)
    assert abs(fd - C) < 1e-6


def test_arc_operator_validates_paths_and_base():
    smap = SchwarzMap.unit_circle()
    good = PathSpec.segment(0.8 + 0j, 1.0 + 0j)
    stray = PathSpec.segment(0.8 + 0j, 0.9 + 0j)
    with pytest.raises(ValueError):
        neumann_from_dirichlet_schwarz(CONSTANT, smap, stray, good)
    with pytest.raises(DomainError):
        neumann_from_dirichlet_schwarz(
            CONSTANT, smap, good, good, BasePointNormalization(z0=1.5 + 0j)
        )
