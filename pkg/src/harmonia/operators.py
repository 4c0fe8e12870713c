"""Boundary-condition conversion operators.

All operators act on complexified harmonic pairs near the unit circle
(or, for the arc generalization, near the carrier of a Schwarz map) and
return new pairs or field evaluators:

* Dirichlet -> Neumann, exact pair form: the solution with Neumann data
  equal to the Dirichlet trace of the input is obtained termwise from the
  primitive of u(tau)/tau along radial integrals to a base point.
* Dirichlet -> Neumann, disk form: an independent second route composing
  a radial quadrature with the Fourier disk solver.
* Robin -> Neumann: the harmonic field whose outward normal derivative is
  half the Robin data of the input.
* Dirichlet from Robin: the algebraic combination (a/2) w + (b r/2) dw/dr.
* A termwise solver for the first-order ODE a h + b z h' = z f' + g.
* The Schwarz-map generalization with contour quadrature and validated
  square-root branches.

Every operator fixes its free additive constant by a base-point
normalization (default: value 0 at z = 1); golden comparisons are made
modulo such a constant.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .algebra import LogLaurentExpr
from .errors import (
    DomainError,
    NonzeroMeanError,
    PoleError,
    ResonanceError,
)
from .geometry import (
    BiPoint,
    PathSpec,
    SchwarzMap,
    sqrt_inverse_schwarz_derivative,
    sqrt_schwarz_derivative,
)
from .harmonic import HarmonicPair, RobinParams
from .numerics import (
    QuadratureConfig,
    TrigPolynomial,
    adaptive_simpson,
    integrate_path,
)

__all__ = [
    "BasePointNormalization",
    "neumann_from_dirichlet_pair",
    "neumann_from_robin_pair",
    "dirichlet_from_robin_pair",
    "solve_robin_analytic",
    "neumann_from_dirichlet_disk",
    "neumann_from_dirichlet_schwarz",
    "ArcNeumannField",
]

_Z = LogLaurentExpr.monomial(1.0, 1)


@dataclass(frozen=True)
class BasePointNormalization:
    """Base point on the carrier curve and the field value pinned there."""

    z0: complex = 1.0 + 0j
    value_at_base: float = 0.0


def _require_unit_circle_base(norm: BasePointNormalization) -> complex:
    z0 = complex(norm.z0)
    if abs(abs(z0) - 1.0) > 1e-9:
        raise DomainError(f"base point {z0} is not on the unit circle")
    return z0


def _pin_constant(
    part_z: LogLaurentExpr,
    part_zeta: LogLaurentExpr,
    z0: complex,
    zeta0: complex,
    value_at_base: float,
) -> HarmonicPair:
    residual = value_at_base - (part_z.eval(z0) + part_zeta.eval(zeta0))
    half = LogLaurentExpr.constant(residual / 2.0, part_z.cut_angle)
    return HarmonicPair(part_z + half, part_zeta + half)


def neumann_from_dirichlet_pair(
    u: HarmonicPair, norm: BasePointNormalization | None = None
) -> HarmonicPair:
    """Exact Dirichlet-to-Neumann conversion on the unit circle.

    Integrating u(tau)/tau from z to the base point (and likewise in
    zeta) yields the harmonic pair v whose outward normal derivative on
    the circle equals the Dirichlet trace of u.  The result is pinned to
    ``value_at_base`` at the base point.
    """
    norm = norm or BasePointNormalization()
    z0 = _require_unit_circle_base(norm)
    zeta0 = 1.0 / z0
    part_z = u.part_z.antiderivative_over_arg()
    part_zeta = u.part_zeta.antiderivative_over_arg()
    return _pin_constant(part_z, part_zeta, z0, zeta0, norm.value_at_base)


def neumann_from_robin_pair(
    w: HarmonicPair, params: RobinParams, norm: BasePointNormalization | None = None
) -> HarmonicPair:
    """Robin-to-Neumann conversion on the unit circle.

    For w satisfying a*w + b*dw/dn = data on the circle, returns the
    harmonic v = const + (b/2) w + (a/2) * (primitives of w/tau), whose
    outward normal derivative on the circle is data/2.
    """
    norm = norm or BasePointNormalization()
    z0 = _require_unit_circle_base(norm)
    zeta0 = 1.0 / z0
    half_b = 0.5 * params.b
    half_a = 0.5 * params.a
    part_z = w.part_z * half_b + w.part_z.antiderivative_over_arg() * half_a
    part_zeta = w.part_zeta * half_b + w.part_zeta.antiderivative_over_arg() * half_a
    return _pin_constant(part_z, part_zeta, z0, zeta0, norm.value_at_base)


def dirichlet_from_robin_pair(w: HarmonicPair, params: RobinParams) -> HarmonicPair:
    """The pair u = (a/2) w + (b r / 2) dw/dr, realized termwise.

    On the circle its Dirichlet trace is half the Robin trace of w; no
    base-point constant is involved because the combination is algebraic.
    """
    half_a = 0.5 * params.a
    half_b = 0.5 * params.b
    part_z = w.part_z * half_a + (_Z * w.part_z.differentiate()) * half_b
    part_zeta = w.part_zeta * half_a + (_Z * w.part_zeta.differentiate()) * half_b
    return HarmonicPair(part_z, part_zeta)


_NEAR_RESONANCE = 1e-12


def solve_robin_analytic(
    f: LogLaurentExpr, g: LogLaurentExpr, params: RobinParams
) -> LogLaurentExpr:
    """Particular solution h of a h(z) + b z h'(z) = z f'(z) + g(z).

    Solved termwise: a right-hand term c z^k log^m with a + b k != 0 is
    matched by a descending-log ansatz at the same power; a resonant term
    (a + b k = 0) is matched by raising the log power once, with
    coefficient c / (b (m+1)).  The homogeneous solution, a non-integer
    power of z for general a/b, lies outside the log-Laurent algebra and
    is deliberately not added.
    """
    rhs = _Z * f.differentiate() + g
    acc: dict = {}
    for t in rhs.terms:
        s = params.a + params.b * t.power
        scale = max(1.0, abs(params.a), abs(params.b * t.power))
        if s == 0.0:
            key = (t.power, t.logpow + 1)
            acc[key] = acc.get(key, 0j) + t.coeff / (params.b * (t.logpow + 1))
            continue
        if abs(s) < _NEAR_RESONANCE * scale:
            raise ResonanceError(
                f"a + b*k = {s:.3g} at power {t.power} is too close to resonance "
                "to solve stably"
            )
        alpha = t.coeff / s
        key = (t.power, t.logpow)
        acc[key] = acc.get(key, 0j) + alpha
        for j in range(t.logpow - 1, -1, -1):
            alpha = -params.b * (j + 1) * alpha / s
            key = (t.power, j)
            acc[key] = acc.get(key, 0j) + alpha
    return LogLaurentExpr(acc, f.cut_angle)


def neumann_from_dirichlet_disk(
    phi, z: complex, quad: QuadratureConfig | None = None
) -> float:
    """Disk Neumann solution by radial quadrature of the Dirichlet solution.

    ``phi`` is boundary data as a bivariate Laurent expression whose circle
    trace must be real with zero mean (the solvability condition for disk
    Neumann data); the Dirichlet solution is supplied by the Fourier
    solver, and V(z) = integral over rho in [0,1] of U(rho z)/rho, so
    V(0) = 0.  An independent second route to the fields produced by
    :func:`neumann_from_dirichlet_pair`.
    """
    cfg = quad or QuadratureConfig()
    trig = TrigPolynomial.from_bivariate_circle_trace(phi)
    if abs(trig.mean) > 1e-10:
        raise NonzeroMeanError(
            f"boundary mean {trig.mean:.3g} must vanish for a disk Neumann problem"
        )
    z = complex(z)
    rz = abs(z)
    if rz > 1.0 + 1e-12:
        raise DomainError(f"|z| = {rz:.6g} lies outside the closed unit disk")
    if rz == 0.0:
        return 0.0
    theta = cmath.phase(z)
    a1 = trig.cos[1] if trig.degree >= 1 else 0.0
    b1 = trig.sin[1] if trig.degree >= 1 else 0.0
    limit0 = rz * (a1 * math.cos(theta) + b1 * math.sin(theta))

    def integrand(rho: float) -> float:
        if rho == 0.0:
            return limit0
        return trig.dirichlet_value(rho * rz, theta) / rho

    return float(complex(adaptive_simpson(integrand, 0.0, 1.0, cfg)).real)


def _segment_pole_distance(a: complex, b: complex, pole: complex) -> float:
    d = b - a
    denom = abs(d) ** 2
    if denom == 0:
        return abs(pole - a)
    t = ((pole - a) * d.conjugate()).real / denom
    t = min(1.0, max(0.0, t))
    return abs(pole - (a + t * d))


class ArcNeumannField:
    """Field evaluator returned by :func:`neumann_from_dirichlet_schwarz`.

    Evaluation integrates u1 sqrt(S') from z to the base point and u2
    sqrt(S~') from zeta to its image, each along a straight segment with a
    freshly continued, outward-validated square-root branch.  Paths must
    stay inside the region where the Schwarz map is single-valued; the
    evaluator only guards against running into the map poles and the log
    cut.
    """

    def __init__(
        self,
        u: HarmonicPair,
        smap: SchwarzMap,
        norm: BasePointNormalization,
        quad: QuadratureConfig,
        subdivision: int,
    ):
        self.u = u
        self.smap = smap
        self.z0 = complex(norm.z0)
        self.zeta0 = smap.value(self.z0)
        self.value_at_base = norm.value_at_base
        self.quad = quad
        self.subdivision = subdivision

    def _side_integral(self, start, end, expr, branch_maker, pole) -> complex:
        if abs(end - start) < 1e-13 * (1.0 + abs(end)):
            return 0j
        if pole is not None and _segment_pole_distance(start, end, pole) < 1e-9:
            raise PoleError(f"integration segment passes through the map pole {pole}")
        seg = PathSpec.segment(start, end, self.subdivision)
        branch = branch_maker(self.smap, seg)
        return integrate_path(lambda t: expr.eval(t) * branch(t), seg, self.quad)

    def eval(self, p: BiPoint) -> complex:
        iz = self._side_integral(
            p.z, self.z0, self.u.part_z, sqrt_schwarz_derivative, self.smap.pole
        )
        izeta = self._side_integral(
            p.zeta,
            self.zeta0,
            self.u.part_zeta,
            sqrt_inverse_schwarz_derivative,
            self.smap.inverse_pole,
        )
        return self.value_at_base + 1j * iz - 1j * izeta

    __call__ = eval

    def eval_real(self, x: float, y: float) -> float:
        z = complex(x, y)
        return self.eval(BiPoint(z, z.conjugate())).real


def neumann_from_dirichlet_schwarz(
    u: HarmonicPair,
    smap: SchwarzMap,
    path_z: PathSpec,
    path_zeta: PathSpec,
    norm: BasePointNormalization | None = None,
    quad: QuadratureConfig | None = None,
) -> ArcNeumannField:
    """Dirichlet-to-Neumann conversion across an arc of a Schwarz carrier.

    v(z, zeta) = const + i * int_z^{z0} u1 sqrt(S') - i * int_zeta^{zeta0}
    u2 sqrt(S~').  The supplied paths must terminate at the base point
    (respectively its image under S); they are used at construction to
    validate the square-root branches, which fails fast on sign or
    branch-point trouble.  For the unit circle the field coincides with
    :func:`neumann_from_dirichlet_pair`.
    """
    if norm is None:
        norm = BasePointNormalization(z0=smap.default_base_point())
    z0 = complex(norm.z0)
    if smap.on_curve_residual(z0) > 1e-8 * (1.0 + abs(z0)):
        raise DomainError(f"base point {z0} does not lie on the carrier curve")
    zeta0 = smap.value(z0)
    if abs(path_z.endpoints[1] - z0) > 1e-9 * (1.0 + abs(z0)):
        raise ValueError("path_z must terminate at the base point")
    if abs(path_zeta.endpoints[1] - zeta0) > 1e-9 * (1.0 + abs(zeta0)):
        raise ValueError("path_zeta must terminate at the image of the base point")
    # fail fast: validate branch continuation along the declared paths
    sqrt_schwarz_derivative(smap, path_z)
    sqrt_inverse_schwarz_derivative(smap, path_zeta)
    return ArcNeumannField(
        u,
        smap,
        norm,
        quad or QuadratureConfig(),
        max(path_z.subdivision, path_zeta.subdivision),
    )
