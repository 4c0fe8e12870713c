"""Reflection formulas for harmonic functions across circular and Schwarz arcs.

Each formula expresses the value of a solution at the point reflected
across the carrier curve through its values on one side plus a
data-dependent correction:

* Dirichlet data: the four-point identity on the complexified curve,
  u(reflected) = phi(S~(zeta), zeta) + phi(z, S(z)) - u(z, zeta).
* Neumann data on the unit circle: v(reflected) = v(p) minus the radial
  integral of the data restricted to the complexified circle (computed
  exactly in the log-Laurent algebra).
* Robin data on the unit circle: adds the self-referential radial
  integral of w, also exact (rho -> 1/rho keeps the algebra closed).
* Neumann data on a general Schwarz arc: the correction is a contour
  integral of phi(tau, S(tau)) sqrt(S'(tau)) evaluated by adaptive
  quadrature with a validated square-root branch.

The circle corrections are exact; numeric quadrature is available as a
shadow oracle behind ``verify_numeric``.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from typing import Callable, Union

from .algebra import BivariateLaurentExpr, LogLaurentExpr
from .errors import DomainError, HarmoniaError, PoleError
from .geometry import BiPoint, PathSpec, SchwarzMap, sqrt_schwarz_derivative
from .harmonic import HarmonicPair, RobinParams, eval_pair
from .numerics import QuadratureConfig, integrate_path

__all__ = [
    "ReflectionResult",
    "reflect_dirichlet_study",
    "reflect_neumann_circle",
    "reflect_robin_circle",
    "reflect_neumann_schwarz",
]

_SHADOW_TOL = 1e-9


@dataclass(frozen=True)
class ReflectionResult:
    """Value of a continuation formula at the reflected point.

    ``correction`` is the data-dependent integral term of the formula
    (for the Dirichlet identity, the sum of the two boundary-data
    evaluations); it vanishes on the complexified curve for the three
    integral formulas.
    """

    point: BiPoint
    reflected_point: BiPoint
    value: complex
    correction: complex
    formula: str

    def to_json(self) -> dict:
        def c2j(w: complex) -> dict:
            return {"re": w.real, "im": w.imag}

        return {
            "formula": self.formula,
            "point": {"z": c2j(self.point.z), "zeta": c2j(self.point.zeta)},
            "reflected": {
                "z": c2j(self.reflected_point.z),
                "zeta": c2j(self.reflected_point.zeta),
            },
            "value": c2j(self.value),
            "correction": c2j(self.correction),
        }


def reflect_dirichlet_study(
    u: HarmonicPair, phi: BivariateLaurentExpr, smap: SchwarzMap, p: BiPoint
) -> ReflectionResult:
    """Continuation across the curve for a solution with Dirichlet data phi.

    Only the right-hand side of the four-point identity is evaluated;
    u is never sampled beyond the original side.
    """
    zr = smap.inverse_value(p.zeta)
    zetar = smap.value(p.z)
    data = phi.eval(zr, p.zeta) + phi.eval(p.z, zetar)
    value = data - eval_pair(u, p)
    return ReflectionResult(
        point=p,
        reflected_point=BiPoint(zr, zetar),
        value=value,
        correction=data,
        formula="dirichlet",
    )


def _ray_coordinates(p: BiPoint) -> tuple:
    r = abs(p.z)
    if r == 0:
        raise DomainError("reflection across the unit circle is singular at the origin")
    theta = cmath.phase(p.z)
    if abs(p.zeta - r * cmath.exp(-1j * theta)) > 1e-9 * (1.0 + r):
        raise DomainError(
            "circle reflection expects a real-slice point (r e^{i theta}, r e^{-i theta})"
        )
    return r, theta


def _circle_data_primitive(phi: BivariateLaurentExpr, theta: float, cut_angle: float) -> LogLaurentExpr:
    # restriction to the complexified circle is log-free, so the ray
    # restriction never trips the cut guard; the primitive may carry logs
    # but is only evaluated at positive radii
    return phi.restrict_to_circle(cut_angle).restrict_to_ray(theta).antiderivative_over_arg()


def _numeric_data_integral(
    phi: BivariateLaurentExpr, theta: float, r: float, cfg: QuadratureConfig
) -> complex:
    if r == 1.0:
        return 0j
    ez = cmath.exp(1j * theta)
    path = PathSpec.radial_ray(0.0, 1.0 / r, r)
    return integrate_path(lambda t: phi.eval(t * ez, 1.0 / (t * ez)) / t, path, cfg)


def reflect_neumann_circle(
    v: HarmonicPair,
    phi: BivariateLaurentExpr,
    p: BiPoint,
    verify_numeric: bool = False,
    quad: QuadratureConfig | None = None,
) -> ReflectionResult:
    """Continuation across the unit circle for Neumann data phi.

    v(e^{i theta}/r) = v(r e^{i theta}) - int_{1/r}^{r} phi(rho e^{i theta},
    1/(rho e^{i theta})) / rho  d rho, with the integral computed exactly.
    ``verify_numeric`` re-computes the correction by adaptive quadrature
    and raises on disagreement.
    """
    r, theta = _ray_coordinates(p)
    cut = v.part_z.cut_angle
    if r == 1.0:
        correction = 0j
    else:
        prim = _circle_data_primitive(phi, theta, cut)
        correction = -(prim.eval(complex(r)) - prim.eval(complex(1.0 / r)))
    if verify_numeric and r != 1.0:
        shadow = -_numeric_data_integral(phi, theta, r, quad or QuadratureConfig())
        if abs(shadow - correction) > _SHADOW_TOL * max(1.0, abs(correction)):
            raise HarmoniaError(
                f"exact correction {correction:.12g} disagrees with quadrature "
                f"{shadow:.12g}"
            )
    ez = cmath.exp(1j * theta)
    reflected = BiPoint(ez / r, 1.0 / (r * ez))
    value = eval_pair(v, p) + correction
    return ReflectionResult(
        point=p,
        reflected_point=reflected,
        value=value,
        correction=correction,
        formula="neumann_circle",
    )


def reflect_robin_circle(
    w: HarmonicPair,
    phi_w: BivariateLaurentExpr,
    params: RobinParams,
    p: BiPoint,
    verify_numeric: bool = False,
    quad: QuadratureConfig | None = None,
) -> ReflectionResult:
    """Continuation across the unit circle for Robin data phi_w.

    w(reflected) = w(p) - (a/b) int_r^1 [w(rho e^{i theta}) +
    w(e^{i theta}/rho)] / rho d rho - (1/b) int_{1/r}^r phi_w / rho d rho.
    The reflected-argument integrand stays inside the log-Laurent algebra
    because rho -> 1/rho maps it to itself; ``correction`` reports the
    data term alone.
    """
    r, theta = _ray_coordinates(p)
    cut = w.part_z.cut_angle
    if r == 1.0:
        self_term = 0j
        data_term = 0j
    else:
        along = w.part_z.restrict_to_ray(theta) + w.part_zeta.restrict_to_ray(-theta)
        prim_self = (along + along.invert_argument()).antiderivative_over_arg()
        self_term = -(params.a / params.b) * (
            prim_self.eval(complex(1.0)) - prim_self.eval(complex(r))
        )
        prim_data = _circle_data_primitive(phi_w, theta, cut)
        data_term = -(prim_data.eval(complex(r)) - prim_data.eval(complex(1.0 / r))) / params.b
    if verify_numeric and r != 1.0:
        shadow = -_numeric_data_integral(phi_w, theta, r, quad or QuadratureConfig()) / params.b
        if abs(shadow - data_term) > _SHADOW_TOL * max(1.0, abs(data_term)):
            raise HarmoniaError(
                f"exact data term {data_term:.12g} disagrees with quadrature {shadow:.12g}"
            )
    ez = cmath.exp(1j * theta)
    reflected = BiPoint(ez / r, 1.0 / (r * ez))
    value = eval_pair(w, p) + self_term + data_term
    return ReflectionResult(
        point=p,
        reflected_point=reflected,
        value=value,
        correction=data_term,
        formula="robin_circle",
    )


FieldLike = Union[HarmonicPair, Callable[[BiPoint], complex]]


def _field_value(v: FieldLike, p: BiPoint) -> complex:
    if isinstance(v, HarmonicPair):
        return eval_pair(v, p)
    return complex(v(p))


def reflect_neumann_schwarz(
    v: FieldLike,
    phi: BivariateLaurentExpr,
    smap: SchwarzMap,
    p: BiPoint,
    quad: QuadratureConfig | None = None,
) -> ReflectionResult:
    """Continuation across a Schwarz arc for Neumann data phi.

    v(S~(zeta), S(z)) = v(z, zeta) + i int_{S~(zeta)}^{z} phi(tau, S(tau))
    sqrt(S'(tau)) d tau, by adaptive quadrature along the straight segment
    with a branch of sqrt(S') validated against the outward normal where
    the segment meets the curve.  Reduces to the exact circle formula when
    the map is the unit circle.
    """
    cfg = quad or QuadratureConfig()
    zr = smap.inverse_value(p.zeta)
    zetar = smap.value(p.z)
    reflected = BiPoint(zr, zetar)
    if phi.is_zero() or abs(zr - p.z) < 1e-13 * (1.0 + abs(p.z)):
        correction = 0j
    else:
        pole = smap.pole
        if pole is not None:
            from .operators import _segment_pole_distance

            if _segment_pole_distance(zr, p.z, pole) < 1e-9:
                raise PoleError("reflection segment passes through the map pole")
        seg = PathSpec.segment(zr, p.z)
        branch = sqrt_schwarz_derivative(smap, seg)
        correction = 1j * integrate_path(
            lambda t: phi.eval(t, smap.value(t)) * branch(t), seg, cfg
        )
    value = _field_value(v, p) + correction
    return ReflectionResult(
        point=p,
        reflected_point=reflected,
        value=value,
        correction=correction,
        formula="neumann_arc",
    )
