"""Complexified harmonic functions u(z, zeta) = u1(z) + u2(zeta).

Splitting a harmonic function into a z-part and a zeta-part makes the
mixed second derivative vanish identically, so every pair built from
log-Laurent parts is harmonic by construction.  On the real slice
zeta = conj(z) the pair represents an ordinary real harmonic field
whenever the zeta-part mirrors the z-part with conjugated coefficients;
that symmetry is checked numerically, not structurally, because
intermediate pairs in C^2 are often deliberately non-symmetric.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass

import numpy as np

from .algebra import DEFAULT_CUT_ANGLE, LogLaurentExpr
from .errors import BranchSelectionError, DomainError, NonSymmetricPairError
from .geometry import BiPoint, SchwarzMap

__all__ = [
    "HarmonicPair",
    "RobinParams",
    "eval_pair",
    "eval_real",
    "field_scale",
    "radial_derivative",
    "normal_derivative_schwarz",
    "robin_trace_circle",
    "is_conjugate_symmetric",
]

_REALITY_TOL = 1e-11


@dataclass(frozen=True)
class HarmonicPair:
    """u(z, zeta) = part_z(z) + part_zeta(zeta)."""

    part_z: LogLaurentExpr
    part_zeta: LogLaurentExpr

    @classmethod
    def zero(cls, cut_angle: float = DEFAULT_CUT_ANGLE) -> "HarmonicPair":
        return cls(LogLaurentExpr.zero(cut_angle), LogLaurentExpr.zero(cut_angle))

    @classmethod
    def constant(cls, value: float, cut_angle: float = DEFAULT_CUT_ANGLE) -> "HarmonicPair":
        half = LogLaurentExpr.constant(value / 2.0, cut_angle)
        return cls(half, half)

    @classmethod
    def symmetric(cls, part_z: LogLaurentExpr) -> "HarmonicPair":
        """Pair with the zeta-part mirroring the z-part; real on the real slice."""
        return cls(part_z, part_z.conjugate_mirror())

    def __add__(self, other: "HarmonicPair") -> "HarmonicPair":
        return HarmonicPair(self.part_z + other.part_z, self.part_zeta + other.part_zeta)

    def __sub__(self, other: "HarmonicPair") -> "HarmonicPair":
        return HarmonicPair(self.part_z - other.part_z, self.part_zeta - other.part_zeta)

    def __neg__(self) -> "HarmonicPair":
        return HarmonicPair(-self.part_z, -self.part_zeta)

    def __mul__(self, scalar):
        if isinstance(scalar, (int, float, complex)):
            return HarmonicPair(self.part_z * scalar, self.part_zeta * scalar)
        return NotImplemented

    __rmul__ = __mul__

    def to_json(self) -> dict:
        return {"part_z": self.part_z.to_json(), "part_zeta": self.part_zeta.to_json()}

    @classmethod
    def from_json(cls, rec: dict, cut_angle: float = DEFAULT_CUT_ANGLE) -> "HarmonicPair":
        return cls(
            LogLaurentExpr.from_json(rec["part_z"], cut_angle),
            LogLaurentExpr.from_json(rec["part_zeta"], cut_angle),
        )


@dataclass(frozen=True)
class RobinParams:
    """Coefficients of the boundary condition a*w + b*dw/dn = data, b != 0."""

    a: float
    b: float

    def __post_init__(self):
        if self.b == 0:
            raise ValueError("Robin coefficient b must be nonzero")


def eval_pair(h: HarmonicPair, p: BiPoint) -> complex:
    """u1(z) + u2(zeta) at a C^2 point."""
    return h.part_z.eval(p.z) + h.part_zeta.eval(p.zeta)


def is_conjugate_symmetric(
    h: HarmonicPair, tol: float = _REALITY_TOL, n_samples: int = 16
) -> bool:
    """Numerically check that the pair is real on the real slice.

    Samples two rings avoiding the branch cut; a pair passing here
    represents a real harmonic field near the unit circle.
    """
    thetas = np.linspace(-2.4, 2.4, max(2, n_samples // 2))
    for r in (0.8, 1.25):
        for theta in thetas:
            p = BiPoint.from_polar(r, float(theta))
            value = eval_pair(h, p)
            if abs(value.imag) > tol * max(1.0, abs(value)):
                return False
    return True


def eval_real(h: HarmonicPair, x: float, y: float) -> float:
    """Real-slice value at the plane point (x, y).

    Raises when the imaginary residue exceeds the reality tolerance,
    which flags pairs that are not conjugate-symmetric.
    """
    z = complex(x, y)
    if z == 0:
        raise DomainError("real-slice evaluation at the origin")
    value = eval_pair(h, BiPoint(z, z.conjugate()))
    if abs(value.imag) > _REALITY_TOL * max(1.0, abs(value)):
        raise NonSymmetricPairError(
            f"imaginary residue {value.imag:.3g} at ({x}, {y}); pair is not conjugate-symmetric"
        )
    return value.real


def field_scale(h: HarmonicPair, x: float, y: float) -> float:
    """Magnitude scale of the pair at a point: the sum of term magnitudes.

    Unlike |value|, this cannot collapse through phase cancellation, which
    makes it the right denominator for relative residuals (finite
    difference checks and the like).  Never smaller than 1.
    """
    z = complex(x, y)
    if z == 0:
        raise DomainError("field scale at the origin")
    total = 0.0
    for part, w in ((h.part_z, z), (h.part_zeta, z.conjugate())):
        if part.is_zero():
            continue
        lg = abs(cmath.log(w)) if part.has_log() else 0.0
        for t in part.terms:
            total += abs(t.coeff) * abs(w) ** t.power * (lg**t.logpow if t.logpow else 1.0)
    return max(1.0, total)


def radial_derivative(h: HarmonicPair, r: float, theta: float) -> complex:
    """d/dr of u along the ray parameterization (r e^{i theta}, r e^{-i theta}).

    Equals u1'(z) e^{i theta} + u2'(zeta) e^{-i theta}.
    """
    ez = cmath.exp(1j * theta)
    z = r * ez
    zeta = r / ez
    return h.part_z.differentiate().eval(z) * ez + h.part_zeta.differentiate().eval(zeta) / ez


def normal_derivative_schwarz(h: HarmonicPair, smap: SchwarzMap, z: complex) -> complex:
    """Outward normal derivative at a point of the carrier curve.

    Uses the Schwarz-function form (i / sqrt(S'(z))) (u1'(z) - u2'(zeta) S'(z))
    with zeta = S(z) and the square root fixed by i/sqrt(S') = outward normal.
    """
    z = complex(z)
    if smap.on_curve_residual(z) > 1e-8 * (1.0 + abs(z)):
        raise DomainError(f"{z} does not lie on the carrier curve")
    zhat = smap.project_to_curve(z)
    sqrt_sp = 1j / smap.outward_normal(zhat)
    sp = smap.derivative(z)
    if abs(sqrt_sp * sqrt_sp - sp) > 1e-8 * (1.0 + abs(sp)):
        raise BranchSelectionError(
            "outward-normal square root is inconsistent with S' at this point"
        )
    zeta = smap.value(z)
    d1 = h.part_z.differentiate().eval(z)
    d2 = h.part_zeta.differentiate().eval(zeta)
    return (1j / sqrt_sp) * (d1 - d2 * sp)


def robin_trace_circle(h: HarmonicPair, params: RobinParams, theta: float) -> complex:
    """a*u + b*(radial derivative) on the unit circle at angle theta."""
    p = BiPoint.from_polar(1.0, theta)
    return params.a * eval_pair(h, p) + params.b * radial_derivative(h, 1.0, theta)
