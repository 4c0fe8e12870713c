"""Independent numerical oracles and the verification-report generator.

Nothing here trusts the exact algebra: the quadrature is plain adaptive
Simpson with interval-halving error control, the disk Neumann oracle is a
brute-force Fourier series, and harmonicity is probed with a 5-point
finite-difference stencil.  The verification suite replays every invariant
promised by the other modules against these oracles and records residuals
in a machine-readable report.
"""

from __future__ import annotations

import cmath
import json
import math
from dataclasses import dataclass
from typing import Callable, Iterable, Optional

import numpy as np

from .algebra import (
    DEFAULT_CUT_ANGLE,
    BivariateLaurentExpr,
    LogLaurentExpr,
)
from .errors import NonzeroMeanError, QuadratureConvergenceError
from .geometry import PathSpec
from .harmonic import HarmonicPair

__all__ = [
    "QuadratureConfig",
    "TrigPolynomial",
    "integrate_path",
    "fd_laplacian",
    "fourier_neumann_oracle",
    "CheckRecord",
    "VerificationReport",
    "run_verification_suite",
    "DEFAULT_SEED",
]

DEFAULT_SEED = 1729


@dataclass(frozen=True)
class QuadratureConfig:
    """Absolute tolerance and recursion cap for adaptive Simpson."""

    abs_tol: float = 1e-10
    max_depth: int = 30

    def __post_init__(self):
        if not self.abs_tol > 0:
            raise ValueError("abs_tol must be positive")
        if self.max_depth < 1:
            raise ValueError("max_depth must be >= 1")


def _simpson_recurse(g, a, b, fa, fm, fb, whole, tol, depth):
    m = 0.5 * (a + b)
    lm, rm = 0.5 * (a + m), 0.5 * (m + b)
    flm, frm = g(lm), g(rm)
    left = (m - a) / 6.0 * (fa + 4.0 * flm + fm)
    right = (b - m) / 6.0 * (fm + 4.0 * frm + fb)
    delta = left + right - whole
    if abs(delta) <= 15.0 * tol:
        return left + right + delta / 15.0
    if depth <= 0:
        raise QuadratureConvergenceError(
            f"adaptive Simpson did not converge on [{a}, {b}]"
        )
    half = 0.5 * tol
    return _simpson_recurse(
        g, a, m, fa, flm, fm, left, half, depth - 1
    ) + _simpson_recurse(g, m, b, fm, frm, fb, right, half, depth - 1)


def adaptive_simpson(
    g: Callable[[float], complex], a: float, b: float, cfg: QuadratureConfig | None = None
) -> complex:
    """Integral of g over [a, b] with interval-halving error control."""
    cfg = cfg or QuadratureConfig()
    fa, fm, fb = g(a), g(0.5 * (a + b)), g(b)
    whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    return _simpson_recurse(g, a, b, fa, fm, fb, whole, cfg.abs_tol, cfg.max_depth)


def integrate_path(
    f: Callable[[complex], complex], path: PathSpec, cfg: QuadratureConfig | None = None
) -> complex:
    """Contour integral of f along the path, by adaptive Simpson per panel.

    The path's subdivision hint sets the number of initial panels; the
    absolute tolerance is split evenly across them.
    """
    cfg = cfg or QuadratureConfig()
    panels = max(1, path.subdivision)

    def g(t: float) -> complex:
        return f(path.point(t)) * path.velocity(t)

    panel_cfg = QuadratureConfig(cfg.abs_tol / panels, cfg.max_depth)
    total = 0j
    for i in range(panels):
        total += adaptive_simpson(g, i / panels, (i + 1) / panels, panel_cfg)
    return total


def fd_laplacian(field: Callable[[float, float], float], x: float, y: float, h: float) -> float:
    """5-point finite-difference Laplacian (f(x+-h,y) + f(x,y+-h) - 4f)/h^2."""
    if not h > 0:
        raise ValueError("step h must be positive")
    return (
        field(x + h, y) + field(x - h, y) + field(x, y + h) + field(x, y - h)
        - 4.0 * field(x, y)
    ) / (h * h)


@dataclass(frozen=True)
class TrigPolynomial:
    """Boundary data a_0 + sum_n (a_n cos n*theta + b_n sin n*theta)."""

    cos: tuple
    sin: tuple

    def __post_init__(self):
        cos = tuple(float(c) for c in self.cos)
        sin = tuple(float(s) for s in self.sin)
        n = max(len(cos), len(sin), 1)
        cos = cos + (0.0,) * (n - len(cos))
        sin = sin + (0.0,) * (n - len(sin))
        if sin[0] != 0.0:
            raise ValueError("sin(0*theta) vanishes; b_0 must be 0")
        object.__setattr__(self, "cos", cos)
        object.__setattr__(self, "sin", sin)

    @property
    def degree(self) -> int:
        return len(self.cos) - 1

    @property
    def mean(self) -> float:
        return self.cos[0]

    def boundary_value(self, theta: float) -> float:
        total = 0.0
        for n in range(len(self.cos)):
            total += self.cos[n] * math.cos(n * theta) + self.sin[n] * math.sin(n * theta)
        return total

    def dirichlet_value(self, r: float, theta: float) -> float:
        """The harmonic extension into the disk with this boundary trace."""
        total = 0.0
        for n in range(len(self.cos)):
            rn = r**n
            total += rn * (
                self.cos[n] * math.cos(n * theta) + self.sin[n] * math.sin(n * theta)
            )
        return total

    def to_harmonic_pair(self, cut_angle: float = DEFAULT_CUT_ANGLE) -> HarmonicPair:
        """Pair whose real slice is the disk Dirichlet extension of this data."""
        zterms, zeta_terms = [], []
        for n in range(len(self.cos)):
            c = 0.5 * complex(self.cos[n], -self.sin[n])
            if n == 0:
                c = complex(0.5 * self.cos[0], 0.0)
            zterms.append((c, n, 0))
            zeta_terms.append((c.conjugate(), n, 0))
        return HarmonicPair(
            LogLaurentExpr(zterms, cut_angle), LogLaurentExpr(zeta_terms, cut_angle)
        )

    def to_bivariate(self) -> BivariateLaurentExpr:
        """Bivariate extension with trace equal to this data on the unit circle."""
        terms = []
        for n in range(len(self.cos)):
            if n == 0:
                terms.append((complex(self.cos[0]), 0, 0))
                continue
            half_a = 0.5 * self.cos[n]
            half_b = self.sin[n] / 2j
            terms.append((half_a + half_b, n, 0))
            terms.append((half_a - half_b, 0, n))
        return BivariateLaurentExpr(terms)

    @classmethod
    def from_bivariate_circle_trace(
        cls, phi: BivariateLaurentExpr, tol: float = 1e-10
    ) -> "TrigPolynomial":
        """Fourier coefficients of phi restricted to the unit circle.

        The circle trace must be real; materially complex coefficients are
        rejected.
        """
        lau = phi.restrict_to_circle()
        powers = [t.power for t in lau.terms]
        degree = max((abs(k) for k in powers), default=0)
        cos = [0.0] * (degree + 1)
        sin = [0.0] * (degree + 1)
        scale = max(1.0, max((abs(t.coeff) for t in lau.terms), default=0.0))
        c0 = lau.coefficient(0)
        if abs(c0.imag) > tol * scale:
            raise ValueError("circle trace is not real (mean has imaginary part)")
        cos[0] = c0.real
        for n in range(1, degree + 1):
            cn, cmn = lau.coefficient(n), lau.coefficient(-n)
            a_n = cn + cmn
            b_n = 1j *(cn - cmn)
            if abs(a_n.imag) > tol * scale or abs(b_n.imag) > tol * scale:
                raise ValueError(f"circle trace is not real at harmonic {n}")
            cos[n] = a_n.real
            sin[n] = b_n.real
        return cls(tuple(cos), tuple(sin))


def fourier_neumann_oracle(phi: TrigPolynomial, r: float, theta: float) -> float:
    """Brute-force disk Neumann solution sum_n (r^n/n)(a_n cos + b_n sin).

    This is the unique solution with value 0 at the origin; data with a
    nonzero boundary mean admits no solution and is rejected.
    """
    if abs(phi.mean) > 1e-10:
        raise NonzeroMeanError(
            f"Neumann data must have zero boundary mean, got {phi.mean:.3g}"
        )
    total = 0.0
    for n in range(1, len(phi.cos)):
        total += (r**n / n) * (
            phi.cos[n] * math.cos(n * theta) + phi.sin[n] * math.sin(n * theta)
        )
    return total


# ---------------------------------------------------------------------------
# verification suite
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CheckRecord:
    name: str
    tag: str
    samples: int
    max_residual: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return self.max_residual <= self.tolerance

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "tag": self.tag,
            "samples": self.samples,
            "max_residual": self.max_residual,
            "tolerance": self.tolerance,
            "passed": self.passed,
        }


@dataclass(frozen=True)
class VerificationReport:
    """Residual record for a suite run; pass means residual <= tolerance."""

    seed: int
    checks: tuple
    corrupt: Optional[str] = None

    @property
    def all_passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failures(self) -> tuple:
        return tuple(c for c in self.checks if not c.passed)

    def to_json(self, indent: int | None = 2) -> str:
        payload = {
            "seed": self.seed,
            "corrupt": self.corrupt,
            "all_passed": self.all_passed,
            "checks": [c.to_json() for c in self.checks],
        }
        return json.dumps(payload, indent=indent)

    def summary_table(self) -> str:
        lines = [
            f"{'check':40s} {'tag':11s} {'n':>4s} {'max residual':>14s} {'tolerance':>10s} status"
        ]
        for c in self.checks:
            status = "PASS" if c.passed else "FAIL"
            lines.append(
                f"{c.name:40s} {c.tag:11s} {c.samples:>4d} {c.max_residual:>14.3e} "
                f"{c.tolerance:>10.0e} {status}"
            )
        return "\n".join(lines)


class _SuiteContext:
    def __init__(self, seed: int, corrupt: Optional[str]):
        self.rng = np.random.default_rng(seed)
        self.corrupt = corrupt


def _random_expr(rng, max_terms=4, kmax=4, mmax=2, allow_log=True) -> LogLaurentExpr:
    n = int(rng.integers(1, max_terms + 1))
    terms = []
    for _ in range(n):
        k = int(rng.integers(-kmax, kmax + 1))
        m = int(rng.integers(0, mmax + 1)) if allow_log else 0
        c = complex(rng.uniform(-1, 1), rng.uniform(-1, 1))
        terms.append((c, k, m))
    return LogLaurentExpr(terms)


def _random_symmetric_pair(rng, max_terms=4, kmax=3, allow_log=True) -> HarmonicPair:
    return HarmonicPair.symmetric(_random_expr(rng, max_terms, kmax, 2 if allow_log else 0, allow_log))


def _random_bivariate(rng, max_terms=4, kmax=3) -> BivariateLaurentExpr:
    n = int(rng.integers(1, max_terms + 1))
    terms = []
    for _ in range(n):
        kz = int(rng.integers(-kmax, kmax + 1))
        kzeta = int(rng.integers(-kmax, kmax + 1))
        c = complex(rng.uniform(-1, 1), rng.uniform(-1, 1))
        terms.append((c, kz, kzeta))
    return BivariateLaurentExpr(terms)


def _random_zero_mean_trig(rng, degree=6) -> TrigPolynomial:
    cos = [0.0] + [float(rng.uniform(-1, 1)) for _ in range(degree)]
    sin = [0.0] + [float(rng.uniform(-1, 1)) for _ in range(degree)]
    return TrigPolynomial(tuple(cos), tuple(sin))


def _symmetric_pair_trace_bivariate(u: HarmonicPair) -> BivariateLaurentExpr:
    # log-free pairs only: z-part powers become z powers, zeta-part powers
    # become zeta powers
    terms = []
    for t in u.part_z.terms:
        if t.logpow:
            raise ValueError("trace extension needs a log-free pair")
        terms.append((t.coeff, t.power, 0))
    for t in u.part_zeta.terms:
        if t.logpow:
            raise ValueError("trace extension needs a log-free pair")
        terms.append((t.coeff, 0, t.power))
    return BivariateLaurentExpr(terms)


def _robin_trace_bivariate(w: HarmonicPair, a: float, b: float) -> BivariateLaurentExpr:
    # termwise a + b*k multiplier realizes a*w + b*r dw/dr on the circle
    terms = []
    for t in w.part_z.terms:
        terms.append((t.coeff * (a + b * t.power), t.power, 0))
    for t in w.part_zeta.terms:
        terms.append((t.coeff * (a + b * t.power), 0, t.power))
    return BivariateLaurentExpr(terms)


def _sample_thetas(n: int) -> np.ndarray:
    return np.linspace(-2.0, 2.0, n)


def _check_antiderivative_round_trip(ctx):
    over_z = LogLaurentExpr.monomial(1.0, -1)
    worst = 0.0
    n = 50
    for _ in range(n):
        e = _random_expr(ctx.rng)
        diff = e.antiderivative_over_arg().differentiate() - e * over_z
        worst = max(worst, max((abs(t.coeff) for t in diff.terms), default=0.0))
    return n, worst, 0.0


def _check_eval_homomorphism(ctx):
    worst = 0.0
    n = 50
    for _ in range(n):
        e1 = _random_expr(ctx.rng)
        e2 = _random_expr(ctx.rng)
        r = ctx.rng.uniform(0.5, 2.0)
        th = ctx.rng.uniform(-2.5, 2.5)
        z = r * cmath.exp(1j * th)
        worst = max(worst, abs((e1 + e2).eval(z) - e1.eval(z) - e2.eval(z)))
    return n, worst, 1e-13


def _check_ray_restriction(ctx):
    worst = 0.0
    n = 50
    for _ in range(n):
        e = _random_expr(ctx.rng)
        th = float(ctx.rng.uniform(-2.5, 2.5))
        ray = e.restrict_to_ray(th)
        for rho in np.linspace(0.5, 2.0, 7):
            worst = max(
                worst,
                abs(ray.eval(complex(rho)) - e.eval(rho * cmath.exp(1j * th))),
            )
    return n, worst, 1e-11


def _check_circle_kernel(ctx):
    kernel = BivariateLaurentExpr([(1.0, 1, 1), (-1.0, 0, 0)])
    worst = 0.0
    n = 50
    for _ in range(n):
        psi = _random_bivariate(ctx.rng, max_terms=8)
        restricted = (psi * kernel).restrict_to_circle()
        worst = max(worst, max((abs(t.coeff) for t in restricted.terms), default=0.0))
    return n, worst, 0.0


def _suite_maps():
    from .geometry import SchwarzMap

    return [
        SchwarzMap.unit_circle(),
        SchwarzMap.circle(0.3 - 0.2j, 1.7),
        SchwarzMap.line(0.5j, 0.3),
    ]


def _check_on_curve_identity(ctx):
    worst = 0.0
    count = 0
    for smap in _suite_maps():
        for z in smap.curve_points(64):
            worst = max(worst, smap.on_curve_residual(z))
            count += 1
    return count, worst, 1e-12


def _check_inverse_roundtrip(ctx):
    worst = 0.0
    count = 0
    for smap in _suite_maps():
        for z in smap.curve_points(16):
            for offset in (0.2 + 0.1j, -0.15j, 0.05 - 0.2j):
                w = z + offset
                if smap.pole is not None and abs(w - smap.pole) < 0.3:
                    continue
                worst = max(worst, abs(smap.inverse_value(smap.value(w)) - w))
                count += 1
    return count, worst, 1e-12


def _check_reflect_involution(ctx):
    from .geometry import BiPoint, reflect_bipoint

    worst = 0.0
    count = 0
    for smap in _suite_maps():
        for z in smap.curve_points(8):
            for offset in (0.2, -0.25, 0.1):
                w = z + offset * smap.outward_normal(smap.project_to_curve(z))
                p = BiPoint(w, w.conjugate())
                q = reflect_bipoint(smap, reflect_bipoint(smap, p))
                worst = max(worst, abs(q.z - p.z) + abs(q.zeta - p.zeta))
                count += 1
    return count, worst, 1e-12


def _check_real_slice_reflection(ctx):
    from .geometry import BiPoint, anti_conformal_reflect, reflect_bipoint

    worst = 0.0
    count = 0
    for smap in _suite_maps():
        for z in smap.curve_points(8):
            for offset in (0.2, -0.25):
                w = z + offset * smap.outward_normal(smap.project_to_curve(z))
                q = reflect_bipoint(smap, BiPoint(w, w.conjugate()))
                x, y = anti_conformal_reflect(smap, w.real, w.imag)
                worst = max(worst, abs(q.z - complex(x, y)))
                count += 1
    return count, worst, 1e-12


def _check_fd_harmonicity(ctx):
    from .harmonic import RobinParams, eval_real, field_scale
    from .operators import (
        dirichlet_from_robin_pair,
        neumann_from_dirichlet_pair,
        neumann_from_robin_pair,
    )

    params = RobinParams(1.0, 1.0)
    pairs = []
    for _ in range(3):
        pairs.append(_random_symmetric_pair(ctx.rng))
    # operator outputs must stay harmonic too
    pairs.append(neumann_from_dirichlet_pair(pairs[0]))
    pairs.append(neumann_from_robin_pair(pairs[1], params))
    pairs.append(dirichlet_from_robin_pair(pairs[2], params))
    worst = 0.0
    count = 0
    h = 1e-4
    for pair in pairs:
        field = lambda x, y: eval_real(pair, x, y)
        for r in np.linspace(0.75, 1.3, 5):
            for th in np.linspace(-2.0, 2.0, 5):
                x, y = r * math.cos(th), r * math.sin(th)
                residual = abs(fd_laplacian(field, x, y, h)) / field_scale(pair, x, y)
                worst = max(worst, residual)
                count += 1
    return count, worst, 1e-5


def _check_reality(ctx):
    from .geometry import BiPoint
    from .harmonic import eval_pair

    worst = 0.0
    count = 0
    for _ in range(10):
        pair = _random_symmetric_pair(ctx.rng)
        for th in _sample_thetas(8):
            p = BiPoint.from_polar(float(ctx.rng.uniform(0.6, 1.5)), float(th))
            v = eval_pair(pair, p)
            worst = max(worst, abs(v.imag) / max(1.0, abs(v)))
            count += 1
    return count, worst, 1e-11


def _check_normal_vs_radial(ctx):
    from .geometry import SchwarzMap
    from .harmonic import normal_derivative_schwarz, radial_derivative

    smap = SchwarzMap.unit_circle()
    worst = 0.0
    count = 0
    for _ in range(10):
        pair = _random_symmetric_pair(ctx.rng)
        for th in _sample_thetas(6):
            z = cmath.exp(1j * float(th))
            worst = max(
                worst,
                abs(
                    normal_derivative_schwarz(pair, smap, z)
                    - radial_derivative(pair, 1.0, float(th))
                ),
            )
            count += 1
    return count, worst, 1e-10


def _check_robin_trace_linearity(ctx):
    from .harmonic import RobinParams, robin_trace_circle

    params = RobinParams(float(ctx.rng.uniform(-2, 2)), 1.5)
    worst = 0.0
    count = 0
    for _ in range(10):
        h1 = _random_symmetric_pair(ctx.rng)
        h2 = _random_symmetric_pair(ctx.rng)
        for th in _sample_thetas(5):
            worst = max(
                worst,
                abs(
                    robin_trace_circle(h1 + h2, params, float(th))
                    - robin_trace_circle(h1, params, float(th))
                    - robin_trace_circle(h2, params, float(th))
                ),
            )
            count += 1
    return count, worst, 1e-11


def _check_boundary_recovery_dirichlet(ctx):
    from .geometry import BiPoint
    from .harmonic import eval_pair, radial_derivative
    from .operators import neumann_from_dirichlet_pair

    worst = 0.0
    count = 0
    for _ in range(10):
        u = _random_symmetric_pair(ctx.rng, max_terms=8)
        v = neumann_from_dirichlet_pair(u)
        if ctx.corrupt == "dtn_sign_flip":
            v = v * -1.0
        for th in np.linspace(-2.0, 2.0, 32):
            trace = eval_pair(u, BiPoint.from_polar(1.0, float(th)))
            worst = max(worst, abs(radial_derivative(v, 1.0, float(th)) - trace))
            count += 1
    return count, worst, 1e-10


def _check_boundary_recovery_robin(ctx):
    from .harmonic import RobinParams, radial_derivative, robin_trace_circle
    from .operators import neumann_from_robin_pair

    worst = 0.0
    count = 0
    for a, b in ((1.0, 1.0), (2.0, -1.0), (0.5, 3.0)):
        params = RobinParams(a, b)
        for _ in range(4):
            w = _random_symmetric_pair(ctx.rng, max_terms=6)
            v = neumann_from_robin_pair(w, params)
            for th in np.linspace(-2.0, 2.0, 32):
                target = 0.5 * robin_trace_circle(w, params, float(th))
                worst = max(worst, abs(radial_derivative(v, 1.0, float(th)) - target))
                count += 1
    return count, worst, 1e-10


def _check_corollary_chain(ctx):
    from .harmonic import RobinParams, eval_real
    from .operators import (
        dirichlet_from_robin_pair,
        neumann_from_dirichlet_pair,
        neumann_from_robin_pair,
    )

    worst = 0.0
    count = 0
    for _ in range(20):
        params = RobinParams(float(ctx.rng.uniform(-2, 2)), float(ctx.rng.choice([1.0, -1.0, 3.0])))
        w = _random_symmetric_pair(ctx.rng, max_terms=5)
        chain = neumann_from_dirichlet_pair(dirichlet_from_robin_pair(w, params))
        direct = neumann_from_robin_pair(w, params)
        diffs = []
        for r in np.linspace(0.7, 1.3, 5):
            for th in np.linspace(-1.8, 1.8, 5):
                x, y = r * math.cos(th), r * math.sin(th)
                diffs.append(eval_real(chain, x, y) - eval_real(direct, x, y))
        worst = max(worst, float(np.var(diffs)))
        count += 1
    return count, worst, 1e-18


def _check_ode_identity(ctx):
    from .harmonic import RobinParams
    from .operators import solve_robin_analytic

    zmul = LogLaurentExpr.monomial(1.0, 1)
    worst = 0.0
    count = 0
    # coefficient and log-power bounds keep the substitute-back rounding
    # below the normalization threshold, so the identity is termwise exact
    for a, b in ((1.0, 1.0), (2.0, -1.0), (0.5, 3.0)):
        params = RobinParams(a, b)
        for _ in range(7):
            f = 0.5 * _random_expr(ctx.rng, mmax=1)
            g = 0.5 * _random_expr(ctx.rng, mmax=1)
            rhs = zmul * f.differentiate() + g
            h = solve_robin_analytic(f, g, params)
            residual = params.a * h + params.b * (zmul * h.differentiate()) - rhs
            worst = max(worst, max((abs(t.coeff) for t in residual.terms), default=0.0))
            count += 1
    return count, worst, 0.0


def _check_disk_vs_pair(ctx):
    from .harmonic import eval_real
    from .operators import neumann_from_dirichlet_disk, neumann_from_dirichlet_pair

    worst = 0.0
    count = 0
    for _ in range(5):
        trig = _random_zero_mean_trig(ctx.rng, degree=6)
        phi = trig.to_bivariate()
        pair_v = neumann_from_dirichlet_pair(trig.to_harmonic_pair())
        pin = eval_real(pair_v, 1.0, 0.0)
        disk_pin = neumann_from_dirichlet_disk(phi, 1.0 + 0j)
        for _ in range(10):
            r = float(ctx.rng.uniform(0.05, 1.0))
            th = float(ctx.rng.uniform(-2.5, 2.5))
            z = r * cmath.exp(1j * th)
            lhs = neumann_from_dirichlet_disk(phi, z) - disk_pin
            rhs = eval_real(pair_v, z.real, z.imag) - pin
            worst = max(worst, abs(lhs - rhs))
            count += 1
    return count, worst, 1e-8


def _check_quadrature_vs_exact(ctx):
    worst = 0.0
    n = 50
    for _ in range(n):
        e = _random_expr(ctx.rng, max_terms=6)
        th = float(ctx.rng.uniform(-2.5, 2.5))
        r0 = float(ctx.rng.uniform(0.5, 2.0))
        r1 = float(ctx.rng.uniform(0.5, 2.0))
        if abs(r1 - r0) < 1e-3:
            r1 = r0 + 0.5
        path = PathSpec.radial_ray(th, r0, r1)
        numeric = integrate_path(lambda t: e.eval(t) / t, path)
        prim = e.antiderivative_over_arg().restrict_to_ray(th)
        exact = prim.eval(complex(r1)) - prim.eval(complex(r0))
        worst = max(worst, abs(numeric - exact))
    return n, worst, 1e-9


def _check_oracle_vs_pair(ctx):
    from .harmonic import eval_real
    from .operators import neumann_from_dirichlet_pair

    worst = 0.0
    count = 0
    for _ in range(5):
        trig = _random_zero_mean_trig(ctx.rng, degree=6)
        v = neumann_from_dirichlet_pair(trig.to_harmonic_pair())
        pin = eval_real(v, 1.0, 0.0) - fourier_neumann_oracle(trig, 1.0, 0.0)
        for r in np.linspace(0.2, 1.0, 5):
            for th in _sample_thetas(5):
                x, y = r * math.cos(th), r * math.sin(th)
                worst = max(
                    worst,
                    abs(
                        eval_real(v, x, y)
                        - pin
                        - fourier_neumann_oracle(trig, float(r), float(th))
                    ),
                )
                count += 1
    return count, worst, 1e-8


def _check_fd_scaling(ctx):
    from .harmonic import eval_real

    log_pair = HarmonicPair.symmetric(LogLaurentExpr.monomial(0.5, 0, 1))
    saddle = HarmonicPair.symmetric(LogLaurentExpr.monomial(0.5, 2))
    worst = 0.0
    count = 0
    for pair, (x, y) in ((log_pair, (2.0, 0.0)), (saddle, (0.9, 0.4))):
        field = lambda xx, yy: eval_real(pair, xx, yy)
        for h in (1e-3, 1e-4):
            worst = max(worst, abs(fd_laplacian(field, x, y, h)))
            count += 1
    return count, worst, 1e-4


def _check_reflection_fixed_points(ctx):
    from .geometry import BiPoint, SchwarzMap
    from .harmonic import RobinParams, eval_pair
    from .reflection import (
        reflect_dirichlet_study,
        reflect_neumann_circle,
        reflect_robin_circle,
    )

    smap = SchwarzMap.unit_circle()
    params = RobinParams(1.0, 1.0)
    worst = 0.0
    count = 0
    for _ in range(10):
        u = _random_symmetric_pair(ctx.rng, allow_log=False)
        phi = _symmetric_pair_trace_bivariate(u)
        for th in _sample_thetas(6):
            p = BiPoint.from_polar(1.0, float(th))
            direct = eval_pair(u, p)
            rn = reflect_neumann_circle(u, phi, p)
            worst = max(worst, abs(rn.correction), abs(rn.value - direct))
            rr = reflect_robin_circle(u, phi, params, p)
            worst = max(worst, abs(rr.correction), abs(rr.value - direct))
            rd = reflect_dirichlet_study(u, phi, smap, p)
            worst = max(worst, abs(rd.value - direct))
            count += 1
    return count, worst, 1e-11


def _check_dirichlet_involution(ctx):
    from .geometry import BiPoint, SchwarzMap, reflect_bipoint
    from .harmonic import eval_pair
    from .reflection import reflect_dirichlet_study

    smap = SchwarzMap.unit_circle()
    worst = 0.0
    count = 0
    for _ in range(8):
        u = _random_symmetric_pair(ctx.rng, allow_log=False)
        phi = _symmetric_pair_trace_bivariate(u)
        for th in _sample_thetas(5):
            p = BiPoint.from_polar(float(ctx.rng.uniform(0.6, 0.95)), float(th))
            q = reflect_bipoint(smap, p)
            back = reflect_dirichlet_study(u, phi, smap, q)
            worst = max(worst, abs(back.value - eval_pair(u, p)))
            count += 1
    return count, worst, 1e-11


def _check_extension_independence(ctx):
    from .geometry import BiPoint
    from .harmonic import RobinParams
    from .reflection import reflect_neumann_circle, reflect_robin_circle

    kernel = BivariateLaurentExpr([(1.0, 1, 1), (-1.0, 0, 0)])
    params = RobinParams(1.0, 1.0)
    worst = 0.0
    count = 0
    for _ in range(10):
        u = _random_symmetric_pair(ctx.rng, allow_log=False)
        phi = _symmetric_pair_trace_bivariate(u)
        psi = _random_bivariate(ctx.rng, max_terms=6)
        phi2 = phi + psi * kernel
        for th in _sample_thetas(5):
            p = BiPoint.from_polar(0.8, float(th))
            worst = max(
                worst,
                abs(
                    reflect_neumann_circle(u, phi, p).correction
                    - reflect_neumann_circle(u, phi2, p).correction
                ),
                abs(
                    reflect_robin_circle(u, phi, params, p).correction
                    - reflect_robin_circle(u, phi2, params, p).correction
                ),
            )
            count += 1
    return count, worst, 1e-12


def _check_neumann_pipeline(ctx):
    from .geometry import BiPoint, reflect_bipoint, SchwarzMap
    from .harmonic import eval_pair
    from .operators import neumann_from_dirichlet_pair
    from .reflection import reflect_neumann_circle

    smap = SchwarzMap.unit_circle()
    worst = 0.0
    count = 0
    for _ in range(10):
        u = _random_symmetric_pair(ctx.rng, allow_log=False)
        phi = _symmetric_pair_trace_bivariate(u)
        v = neumann_from_dirichlet_pair(u)
        for _ in range(2):
            p = BiPoint.from_polar(
                float(ctx.rng.uniform(0.6, 0.95)), float(ctx.rng.uniform(-2.0, 2.0))
            )
            direct = eval_pair(v, reflect_bipoint(smap, p))
            worst = max(worst, abs(direct - reflect_neumann_circle(v, phi, p).value))
            count += 1
    return count, worst, 1e-10


def _check_robin_pipeline(ctx):
    from .geometry import BiPoint, reflect_bipoint, SchwarzMap
    from .harmonic import RobinParams, eval_pair
    from .reflection import reflect_robin_circle

    smap = SchwarzMap.unit_circle()
    worst = 0.0
    count = 0
    for a, b in ((1.0, 1.0), (2.0, -1.0), (0.5, 3.0)):
        params = RobinParams(a, b)
        for _ in range(4):
            w = _random_symmetric_pair(ctx.rng, allow_log=False)
            phi_w = _robin_trace_bivariate(w, a, b)
            for _ in range(2):
                p = BiPoint.from_polar(
                    float(ctx.rng.uniform(0.6, 0.95)), float(ctx.rng.uniform(-2.0, 2.0))
                )
                direct = eval_pair(w, reflect_bipoint(smap, p))
                worst = max(
                    worst, abs(direct - reflect_robin_circle(w, phi_w, params, p).value)
                )
                count += 1
    return count, worst, 1e-10


def _check_even_continuation(ctx):
    from .geometry import BiPoint
    from .harmonic import eval_pair
    from .reflection import reflect_neumann_circle

    worst = 0.0
    count = 0
    for _ in range(10):
        v = _random_symmetric_pair(ctx.rng)
        for th in _sample_thetas(3):
            p = BiPoint.from_polar(0.85, float(th))
            res = reflect_neumann_circle(v, BivariateLaurentExpr.zero(), p)
            worst = max(worst, abs(res.value - eval_pair(v, p)), abs(res.correction))
            count += 1
    return count, worst, 1e-12


def _check_circle_reduction(ctx):
    from .geometry import BiPoint, PathSpec, SchwarzMap
    from .harmonic import eval_real
    from .operators import neumann_from_dirichlet_pair, neumann_from_dirichlet_schwarz
    from .reflection import reflect_neumann_circle, reflect_neumann_schwarz

    smap = SchwarzMap.unit_circle()
    worst = 0.0
    count = 0
    u = _random_symmetric_pair(ctx.rng, allow_log=False)
    phi = _symmetric_pair_trace_bivariate(u)
    v_exact = neumann_from_dirichlet_pair(u)
    path = PathSpec.segment(0.75 + 0j, 1.0 + 0j)
    v_arc = neumann_from_dirichlet_schwarz(u, smap, path, path)
    for _ in range(20):
        r = float(ctx.rng.uniform(0.6, 0.95))
        th = float(ctx.rng.uniform(-2.0, 2.0))
        p = BiPoint.from_polar(r, th)
        worst = max(worst, abs(v_arc.eval(p) - eval_real(v_exact, p.z.real, p.z.imag)))
        worst = max(
            worst,
            abs(
                reflect_neumann_schwarz(v_exact, phi, smap, p).value
                - reflect_neumann_circle(v_exact, phi, p).value
            ),
        )
        count += 1
    return count, worst, 1e-9


_CHECKS = (
    ("antiderivative_round_trip", "algebra", _check_antiderivative_round_trip),
    ("eval_homomorphism", "algebra", _check_eval_homomorphism),
    ("ray_restriction_consistency", "algebra", _check_ray_restriction),
    ("circle_restriction_kernel", "algebra", _check_circle_kernel),
    ("on_curve_identity", "geometry", _check_on_curve_identity),
    ("inverse_map_roundtrip", "geometry", _check_inverse_roundtrip),
    ("reflection_involution", "geometry", _check_reflect_involution),
    ("real_slice_reflection", "geometry", _check_real_slice_reflection),
    ("fd_harmonicity", "harmonic", _check_fd_harmonicity),
    ("real_slice_reality", "harmonic", _check_reality),
    ("normal_vs_radial_derivative", "harmonic", _check_normal_vs_radial),
    ("robin_trace_linearity", "harmonic", _check_robin_trace_linearity),
    ("boundary_recovery_dirichlet", "operators", _check_boundary_recovery_dirichlet),
    ("boundary_recovery_robin", "operators", _check_boundary_recovery_robin),
    ("robin_chain_constant_field", "operators", _check_corollary_chain),
    ("robin_ode_identity", "operators", _check_ode_identity),
    ("disk_operator_vs_pair", "operators", _check_disk_vs_pair),
    ("quadrature_vs_exact_algebra", "numerics", _check_quadrature_vs_exact),
    ("fourier_oracle_vs_pair", "numerics", _check_oracle_vs_pair),
    ("fd_laplacian_scaling", "numerics", _check_fd_scaling),
    ("reflection_fixed_points", "reflection", _check_reflection_fixed_points),
    ("dirichlet_reflection_involution", "reflection", _check_dirichlet_involution),
    ("extension_independence", "reflection", _check_extension_independence),
    ("neumann_reflection_pipeline", "reflection", _check_neumann_pipeline),
    ("robin_reflection_pipeline", "reflection", _check_robin_pipeline),
    ("even_continuation", "reflection", _check_even_continuation),
    ("arc_circle_reduction", "reflection", _check_circle_reduction),
)


def available_checks() -> tuple:
    """(name, tag) for every registered verification check."""
    return tuple((name, tag) for name, tag, _ in _CHECKS)


def run_verification_suite(
    targets: Optional[Iterable[str]] = None,
    seed: int = DEFAULT_SEED,
    corrupt: Optional[str] = None,
) -> VerificationReport:
    """Run the registered invariant checks and collect residuals.

    ``targets`` selects checks by name or tag (None runs everything; an
    empty selection yields an empty, passing report).  ``corrupt`` is a
    negative-control hook: "dtn_sign_flip" flips the sign of the
    Dirichlet-to-Neumann output inside the boundary-recovery check, which
    must make that check fail.  Failures are recorded, never raised.
    """
    if targets is None:
        selected = list(_CHECKS)
    else:
        wanted = set(targets)
        known = {name for name, _, _ in _CHECKS} | {tag for _, tag, _ in _CHECKS}
        unknown = wanted - known
        if unknown:
            raise ValueError(f"unknown verification targets: {sorted(unknown)}")
        selected = [c for c in _CHECKS if c[0] in wanted or c[1] in wanted]
    ctx = _SuiteContext(seed, corrupt)
    records = []
    for name, tag, fn in selected:
        samples, worst, tol = fn(ctx)
        records.append(
            CheckRecord(
                name=name,
                tag=tag,
                samples=samples,
                max_residual=float(worst),
                tolerance=float(tol),
            )
        )
    return VerificationReport(seed=seed, checks=tuple(records), corrupt=corrupt)
