"""Exact calculus over finite log-Laurent sums.

Univariate expressions are finite sums

    e(z) = sum_j  c_j * z**k_j * (log z)**m_j

with integer powers ``k`` and nonnegative integer log-powers ``m``.  This
is the smallest class containing Laurent polynomials that is closed under
d/dz and under primitives of e(z)/z, which is exactly the closure needed
by the boundary-operator integrals in this package.  Bivariate
expressions are plain Laurent sums ``c * z**kz * zeta**kzeta`` and carry
boundary data extended holomorphically to two complex variables.

Coefficients are binary64 complex.  Terms are merged on (power, logpow)
and coefficients with ``|c| < COEFF_EPS`` are dropped during
normalization, so identity tests can demand exact term equality.

The logarithm is a principal-style branch with a configurable cut
direction (default: the negative real axis, ``cut_angle = pi``).
Evaluating an expression that actually contains logarithms rejects points
within ``CUT_MARGIN`` radians of the cut instead of silently crossing it.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Iterable, Mapping, Union

from .errors import CutProximityError, DomainError

__all__ = [
    "DEFAULT_CUT_ANGLE",
    "CUT_MARGIN",
    "COEFF_EPS",
    "branch_log",
    "cut_distance",
    "LogLaurentTerm",
    "LogLaurentExpr",
    "BivariateLaurentExpr",
    "restrict_bivariate_to_circle",
]

DEFAULT_CUT_ANGLE = math.pi
CUT_MARGIN = 1e-6
COEFF_EPS = 1e-15

_TWO_PI = 2.0 * math.pi


def cut_distance(angle: float, cut_angle: float) -> float:
    """Angular distance (mod 2*pi) between a direction and the cut ray."""
    d = (angle - cut_angle) % _TWO_PI
    return min(d, _TWO_PI - d)


def branch_log(z: complex, cut_angle: float = DEFAULT_CUT_ANGLE) -> complex:
    """log z with the branch cut along the ray arg(z) = cut_angle.

    The argument is taken in (cut_angle - 2*pi, cut_angle]; for the
    default cut this is the principal branch.
    """
    if z == 0:
        raise DomainError("log is singular at z = 0")
    phi = cmath.phase(z)
    theta = phi - _TWO_PI * math.ceil((phi - cut_angle) / _TWO_PI)
    return complex(math.log(abs(z)), theta)


@dataclass(frozen=True)
class LogLaurentTerm:
    """A single term c * z**power * (log z)**logpow."""

    coeff: complex
    power: int
    logpow: int = 0


def _accumulate(acc: dict, key: tuple, coeff: complex) -> None:
    acc[key] = acc.get(key, 0j) + coeff


def _normalize(acc: dict) -> dict:
    return {key: c for key, c in acc.items() if abs(c) >= COEFF_EPS}


TermsLike = Union[
    Mapping[tuple, complex],
    Iterable,  # of LogLaurentTerm or (coeff, power[, logpow]) tuples
]


class LogLaurentExpr:
    """A normalized finite sum of log-Laurent terms.

    Instances are immutable; all operations return new expressions.  The
    branch-cut direction travels with the expression and is inherited by
    derived expressions.
    """

    __slots__ = ("_terms", "_cut_angle")

    def __init__(self, terms: TermsLike = (), cut_angle: float = DEFAULT_CUT_ANGLE):
        acc: dict = {}
        if isinstance(terms, Mapping):
            items = terms.items()
            for (k, m), c in items:
                _accumulate(acc, (int(k), int(m)), complex(c))
        else:
            for t in terms:
                if isinstance(t, LogLaurentTerm):
                    c, k, m = t.coeff, t.power, t.logpow
                else:
                    c, k, *rest = t
                    m = rest[0] if rest else 0
                _accumulate(acc, (int(k), int(m)), complex(c))
        for (k, m), c in acc.items():
            if m < 0:
                raise ValueError(f"negative log power {m}")
            if not (math.isfinite(c.real) and math.isfinite(c.imag)):
                raise ValueError(f"non-finite coefficient {c!r}")
        object.__setattr__(self, "_terms", _normalize(acc))
        object.__setattr__(self, "_cut_angle", float(cut_angle))

    def __setattr__(self, name, value):  # immutability guard
        raise AttributeError("LogLaurentExpr is immutable")

    # -- construction helpers -------------------------------------------------

    @classmethod
    def zero(cls, cut_angle: float = DEFAULT_CUT_ANGLE) -> "LogLaurentExpr":
        return cls((), cut_angle)

    @classmethod
    def constant(cls, value: complex, cut_angle: float = DEFAULT_CUT_ANGLE) -> "LogLaurentExpr":
        return cls([(value, 0, 0)], cut_angle)

    @classmethod
    def monomial(
        cls,
        coeff: complex,
        power: int,
        logpow: int = 0,
        cut_angle: float = DEFAULT_CUT_ANGLE,
    ) -> "LogLaurentExpr":
        return cls([(coeff, power, logpow)], cut_angle)

    # -- basic queries ---------------------------------------------------------

    @property
    def cut_angle(self) -> float:
        return self._cut_angle

    @property
    def terms(self) -> tuple:
        """Normalized terms, sorted by (power, logpow)."""
        return tuple(
            LogLaurentTerm(c, k, m) for (k, m), c in sorted(self._terms.items())
        )

    def is_zero(self) -> bool:
        return not self._terms

    def has_log(self) -> bool:
        return any(m > 0 for (_, m) in self._terms)

    def coefficient(self, power: int, logpow: int = 0) -> complex:
        return self._terms.get((power, logpow), 0j)

    def __eq__(self, other) -> bool:
        if not isinstance(other, LogLaurentExpr):
            return NotImplemented
        return self._terms == other._terms and self._cut_angle == other._cut_angle

    def __hash__(self):
        return hash((frozenset(self._terms.items()), self._cut_angle))

    def __repr__(self) -> str:
        if not self._terms:
            return "LogLaurentExpr(0)"
        parts = []
        for (k, m), c in sorted(self._terms.items()):
            s = f"({c:.6g})"
            if k:
                s += f"*z^{k}"
            if m:
                s += f"*log(z)^{m}" if m > 1 else "*log(z)"
            parts.append(s)
        return "LogLaurentExpr(" + " + ".join(parts) + ")"

    # -- arithmetic ------------------------------------------------------------

    def __add__(self, other: "LogLaurentExpr") -> "LogLaurentExpr":
        if not isinstance(other, LogLaurentExpr):
            return NotImplemented
        acc = dict(self._terms)
        for key, c in other._terms.items():
            _accumulate(acc, key, c)
        return LogLaurentExpr(acc, self._cut_angle)

    def __sub__(self, other: "LogLaurentExpr") -> "LogLaurentExpr":
        return self + (-other)

    def __neg__(self) -> "LogLaurentExpr":
        return LogLaurentExpr({key: -c for key, c in self._terms.items()}, self._cut_angle)

    def __mul__(self, other):
        if isinstance(other, LogLaurentExpr):
            acc: dict = {}
            for (k1, m1), c1 in self._terms.items():
                for (k2, m2), c2 in other._terms.items():
                    _accumulate(acc, (k1 + k2, m1 + m2), c1 * c2)
            return LogLaurentExpr(acc, self._cut_angle)
        if isinstance(other, (int, float, complex)):
            return LogLaurentExpr(
                {key: c * other for key, c in self._terms.items()}, self._cut_angle
            )
        return NotImplemented

    __rmul__ = __mul__

    # -- evaluation ------------------------------------------------------------

    def eval(self, z: complex, margin: float = CUT_MARGIN) -> complex:
        """Evaluate at a nonzero point off the branch cut.

        Points within ``margin`` radians of the cut ray are rejected when
        (and only when) the expression carries logarithm terms.
        """
        z = complex(z)
        if z == 0:
            raise DomainError("expression is singular at z = 0")
        lg = None
        if self.has_log():
            if cut_distance(cmath.phase(z), self._cut_angle) < margin:
                raise CutProximityError(
                    f"point at angle {cmath.phase(z):.6g} is within {margin:g} rad "
                    f"of the branch cut at {self._cut_angle:.6g}"
                )
            lg = branch_log(z, self._cut_angle)
        total = 0j
        for (k, m), c in self._terms.items():
            term = c * z**k
            if m:
                term *= lg**m
            total += term
        return total

    __call__ = eval

    # -- calculus --------------------------------------------------------------

    def differentiate(self) -> "LogLaurentExpr":
        """Termwise d/dz: c z^k log^m -> c k z^(k-1) log^m + c m z^(k-1) log^(m-1)."""
        acc: dict = {}
        for (k, m), c in self._terms.items():
            if k:
                _accumulate(acc, (k - 1, m), c * k)
            if m:
                _accumulate(acc, (k - 1, m - 1), c * m)
        return LogLaurentExpr(acc, self._cut_angle)

    def antiderivative_over_arg(self) -> "LogLaurentExpr":
        """Exact primitive A with A'(z) = self(z)/z and integration constant 0.

        The termwise rule for the integrand c z^(k-1) (log z)^m is

            k == 0:  c (log z)^(m+1) / (m+1)
            k != 0:  c z^k (log z)^m / k  minus  (m/k) times the primitive
                     of c z^(k-1) (log z)^(m-1), recursively.
        """
        acc: dict = {}
        for (k, m), c in self._terms.items():
            self._primitive_into(acc, k, m, c)
        return LogLaurentExpr(acc, self._cut_angle)

    @staticmethod
    def _primitive_into(acc: dict, k: int, m: int, c: complex) -> None:
        if k == 0:
            _accumulate(acc, (0, m + 1), c / (m + 1))
            return
        _accumulate(acc, (k, m), c / k)
        if m:
            LogLaurentExpr._primitive_into(acc, k, m - 1, -c * m / k)

    def restrict_to_ray(self, theta: float, margin: float = CUT_MARGIN) -> "LogLaurentExpr":
        """Substitute z = rho * exp(i theta); the result is an expression in rho.

        Each term c z^k log^m z becomes c e^{ik theta} rho^k (log rho + i theta)^m,
        expanded binomially.  ``theta`` is folded into the branch window of
        the cut first, so evaluation at positive rho agrees with direct
        evaluation at rho*e^{i theta}.
        """
        theta = float(theta)
        theta_adj = theta - _TWO_PI * math.ceil((theta - self._cut_angle) / _TWO_PI)
        if self.has_log() and cut_distance(theta, self._cut_angle) < margin:
            raise CutProximityError(
                f"ray angle {theta:.6g} is within {margin:g} rad of the branch cut"
            )
        acc: dict = {}
        for (k, m), c in self._terms.items():
            base = c * cmath.exp(1j * k * theta_adj)
            for j in range(m + 1):
                _accumulate(
                    acc,
                    (k, j),
                    base * math.comb(m, j) * (1j * theta_adj) ** (m - j),
                )
        return LogLaurentExpr(acc, self._cut_angle)

    def invert_argument(self) -> "LogLaurentExpr":
        """Substitute z -> 1/z:  c z^k log^m  ->  c (-1)^m z^(-k) log^m.

        Valid off the cut, where log(1/z) = -log(z).
        """
        acc = {(-k, m): c * (-1) ** m for (k, m), c in self._terms.items()}
        return LogLaurentExpr(acc, self._cut_angle)

    def conjugate_mirror(self) -> "LogLaurentExpr":
        """Coefficient-conjugated copy.

        If u1 has mirror u2, the pair u1(z) + u2(conj z) is real valued away
        from the cut (the default cut is conjugation symmetric).
        """
        acc = {key: c.conjugate() for key, c in self._terms.items()}
        return LogLaurentExpr(acc, self._cut_angle)

    def with_cut_angle(self, cut_angle: float) -> "LogLaurentExpr":
        return LogLaurentExpr(self._terms, cut_angle)

    # -- serialization ----------------------------------------------------------

    def to_json(self) -> list:
        """JSON array of term records {re, im, k, m}."""
        return [
            {"re": c.real, "im": c.imag, "k": k, "m": m}
            for (k, m), c in sorted(self._terms.items())
        ]

    @classmethod
    def from_json(cls, data: list, cut_angle: float = DEFAULT_CUT_ANGLE) -> "LogLaurentExpr":
        terms = [
            (complex(rec["re"], rec.get("im", 0.0)), rec["k"], rec.get("m", 0))
            for rec in data
        ]
        return cls(terms, cut_angle)


class BivariateLaurentExpr:
    """A finite Laurent sum c * z**kz * zeta**kzeta in two complex variables."""

    __slots__ = ("_terms",)

    def __init__(self, terms=()):
        acc: dict = {}
        if isinstance(terms, Mapping):
            for (kz, kzeta), c in terms.items():
                _accumulate(acc, (int(kz), int(kzeta)), complex(c))
        else:
            for c, kz, kzeta in terms:
                _accumulate(acc, (int(kz), int(kzeta)), complex(c))
        for c in acc.values():
            if not (math.isfinite(c.real) and math.isfinite(c.imag)):
                raise ValueError(f"non-finite coefficient {c!r}")
        object.__setattr__(self, "_terms", _normalize(acc))

    def __setattr__(self, name, value):
        raise AttributeError("BivariateLaurentExpr is immutable")

    @classmethod
    def zero(cls) -> "BivariateLaurentExpr":
        return cls(())

    @classmethod
    def constant(cls, value: complex) -> "BivariateLaurentExpr":
        return cls([(value, 0, 0)])

    @classmethod
    def monomial(cls, coeff: complex, zpow: int, zetapow: int) -> "BivariateLaurentExpr":
        return cls([(coeff, zpow, zetapow)])

    @property
    def terms(self) -> tuple:
        """Normalized (coeff, zpow, zetapow) triples, sorted by powers."""
        return tuple((c, kz, kzeta) for (kz, kzeta), c in sorted(self._terms.items()))

    def is_zero(self) -> bool:
        return not self._terms

    def __eq__(self, other) -> bool:
        if not isinstance(other, BivariateLaurentExpr):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __repr__(self) -> str:
        if not self._terms:
            return "BivariateLaurentExpr(0)"
        parts = []
        for (kz, kzeta), c in sorted(self._terms.items()):
            s = f"({c:.6g})"
            if kz:
                s += f"*z^{kz}"
            if kzeta:
                s += f"*zeta^{kzeta}"
            parts.append(s)
        return "BivariateLaurentExpr(" + " + ".join(parts) + ")"

    def __add__(self, other: "BivariateLaurentExpr") -> "BivariateLaurentExpr":
        if not isinstance(other, BivariateLaurentExpr):
            return NotImplemented
        acc = dict(self._terms)
        for key, c in other._terms.items():
            _accumulate(acc, key, c)
        return BivariateLaurentExpr(acc)

    def __sub__(self, other: "BivariateLaurentExpr") -> "BivariateLaurentExpr":
        return self + (-other)

    def __neg__(self) -> "BivariateLaurentExpr":
        return BivariateLaurentExpr({key: -c for key, c in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, BivariateLaurentExpr):
            acc: dict = {}
            for (a1, b1), c1 in self._terms.items():
                for (a2, b2), c2 in other._terms.items():
                    _accumulate(acc, (a1 + a2, b1 + b2), c1 * c2)
            return BivariateLaurentExpr(acc)
        if isinstance(other, (int, float, complex)):
            return BivariateLaurentExpr({key: c * other for key, c in self._terms.items()})
        return NotImplemented

    __rmul__ = __mul__

    def eval(self, z: complex, zeta: complex) -> complex:
        z = complex(z)
        zeta = complex(zeta)
        total = 0j
        for (kz, kzeta), c in self._terms.items():
            if (kz < 0 and z == 0) or (kzeta < 0 and zeta == 0):
                raise DomainError("negative power evaluated at 0")
            total += c * z**kz * zeta**kzeta
        return total

    __call__ = eval

    def restrict_to_circle(self, cut_angle: float = DEFAULT_CUT_ANGLE) -> LogLaurentExpr:
        """Substitute zeta = 1/z, the Schwarz function of the unit circle.

        Term c z^kz zeta^kzeta maps to c z^(kz - kzeta); the result is the
        restriction to the complexified unit circle.  Multiples of
        (z*zeta - 1) vanish identically under this map.
        """
        acc: dict = {}
        for (kz, kzeta), c in self._terms.items():
            _accumulate(acc, (kz - kzeta, 0), c)
        return LogLaurentExpr(acc, cut_angle)

    def to_json(self) -> list:
        """JSON array of term records {re, im, kz, kzeta}."""
        return [
            {"re": c.real, "im": c.imag, "kz": kz, "kzeta": kzeta}
            for (kz, kzeta), c in sorted(self._terms.items())
        ]

    @classmethod
    def from_json(cls, data: list) -> "BivariateLaurentExpr":
        return cls(
            [
                (complex(rec["re"], rec.get("im", 0.0)), rec["kz"], rec["kzeta"])
                for rec in data
            ]
        )


def restrict_bivariate_to_circle(
    phi: BivariateLaurentExpr, cut_angle: float = DEFAULT_CUT_ANGLE
) -> LogLaurentExpr:
    """Functional form of :meth:`BivariateLaurentExpr.restrict_to_circle`."""
    return phi.restrict_to_circle(cut_angle)
