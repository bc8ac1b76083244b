"""The generalized Zalcman functional and its closed-form sharp bounds.

For a normalized series and ``FunctionalSpec(lam, n, m)`` the functional is

    lam * a_n * a_m - a_{n+m-1}.

Bounds are returned as :class:`BoundResult`. Outside the parameter ranges
where a sharp bound is known the result carries ``applicable=False`` and a
NaN value instead of an extrapolation.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

from .classes import (ClassSpec, CoefficientClass, ConvexHullOfConvex, NoshiroWarschawski,
                      WeightProfile, h_extremal, s_factor, series_from_measure)
from .errors import CoefficientRangeError, ValidationError
from .measures import AtomicMeasure, theoremA_measure
from .series import PowerSeries, default_order, half_plane_kernel, slit_log_series

TIE_TOL = 1e-12

# Readings of the lambda range in the small-lambda R(beta) estimate, printed
# as "0 < lam <= 4/3(1-beta)".
R2_DIVIDED = "divided"            # lam <= 4 / (3 (1 - beta))
R2_MULTIPLIED = "multiplied"      # lam <= (4/3) (1 - beta)
R2_READINGS = (R2_DIVIDED, R2_MULTIPLIED)


@dataclass(frozen=True)
class FunctionalSpec:
    lam: float
    n: int
    m: int

    def __post_init__(self):
        if not (self.lam > 0 and math.isfinite(self.lam)):
            raise ValidationError(f"lambda must be positive and finite, got {self.lam!r}")
        if self.n < 2 or self.m < 2:
            raise ValidationError(f"need n, m >= 2, got n={self.n}, m={self.m}")
        object.__setattr__(self, "lam", float(self.lam))

    @property
    def diagonal(self) -> bool:
        return self.n == self.m

    @property
    def top(self) -> int:
        return self.n + self.m - 1


@dataclass(frozen=True)
class BoundResult:
    value: float
    applicable: bool
    regime: str
    attainers: tuple[str, ...] = field(default_factory=tuple)

    def __post_init__(self):
        if self.applicable and not self.value >= 0:
            raise ValidationError(f"applicable bound must be >= 0, got {self.value!r}")

    @classmethod
    def open(cls, regime: str) -> "BoundResult":
        return cls(math.nan, False, regime, ())


def zalcman(s: PowerSeries, spec: FunctionalSpec) -> complex:
    if s.truncation_order < spec.top:
        raise CoefficientRangeError(
            f"order {s.truncation_order} too short for a_{spec.top}")
    return spec.lam * s.coeff(spec.n) * s.coeff(spec.m) - s.coeff(spec.top)


def ma_reference(n: int, m: int) -> int:
    """The conjectured bound ``(n-1)(m-1)`` over all univalent functions.

    Reference value only; nothing in this package verifies it.
    """
    return (n - 1) * (m - 1)


def bound_coc(spec: FunctionalSpec) -> BoundResult:
    if spec.lam >= 2:
        return BoundResult(spec.lam - 1.0, True, "coc:lam>=2",
                           ("l(z) = z/(1-z) and rotations",))
    if spec.diagonal:
        return BoundResult(1.0, True, "coc:diag:lam<=2",
                           (f"theoremA_measure(n={spec.n}) family and rotations",))
    return BoundResult.open("coc:open:lam<2")


def r_threshold(beta: float, n: int, m: int) -> float:
    """``nm / ((1-beta)(n+m-1))``, the lower end of the large-lambda range."""
    return n * m / ((1.0 - beta) * (n + m - 1))


def r2_limit(beta: float, reading: str = R2_DIVIDED) -> float:
    if reading == R2_DIVIDED:
        return 4.0 / (3.0 * (1.0 - beta))
    if reading == R2_MULTIPLIED:
        return 4.0 / 3.0 * (1.0 - beta)
    raise ValidationError(f"unknown reading {reading!r}; choose from {R2_READINGS}")


def bound_R(beta: float, spec: FunctionalSpec, r2_reading: str = R2_DIVIDED) -> BoundResult:
    """Sharp bound over ``Re f' > beta``.

    ``r2_reading`` selects how the printed range "lam <= 4/3(1-beta)" of the
    small-lambda diagonal estimate is parsed; see :func:`r2_limit`.
    """
    if not 0.0 <= beta < 1.0:
        raise ValidationError(f"beta must lie in [0, 1), got {beta!r}")
    lam, n, m = spec.lam, spec.n, spec.m
    if lam >= r_threshold(beta, n, m):
        value = 4 * lam * (1 - beta) ** 2 / (n * m) - 2 * (1 - beta) / (n + m - 1)
        return BoundResult(value, True, "R:lam>=threshold",
                           (f"m(z) = -2(1-beta)log(1-z) - (1-2beta)z, beta={beta:g}, and rotations",))
    if spec.diagonal and lam <= r2_limit(beta, r2_reading):
        return BoundResult(2 * (1 - beta) / (2 * n - 1), True, f"R:diag:small-lam[{r2_reading}]",
                           (f"Herglotz image of theoremA_measure(n={n}), beta={beta:g}, and rotations",))
    return BoundResult.open("R:open:below-threshold")


def h_tie_lambda(profile: WeightProfile, n: int) -> float:
    return profile.r(n) ** 2 / profile.r(2 * n - 1)


def bound_H(profile: WeightProfile, lam: float, n: int) -> BoundResult:
    if not lam > 0:
        raise ValidationError(f"lambda must be positive, got {lam!r}")
    if n < 2:
        raise ValidationError(f"n must be >= 2, got {n}")
    value, vertices = polytope_max(lam, profile.r(n), profile.r(2 * n - 1))
    top = f"z + alpha z^{2 * n - 1}/r({2 * n - 1}), |alpha|=1"
    lin = f"z + alpha z^{n}/r({n}), |alpha|=1"
    if len(vertices) == 2:
        return BoundResult(value, True, "H:tie", (top, lin))
    if vertices[0][0] == 0.0:
        return BoundResult(value, True, "H:top-coefficient", (top,))
    return BoundResult(value, True, "H:squared-coefficient", (lin,))


def bound_for(cls: ClassSpec, spec: FunctionalSpec, r2_reading: str = R2_DIVIDED) -> BoundResult:
    if isinstance(cls, ConvexHullOfConvex):
        return bound_coc(spec)
    if isinstance(cls, NoshiroWarschawski):
        return bound_R(cls.beta, spec, r2_reading)
    if spec.n != spec.m:
        return BoundResult.open("H:open:off-diagonal")
    return bound_H(cls.profile, spec.lam, spec.n)


def lemma1_bound(cls: ClassSpec, spec: FunctionalSpec) -> float:
    """``|lam - 2 s(n+m-1)/(s(n)s(m))| s(n)s(m) + s(n+m-1)`` for measure classes."""
    sn, sm, st = (s_factor(cls, k) for k in (spec.n, spec.m, spec.top))
    return abs(spec.lam - 2 * st / (sn * sm)) * sn * sm + st


def polytope_max(lam: float, q_n: float, q_2n1: float) -> tuple[float, list[tuple[float, float]]]:
    """Maximize ``lam u^2 + v`` over ``u, v >= 0``, ``q_n u + q_2n1 v <= 1``.

    The objective is convex, so the maximum sits at a vertex; the origin
    gives 0, leaving ``(1/q_n, 0)`` and ``(0, 1/q_2n1)``. Both are returned
    when their values agree to within ``TIE_TOL``.
    """
    if not (lam > 0 and q_n > 0 and q_2n1 > 0):
        raise ValidationError("lambda, q_n and q_2n1 must all be positive")
    at_u = lam / q_n ** 2
    at_v = 1.0 / q_2n1
    if abs(at_u - at_v) < TIE_TOL:
        return max(at_u, at_v), [(1.0 / q_n, 0.0), (0.0, 1.0 / q_2n1)]
    if at_u > at_v:
        return at_u, [(1.0 / q_n, 0.0)]
    return at_v, [(0.0, 1.0 / q_2n1)]


def extremal_series(cls: ClassSpec, spec: FunctionalSpec, N: int | None = None,
                    r2_reading: str = R2_DIVIDED) -> list[PowerSeries]:
    """Series that attain :func:`bound_for` (unit rotation / alpha = 1).

    Empty when the bound is not applicable.
    """
    bound = bound_for(cls, spec, r2_reading)
    if not bound.applicable:
        return []
    N = default_order(spec.n, spec.m) if N is None else N
    if isinstance(cls, ConvexHullOfConvex):
        out = []
        if spec.lam >= 2:
            out.append(half_plane_kernel(0.0, N))
        if spec.diagonal and spec.lam <= 2:
            out.append(series_from_measure(cls, theoremA_measure(spec.n), N))
        return out
    if isinstance(cls, NoshiroWarschawski):
        if bound.regime == "R:lam>=threshold":
            return [slit_log_series(cls.beta, N)]
        return [series_from_measure(cls, theoremA_measure(spec.n), N)]
    n = spec.n
    out = []
    if bound.regime in ("H:top-coefficient", "H:tie"):
        out.append(h_extremal(cls.profile, 2 * n - 1, 1.0, N))
    if bound.regime in ("H:squared-coefficient", "H:tie"):
        out.append(h_extremal(cls.profile, n, 1.0, N))
    return out


def extremal_measure(cls: ClassSpec, spec: FunctionalSpec) -> AtomicMeasure | None:
    """Measure behind the first entry of :func:`extremal_series`, if any."""
    bound = bound_for(cls, spec)
    if not bound.applicable or isinstance(cls, CoefficientClass):
        return None
    if isinstance(cls, ConvexHullOfConvex) and spec.lam >= 2:
        return AtomicMeasure.point_mass(0.0)
    if isinstance(cls, NoshiroWarschawski) and bound.regime == "R:lam>=threshold":
        return AtomicMeasure.point_mass(0.0)
    return theoremA_measure(spec.n)
