"""Function classes and the maps from class data to Taylor coefficients.

Two of the classes are parametrized by a probability measure on the circle:

* ``ConvexHullOfConvex`` (closed convex hull of convex maps), where
  ``f = integral z/(1 - e^{it} z) dmu(t)`` and ``a_k = integral e^{i(k-1)t} dmu``;
* ``NoshiroWarschawski(beta)`` (``Re f' > beta``), where the Herglotz formula
  gives ``a_k = 2(1-beta)/k * integral e^{i(k-1)t} dmu``.

Both fit ``a_k = s(k) b_{k-1} / 2`` with the class-specific factor ``s``.
The third, ``CoefficientClass(profile)``, is defined only by the weighted
l1 budget ``sum r(k) |a_k| <= 1`` and is handled on coefficient sequences.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from .errors import UnsupportedClassError, ValidationError
from .measures import AtomicMeasure, moment
from .series import PowerSeries

BUDGET_TOL = 1e-12

PROFILE_NAMES = ("starlike", "convex", "ust", "ucv", "nw", "spiral", "hurwitz", "custom")


def _check_beta(beta: float) -> float:
    beta = float(beta)
    if not 0.0 <= beta < 1.0:
        raise ValidationError(f"beta must lie in [0, 1), got {beta!r}")
    return beta


@dataclass(frozen=True)
class WeightProfile:
    """Coefficient weights ``r(k) > 0`` defining a class H(r).

    ``table`` (custom profiles only) lists ``r(2), r(3), ...``.
    """
    name: str
    beta: float = 0.0
    nu: float = 0.0
    table: tuple[float, ...] | None = None

    def __post_init__(self):
        if self.name not in PROFILE_NAMES:
            raise ValidationError(f"unknown profile {self.name!r}; choose from {PROFILE_NAMES}")
        _check_beta(self.beta)
        if not -math.pi / 2 < self.nu < math.pi / 2:
            raise ValidationError(f"nu must lie in (-pi/2, pi/2), got {self.nu!r}")
        if self.name == "custom":
            if not self.table:
                raise ValidationError("custom profile needs a nonempty table r(2), r(3), ...")
            table = tuple(float(x) for x in self.table)
            if any(not (x > 0 and math.isfinite(x)) for x in table):
                raise ValidationError("custom profile values must be positive and finite")
            object.__setattr__(self, "table", table)
        elif self.table is not None:
            raise ValidationError("only the custom profile takes a table")

    def r(self, k: int) -> float:
        if k < 2:
            raise ValidationError(f"weights are defined for k >= 2, got {k}")
        b = self.beta
        match self.name:
            case "starlike":
                return (k - b) / (1 - b)
            case "hurwitz":
                return float(k)
            case "convex":
                return k * (k - b) / (1 - b)
            case "ust":
                return 3.0 * k - 2.0
            case "ucv":
                return float(k * (2 * k - 1))
            case "nw":
                return k / (1 - b)
            case "spiral":
                return 1.0 + (k - 1) / (1 - b) / math.cos(self.nu)
            case _:
                if k - 2 >= len(self.table):
                    raise ValidationError(f"custom profile has no entry for k={k}")
                return self.table[k - 2]

    @property
    def label(self) -> str:
        if self.name in ("starlike", "convex", "nw"):
            return f"{self.name}(beta={self.beta:g})"
        if self.name == "spiral":
            return f"spiral(beta={self.beta:g},nu={self.nu:g})"
        return self.name


def starlike(beta: float = 0.0) -> WeightProfile:
    return WeightProfile("starlike", beta=beta)


def convex(beta: float = 0.0) -> WeightProfile:
    return WeightProfile("convex", beta=beta)


def ust() -> WeightProfile:
    return WeightProfile("ust")


def ucv() -> WeightProfile:
    return WeightProfile("ucv")


def nw(beta: float = 0.0) -> WeightProfile:
    return WeightProfile("nw", beta=beta)


def spiral(beta: float = 0.0, nu: float = 0.0) -> WeightProfile:
    return WeightProfile("spiral", beta=beta, nu=nu)


def hurwitz() -> WeightProfile:
    return WeightProfile("hurwitz")


def custom(table: Sequence[float]) -> WeightProfile:
    return WeightProfile("custom", table=tuple(table))


def profile_from_name(name: str, beta: float = 0.0, nu: float = 0.0,
                      table: Sequence[float] | None = None) -> WeightProfile:
    name = name.lower()
    if name == "custom":
        return custom(table or ())
    if name in ("ust", "ucv", "hurwitz"):
        return WeightProfile(name)
    if name == "spiral":
        return WeightProfile(name, beta=beta, nu=nu)
    return WeightProfile(name, beta=beta)


@dataclass(frozen=True)
class ConvexHullOfConvex:
    label = "coc"


@dataclass(frozen=True)
class NoshiroWarschawski:
    beta: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "beta", _check_beta(self.beta))

    @property
    def label(self) -> str:
        return f"R(beta={self.beta:g})"


@dataclass(frozen=True)
class CoefficientClass:
    profile: WeightProfile

    @property
    def label(self) -> str:
        return f"H[{self.profile.label}]"


ClassSpec = Union[ConvexHullOfConvex, NoshiroWarschawski, CoefficientClass]


def has_measure_representation(cls: ClassSpec) -> bool:
    return isinstance(cls, (ConvexHullOfConvex, NoshiroWarschawski))


def s_factor(cls: ClassSpec, k: int) -> float:
    if k < 2:
        raise ValidationError(f"s(k) is defined for k >= 2, got {k}")
    if isinstance(cls, ConvexHullOfConvex):
        return 1.0
    if isinstance(cls, NoshiroWarschawski):
        return 2.0 * (1.0 - cls.beta) / k
    raise UnsupportedClassError(f"{cls!r} has no measure representation")


def series_from_measure(cls: ClassSpec, mu: AtomicMeasure, N: int) -> PowerSeries:
    if not has_measure_representation(cls):
        raise UnsupportedClassError(f"{cls!r} has no measure representation")
    if N < 2:
        raise ValidationError(f"order must be >= 2, got {N}")
    return PowerSeries.normalized(s_factor(cls, k) * moment(mu, k - 1) / 2 for k in range(2, N + 1))


def h_budget(s: PowerSeries, profile: WeightProfile) -> float:
    return math.fsum(profile.r(k) * abs(a) for k, a in enumerate(s.coeffs[1:], start=2))


def h_membership(s: PowerSeries, profile: WeightProfile) -> tuple[bool, float]:
    """Check ``sum_{k>=2} r(k)|a_k| <= 1`` over the stored coefficients."""
    if not s.is_normalized:
        raise ValidationError("membership is defined for normalized series")
    used = h_budget(s, profile)
    return used <= 1.0 + BUDGET_TOL, used


def h_extremal(profile: WeightProfile, k: int, alpha: complex = 1.0, N: int | None = None) -> PowerSeries:
    """The two-term member ``z + (alpha / r(k)) z**k`` with ``|alpha| = 1``."""
    alpha = complex(alpha)
    if abs(abs(alpha) - 1.0) > 1e-12:
        raise ValidationError(f"alpha must have modulus 1, got {abs(alpha)!r}")
    N = k if N is None else N
    if not 2 <= k <= N:
        raise ValidationError(f"need 2 <= k <= N, got k={k}, N={N}")
    tail = [0j] * (N - 1)
    tail[k - 2] = alpha / profile.r(k)
    return PowerSeries.normalized(tail)


def random_h_coefficients(profile: WeightProfile, N: int, count: int, rng: np.random.Generator,
                          must_include: Sequence[int] = (), extra_terms: int = 3) -> np.ndarray:
    """Random sparse members of H(r) as a ``(count, N)`` coefficient array.

    Each row spends a uniform random fraction of the unit budget across the
    indices in ``must_include`` plus up to ``extra_terms`` further indices in
    ``2..N``, with uniformly random phases. Column 0 holds ``a_1 = 1``.
    """
    r = np.array([profile.r(k) for k in range(2, N + 1)])
    out = np.zeros((count, N), dtype=complex)
    out[:, 0] = 1.0
    forced = np.zeros(N - 1, dtype=bool)
    for k in must_include:
        forced[k - 2] = True
    for row in range(count):
        support = forced.copy()
        n_extra = rng.integers(0, extra_terms + 1)
        if n_extra:
            support[rng.choice(N - 1, size=n_extra, replace=False)] = True
        idx = np.flatnonzero(support)
        share = rng.standard_exponential(idx.size)
        share *= rng.uniform() / share.sum()
        phase = np.exp(1j * rng.uniform(0.0, 2.0 * math.pi, idx.size))
        out[row, idx + 1] = share / r[idx] * phase
    return out
