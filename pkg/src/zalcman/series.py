"""Truncated Taylor series of normalized analytic functions on the unit disk.

A :class:`PowerSeries` stores ``a_1, ..., a_N`` for

    f(z) = a_1 z + a_2 z**2 + ... + a_N z**N + O(z**(N+1)),

with the constant term fixed at zero. Indexing starts at 1 so that
``s.coeff(k)`` is the coefficient of ``z**k``. Members of the class A are
normalized, ``a_1 = 1``.

The generators below produce the coefficient sequences of the extremal
functions used throughout the package:

    koebe_series         z/(1-z)**2                     a_k = k
    half_plane_kernel    z/(1-e^{it}z)                  a_k = e^{i(k-1)t}
    slit_log_series      -2(1-b)log(1-z) - (1-2b)z      a_k = 2(1-b)/k
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import CoefficientRangeError, ValidationError

UNIT_TOL = 1e-12
WEIGHT_TOL = 1e-12


@dataclass(frozen=True)
class PowerSeries:
    coeffs: tuple[complex, ...]

    def __post_init__(self):
        coeffs = tuple(complex(c) for c in self.coeffs)
        if not coeffs:
            raise ValidationError("a power series needs at least one coefficient")
        object.__setattr__(self, "coeffs", coeffs)

    @classmethod
    def normalized(cls, tail: Iterable[complex]) -> "PowerSeries":
        """Build ``z + a_2 z**2 + ...`` from the coefficients ``a_2, a_3, ...``."""
        return cls((1.0,) + tuple(tail))

    @classmethod
    def identity(cls, order: int) -> "PowerSeries":
        return cls.normalized([0.0] * (order - 1))

    @property
    def truncation_order(self) -> int:
        return len(self.coeffs)

    @property
    def is_normalized(self) -> bool:
        return self.coeffs[0] == 1

    def coeff(self, k: int) -> complex:
        if not 1 <= k <= len(self.coeffs):
            raise CoefficientRangeError(
                f"index {k} outside 1..{len(self.coeffs)}")
        return self.coeffs[k - 1]

    def as_array(self) -> np.ndarray:
        """Coefficients ``a_1..a_N`` as a complex array (a copy)."""
        return np.array(self.coeffs, dtype=complex)


def coeff(s: PowerSeries, k: int) -> complex:
    return s.coeff(k)


@dataclass(frozen=True)
class Rotation:
    """Unit-modulus multiplier ``c`` acting by ``f -> conj(c) f(c z)``."""
    c: complex

    def __post_init__(self):
        c = complex(self.c)
        if abs(abs(c) - 1.0) > UNIT_TOL:
            raise ValidationError(f"rotation multiplier must have |c| = 1, got |c| = {abs(c)!r}")
        object.__setattr__(self, "c", c)

    @classmethod
    def by_angle(cls, phi: float) -> "Rotation":
        return cls(cmath.exp(1j * phi))

    def inverse(self) -> "Rotation":
        return Rotation(self.c.conjugate())


def rotate(s: PowerSeries, r: Rotation | complex) -> PowerSeries:
    """Coefficients of ``conj(c) f(c z)``; ``a_k`` picks up ``c**(k-1)``."""
    if not isinstance(r, Rotation):
        r = Rotation(r)
    if not s.is_normalized:
        raise ValidationError("rotation is defined here for normalized series only")
    c = r.c
    return PowerSeries(tuple(a * c ** k for k, a in enumerate(s.coeffs)))


def _check_order(N: int) -> None:
    if N < 1:
        raise ValidationError(f"truncation order must be >= 1, got {N}")


def half_plane_kernel(theta: float, N: int) -> PowerSeries:
    _check_order(N)
    return PowerSeries(tuple(cmath.exp(1j * (k - 1) * theta) for k in range(1, N + 1)))


def koebe_series(N: int) -> PowerSeries:
    _check_order(N)
    return PowerSeries(tuple(range(1, N + 1)))


def slit_log_series(beta: float, N: int) -> PowerSeries:
    """Series of ``-2(1-beta) log(1-z) - (1-2 beta) z``.

    The linear terms combine to ``2(1-beta) z - (1-2beta) z = z``, so the
    result is normalized for every admissible ``beta``.
    """
    if not 0.0 <= beta < 1.0:
        raise ValidationError(f"beta must lie in [0, 1), got {beta!r}")
    _check_order(N)
    return PowerSeries.normalized(2.0 * (1.0 - beta) / k for k in range(2, N + 1))


def convex_combination(parts: Sequence[tuple[float, PowerSeries]]) -> PowerSeries:
    if not parts:
        raise ValidationError("convex combination of nothing")
    weights = [float(w) for w, _ in parts]
    if any(w < 0 for w in weights):
        raise ValidationError("weights must be nonnegative")
    if abs(math.fsum(weights) - 1.0) > WEIGHT_TOL:
        raise ValidationError(f"weights sum to {math.fsum(weights)!r}, expected 1")
    orders = {s.truncation_order for _, s in parts}
    if len(orders) != 1:
        raise ValidationError(f"mismatched truncation orders {sorted(orders)}")
    N = orders.pop()
    out = [0j] * N
    for w, s in parts:
        for i, a in enumerate(s.coeffs):
            out[i] += w * a
    return PowerSeries(tuple(out))


def theoremB_transform(f: PowerSeries) -> PowerSeries:
    """Coefficients of ``F(z) = -z + 2 * integral_0^z f(t)/t dt``.

    Termwise, ``a_k z**k / z`` integrates to ``a_k z**k / k``, so
    ``A_k = 2 a_k / k`` for ``k >= 2`` and ``A_1 = 2 a_1 - 1 = 1``.
    """
    if not f.is_normalized:
        raise ValidationError("transform expects a normalized series")
    return PowerSeries.normalized(2.0 * a / k for k, a in enumerate(f.coeffs[1:], start=2))


def default_order(n: int, m: int) -> int:
    """Order ``2 max(n, m)``: covers ``a_{n+m-1}`` with one spare term."""
    return 2 * max(n, m)
