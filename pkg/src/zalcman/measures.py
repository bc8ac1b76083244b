"""Finitely supported probability measures on the circle and their moments.

The trigonometric moments are scaled by two,

    b_k = 2 * sum_j m_j exp(i k theta_j),

which is the normalization under which the moment inequality
``|b_{n-1} b_{m-1} - b_{n+m-2}| <= 2`` holds for every probability measure.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import CoefficientRangeError, ValidationError

TWO_PI = 2.0 * math.pi
MASS_TOL = 1e-12


def canonical_angle(theta: float) -> float:
    """Reduce to ``[0, 2 pi)``; guards the float edge where ``x % 2pi == 2pi``."""
    t = math.fmod(float(theta), TWO_PI)
    if t < 0:
        t += TWO_PI
    if t >= TWO_PI:
        t = 0.0
    return t


@dataclass(frozen=True)
class AtomicMeasure:
    atoms: tuple[tuple[float, float], ...]

    def __post_init__(self):
        raw = [(float(t), float(w)) for t, w in self.atoms]
        if not raw:
            raise ValidationError("a measure needs at least one atom")
        if any(not math.isfinite(t) or not math.isfinite(w) for t, w in raw):
            raise ValidationError("atoms must be finite")
        if any(w < 0 for _, w in raw):
            raise ValidationError("atom weights must be nonnegative")
        total = math.fsum(w for _, w in raw)
        if abs(total - 1.0) > MASS_TOL:
            raise ValidationError(f"total mass {total!r} differs from 1")
        atoms = tuple((canonical_angle(t), w) for t, w in raw if w > 0)
        object.__setattr__(self, "atoms", atoms)

    @classmethod
    def from_arrays(cls, angles: Iterable[float], weights: Iterable[float]) -> "AtomicMeasure":
        return cls(tuple(zip(angles, weights)))

    @classmethod
    def point_mass(cls, theta: float = 0.0) -> "AtomicMeasure":
        return cls(((theta, 1.0),))

    @property
    def angles(self) -> np.ndarray:
        return np.array([t for t, _ in self.atoms])

    @property
    def weights(self) -> np.ndarray:
        return np.array([w for _, w in self.atoms])

    def __len__(self) -> int:
        return len(self.atoms)

    def to_json(self) -> dict:
        return {"atoms": [[t, w] for t, w in self.atoms]}

    @classmethod
    def from_json(cls, obj: dict) -> "AtomicMeasure":
        try:
            atoms = obj["atoms"]
            return cls(tuple((t, w) for t, w in atoms))
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, ValidationError):
                raise
            raise ValidationError(f"malformed measure JSON: {exc}") from exc


def moment(mu: AtomicMeasure, k: int) -> complex:
    if k < 0:
        raise CoefficientRangeError(f"moment index must be >= 0, got {k}")
    return complex(2.0 * np.sum(mu.weights * np.exp(1j * k * mu.angles)))


def moments_batch(angles: np.ndarray, weights: np.ndarray, k: int) -> np.ndarray:
    """``b_k`` for a stack of measures given as ``(B, K)`` angle/weight arrays.

    Padding atoms with zero weight is allowed.
    """
    return 2.0 * np.sum(weights * np.exp(1j * k * angles), axis=-1)


def livingston_gap(mu: AtomicMeasure, n: int, m: int) -> float:
    if n < 2 or m < 2:
        raise ValidationError(f"need n, m >= 2, got n={n}, m={m}")
    return abs(moment(mu, n - 1) * moment(mu, m - 1) - moment(mu, n + m - 2))


def livingston_gap_batch(angles: np.ndarray, weights: np.ndarray, n: int, m: int) -> np.ndarray:
    if n < 2 or m < 2:
        raise ValidationError(f"need n, m >= 2, got n={n}, m={m}")
    bn = moments_batch(angles, weights, n - 1)
    bm = moments_batch(angles, weights, m - 1)
    return np.abs(bn * bm - moments_batch(angles, weights, n + m - 2))


def theoremA_angles(n: int) -> list[float]:
    """Atom positions ``(2k+1) pi / (2n-2)`` for ``k = 1..2n-2``, reduced mod 2 pi."""
    return [canonical_angle((2 * k + 1) * math.pi / (2 * n - 2)) for k in range(1, 2 * n - 1)]


def theoremA_measure(n: int, even_weights: Sequence[float] | None = None,
                     odd_weights: Sequence[float] | None = None) -> AtomicMeasure:
    """Extremal measure family for ``|lam a_n^2 - a_{2n-1}| <= 1`` on co(C).

    Atom ``k`` (1-based) takes its weight from ``odd_weights`` when ``k`` is
    odd and from ``even_weights`` when even; each list has ``n-1`` entries
    summing to 1/2. Omitted lists default to equal splits.
    """
    if n < 2:
        raise ValidationError(f"n must be >= 2, got {n}")
    half = [0.5 / (n - 1)] * (n - 1)
    even = list(half if even_weights is None else even_weights)
    odd = list(half if odd_weights is None else odd_weights)
    for name, ws in (("even", even), ("odd", odd)):
        if len(ws) != n - 1:
            raise ValidationError(f"{name} weights need {n - 1} entries, got {len(ws)}")
        if any(w < 0 for w in ws):
            raise ValidationError(f"{name} weights must be nonnegative")
        if abs(math.fsum(ws) - 0.5) > MASS_TOL:
            raise ValidationError(f"{name} weights sum to {math.fsum(ws)!r}, expected 1/2")
    angles = theoremA_angles(n)
    weights = [odd[(k - 1) // 2] if k % 2 else even[k // 2 - 1] for k in range(1, 2 * n - 1)]
    return AtomicMeasure(tuple(zip(angles, weights)))


def random_measure(atom_count: int, seed: int) -> AtomicMeasure:
    """Uniform angles and Dirichlet(1, ..., 1) weights, deterministic in ``seed``."""
    if atom_count < 1:
        raise ValidationError(f"atom_count must be >= 1, got {atom_count}")
    rng = np.random.default_rng(seed)
    angles, weights = sample_atoms(rng, atom_count, 1)
    return AtomicMeasure.from_arrays(angles[0], weights[0])


def sample_atoms(rng: np.random.Generator, atom_count: int, size: int) -> tuple[np.ndarray, np.ndarray]:
    """``size`` random measures as ``(size, K)`` arrays; weights via normalized exponentials."""
    angles = rng.uniform(0.0, TWO_PI, size=(size, atom_count))
    e = rng.standard_exponential(size=(size, atom_count))
    return angles, e / e.sum(axis=1, keepdims=True)
