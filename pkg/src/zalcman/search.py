"""Brute-force maximization of the functional over class representations.

For the measure classes the search space is K-atom probability measures:
angles in [0, 2 pi) and weights on the simplex. Two stages:

1. coarse: angle tuples on a regular grid (first atom pinned at 0, which
   costs nothing since rotations leave ``|functional|`` unchanged) crossed
   with a simplex lattice of weights (K <= 4) or random simplex points;
2. refine: a derivative-free pattern search over angles and weights,
   started from the best coarse points and from seeded random restarts.

Everything is deterministic given ``SearchConfig.seed``. For the class
H(r) the maximum of ``lam |a_n|^2 + |a_{2n-1}|`` is attained at a vertex of
a triangle; :func:`h_search` evaluates the vertices and cross-checks with a
dense lattice on the triangle.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field, replace

import numpy as np

from .classes import (ClassSpec, CoefficientClass, NoshiroWarschawski, WeightProfile,
                      has_measure_representation, h_extremal, s_factor, series_from_measure)
from .errors import UnsupportedClassError, ValidationError
from .functionals import (R2_DIVIDED, BoundResult, FunctionalSpec, bound_for, bound_H,
                          ma_reference, r_threshold, zalcman)
from .measures import TWO_PI, AtomicMeasure
from .series import default_order

SOUNDNESS_TOL = 1e-9


@dataclass(frozen=True)
class SearchConfig:
    atom_count: int | None = None       # None: 2 max(n, m) - 2
    angle_grid: int = 720
    weight_grid: int = 8                # simplex lattice denominator, K <= 4
    coarse_samples: int = 2048          # angle tuples in the coarse stage
    refine_from: int = 4                # best coarse points that get refined
    restarts: int = 20
    refine_iters: int = 3000
    seed: int = 0
    tolerance: float = 1e-10

    def __post_init__(self):
        counts = {"angle_grid": self.angle_grid, "weight_grid": self.weight_grid,
                  "coarse_samples": self.coarse_samples, "refine_iters": self.refine_iters}
        if self.atom_count is not None:
            counts["atom_count"] = self.atom_count
        for name, value in counts.items():
            if int(value) != value or value < 1:
                raise ValidationError(f"{name} must be a positive integer, got {value!r}")
        if self.restarts < 0 or self.refine_from < 0:
            raise ValidationError("restarts and refine_from must be nonnegative")
        if not self.tolerance > 0:
            raise ValidationError(f"tolerance must be positive, got {self.tolerance!r}")

    def atoms_for(self, spec: FunctionalSpec) -> int:
        if self.atom_count is not None:
            return self.atom_count
        return max(1, 2 * max(spec.n, spec.m) - 2)


@dataclass
class SearchReport:
    class_label: str
    spec: FunctionalSpec
    best_value: float
    best_config: AtomicMeasure | dict
    bound: BoundResult
    evaluations: int
    seed: int
    converged: bool = True
    profile: str = ""
    references: dict = field(default_factory=dict)
    note: str = ""

    @property
    def gap(self) -> float:
        if not self.bound.applicable:
            return math.nan
        return self.bound.value - self.best_value

    @property
    def sound(self) -> bool:
        return not self.bound.applicable or self.gap >= -SOUNDNESS_TOL


class _Objective:
    """Vectorized ``|lam a_n a_m - a_{n+m-1}|`` for stacks of K-atom measures."""

    def __init__(self, cls: ClassSpec, spec: FunctionalSpec):
        self.lam = spec.lam
        self.ks = np.array([spec.n - 1, spec.m - 1, spec.top - 1], dtype=float)
        self.scale = np.array([s_factor(cls, spec.n), s_factor(cls, spec.m), s_factor(cls, spec.top)])
        self.calls = 0

    def __call__(self, angles: np.ndarray, weights: np.ndarray) -> np.ndarray:
        # angles, weights: (B, K)
        self.calls += angles.shape[0]
        phases = np.exp(1j * angles[:, None, :] * self.ks[None, :, None])   # (B, 3, K)
        a = self.scale * np.einsum("bjk,bk->bj", phases, weights)
        return np.abs(self.lam * a[:, 0] * a[:, 1] - a[:, 2])


def simplex_lattice(K: int, denominator: int) -> np.ndarray:
    """All points of the simplex with coordinates in ``{0, 1/d, ..., 1}``."""
    pts = [c for c in itertools.product(range(denominator + 1), repeat=K - 1) if sum(c) <= denominator]
    arr = np.array([list(c) + [denominator - sum(c)] for c in pts], dtype=float)
    return arr / denominator


def _coarse_angles(K: int, cfg: SearchConfig, rng: np.random.Generator) -> np.ndarray:
    grid = TWO_PI * np.arange(cfg.angle_grid) / cfg.angle_grid
    if K == 1:
        return np.zeros((1, 1))
    if cfg.angle_grid ** (K - 1) <= cfg.coarse_samples:
        rest = np.array(list(itertools.product(range(cfg.angle_grid), repeat=K - 1)))
    else:
        rest = rng.integers(0, cfg.angle_grid, size=(cfg.coarse_samples, K - 1))
    return np.hstack([np.zeros((rest.shape[0], 1)), grid[rest]])


def _coarse_weights(K: int, cfg: SearchConfig, rng: np.random.Generator) -> np.ndarray:
    if K <= 4:
        return simplex_lattice(K, cfg.weight_grid)
    e = rng.standard_exponential(size=(64, K))
    return np.vstack([np.eye(K)[:1], e / e.sum(axis=1, keepdims=True)])


def _coarse_stage(obj: _Objective, K: int, cfg: SearchConfig, rng: np.random.Generator):
    angles = _coarse_angles(K, cfg, rng)
    weights = _coarse_weights(K, cfg, rng)
    best_vals, best_idx = [], []
    chunk = max(1, 200_000 // max(1, weights.shape[0]))
    for start in range(0, angles.shape[0], chunk):
        A = angles[start:start + chunk]
        AA = np.repeat(A, weights.shape[0], axis=0)
        WW = np.tile(weights, (A.shape[0], 1))
        vals = obj(AA, WW)
        best_vals.append(vals)
        best_idx.append(np.stack([np.repeat(np.arange(start, start + A.shape[0]), weights.shape[0]),
                                  np.tile(np.arange(weights.shape[0]), A.shape[0])], axis=1))
    vals = np.concatenate(best_vals)
    idx = np.concatenate(best_idx)
    # stable sort: ties resolve to the earliest grid point
    order = np.argsort(-vals, kind="stable")[:cfg.refine_from]
    return [(angles[idx[i, 0]].copy(), weights[idx[i, 1]].copy()) for i in order]


def _project(w: np.ndarray) -> np.ndarray:
    w = np.clip(w, 0.0, None)
    total = w.sum(axis=-1, keepdims=True)
    return w / total


def pattern_search(obj: _Objective, theta: np.ndarray, w: np.ndarray, cfg: SearchConfig):
    """Maximize ``obj`` by polling +/- steps on every angle and weight.

    The best improving poll point is taken; when none improves, both step
    sizes halve. Weights are clipped at zero and renormalized after each
    move. Returns ``(value, theta, w, converged)``.
    """
    K = theta.size
    h_t, h_w = math.pi / 8, 0.125
    current = obj(theta[None], w[None])[0]
    eye = np.eye(K)
    n_weight_moves = 2 * K if K > 1 else 0
    for _ in range(cfg.refine_iters):
        if h_t < cfg.tolerance and h_w < cfg.tolerance:
            return current, theta, w, True
        cand_t = np.vstack([theta + h_t * eye, theta - h_t * eye,
                            np.repeat(theta[None], n_weight_moves, axis=0)])
        if K > 1:
            cand_w = np.vstack([np.repeat(w[None], 2 * K, axis=0),
                                _project(w + h_w * eye), _project(w - h_w * eye)])
        else:
            cand_w = np.repeat(w[None], 2 * K, axis=0)
        vals = obj(cand_t, cand_w)
        best = int(np.argmax(vals))
        if vals[best] > current:
            current = vals[best]
            theta = np.mod(cand_t[best], TWO_PI)
            w = cand_w[best]
        else:
            h_t *= 0.5
            h_w *= 0.5
    return current, theta, w, False


def brute_force_max(cls: ClassSpec, spec: FunctionalSpec, cfg: SearchConfig = SearchConfig(),
                    r2_reading: str = R2_DIVIDED) -> SearchReport:
    if not has_measure_representation(cls):
        raise UnsupportedClassError(f"{cls!r} has no measure representation; use h_search")
    K = cfg.atoms_for(spec)
    obj = _Objective(cls, spec)
    root = np.random.SeedSequence(cfg.seed)
    coarse_seq, *restart_seqs = root.spawn(1 + cfg.restarts)

    starts = _coarse_stage(obj, K, cfg, np.random.default_rng(coarse_seq))
    for seq in restart_seqs:
        rng = np.random.default_rng(seq)
        theta = rng.uniform(0.0, TWO_PI, K)
        e = rng.standard_exponential(K)
        starts.append((theta, e / e.sum()))

    # each start is independent; merge by value, ties to the lowest index
    best = None
    for idx, (theta, w) in enumerate(starts):
        value, theta, w, conv = pattern_search(obj, theta, w, cfg)
        if best is None or value > best[0]:
            best = (value, theta, w, conv, idx)

    _, theta, w, conv, _ = best
    mu = AtomicMeasure.from_arrays(theta, w / math.fsum(w))
    series = series_from_measure(cls, mu, default_order(spec.n, spec.m))
    value = abs(zalcman(series, spec))
    return SearchReport(
        class_label=cls.label, spec=spec, best_value=float(value), best_config=mu,
        bound=bound_for(cls, spec, r2_reading), evaluations=obj.calls, seed=cfg.seed,
        converged=conv, references=reference_values(cls, spec))


def reference_values(cls: ClassSpec, spec: FunctionalSpec) -> dict:
    """Comparison values recorded next to empirical maxima; none is asserted."""
    refs = {"ma_conjecture": float(ma_reference(spec.n, spec.m)),
            "max_abs_top_coefficient": s_factor(cls, spec.top)}
    if isinstance(cls, NoshiroWarschawski):
        b = cls.beta
        refs["threshold"] = r_threshold(b, spec.n, spec.m)
        refs["large_lambda_formula"] = (4 * spec.lam * (1 - b) ** 2 / (spec.n * spec.m)
                                        - 2 * (1 - b) / spec.top)
        refs["diagonal_small_lambda_value"] = 2 * (1 - b) / spec.top
    else:
        refs["lambda_minus_1"] = spec.lam - 1.0
        refs["diagonal_bound"] = 1.0
    return refs


def triangle_lattice(steps: int) -> tuple[np.ndarray, np.ndarray]:
    """Barycentric lattice ``(s, t)``, ``s, t >= 0``, ``s + t <= 1``, step ``1/steps``."""
    i, j = np.meshgrid(np.arange(steps + 1), np.arange(steps + 1), indexing="ij")
    keep = i + j <= steps
    return i[keep] / steps, j[keep] / steps


def triangle_grid_max(lam: float, q_n: float, q_2n1: float, steps: int = 1000,
                      lattice: tuple[np.ndarray, np.ndarray] | None = None) -> float:
    """Dense-grid maximum of ``lam u^2 + v`` on ``u, v >= 0``, ``q_n u + q_2n1 v <= 1``.

    Points are ``u = s / q_n``, ``v = t / q_2n1`` on the barycentric lattice,
    so all three corners of the triangle lie on the grid.
    """
    s, t = triangle_lattice(steps) if lattice is None else lattice
    u = s / q_n
    v = t / q_2n1
    return float(np.max(lam * u * u + v))


def h_search(profile: WeightProfile, lam: float, n: int, grid_steps: int = 1000,
             seed: int = 0) -> SearchReport:
    """Maximize ``|lam a_n^2 - a_{2n-1}|`` over H(r) via ``(|a_n|, |a_{2n-1}|)``."""
    spec = FunctionalSpec(lam, n, n)
    qn, qt = profile.r(n), profile.r(2 * n - 1)
    # objective at the vertices (1/qn, 0) and (0, 1/qt); the origin gives 0
    values = {"a_n": lam / qn ** 2, "a_top": 1.0 / qt}
    winner = max(values, key=values.get)
    best = values[winner]
    grid_best = triangle_grid_max(lam, qn, qt, grid_steps)
    evaluations = 2 + (grid_steps + 1) * (grid_steps + 2) // 2
    k = n if winner == "a_n" else 2 * n - 1
    attainer = h_extremal(profile, k, 1.0, default_order(n, n))
    config = {"coefficients": {str(k): [attainer.coeff(k).real, attainer.coeff(k).imag]},
              "grid_max": grid_best,
              "vertex_values": values}
    return SearchReport(
        class_label=CoefficientClass(profile).label, spec=spec, best_value=float(best),
        best_config=config, bound=bound_H(profile, lam, n), evaluations=evaluations, seed=seed,
        profile=profile.label,
        note="" if abs(grid_best - best) <= 1e-6 else "grid and vertex maxima disagree")


def probe_open_range(cls: ClassSpec, lambda_grid, spec_nm: tuple[int, int],
                     cfg: SearchConfig = SearchConfig(), r2_reading: str = R2_DIVIDED) -> list[SearchReport]:
    """Empirical maxima across ``lambda_grid``; cells a theorem covers are annotated."""
    n, m = spec_nm
    reports = []
    for lam in lambda_grid:
        spec = FunctionalSpec(lam, n, m)
        if isinstance(cls, CoefficientClass):
            rep = h_search(cls.profile, lam, n, seed=cfg.seed)
        else:
            rep = brute_force_max(cls, spec, cfg, r2_reading)
        rep.note = "theorem range" if rep.bound.applicable else "open range"
        reports.append(rep)
    return reports


def with_seed(cfg: SearchConfig, seed: int) -> SearchConfig:
    return replace(cfg, seed=seed)
