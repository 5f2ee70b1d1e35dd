"""One-dimensional verification of the global envelope bounds over r.

The two constants attached to each weighted C^2 norm admit sigma-free
envelopes in r: the max-norm domination factor is bounded by
(1 + |r|) / (1 + r^2) <= 1.21, and the multiplication defect divided by
sigma is bounded by 2.  Both objectives are piecewise-smooth rationals, so
a dense grid (with the |.| kink points included exactly), golden-section
refinement around the best cell, and tail probes are an adequate global
search.  A randomized bilinear sampler provides an independent lower bound
on the true multiplication constant.
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .c2norms import DEFAULT_SEED, NormParams, c_constant, d_constant

__all__ = [
    "DEFAULT_BRACKET",
    "DEFAULT_GRID",
    "D_CLAIMED_BOUND",
    "C_CLAIMED_BOUND",
    "GridSearchResult",
    "BoundCheckResult",
    "d_envelope",
    "maximize_over_r",
    "verify_d_bound",
    "verify_c_bound",
    "bilinear_norm_sample",
]

DEFAULT_BRACKET = (-50.0, 50.0)
DEFAULT_GRID = 10_000
DEFAULT_REFINE_TOL = 1e-10

D_CLAIMED_BOUND = 1.21
C_CLAIMED_BOUND = 2.0
D_SIGMA_GRID = (1.0, 2.0, 5.0, 10.0, 20.0, 50.0, 100.0)
C_SIGMA_GRID = (1.0, 2.0, 5.0, 10.0, 50.0, 100.0)

_BOUND_REL_TOL = 1e-9
_KINKS = (-1.0, 0.0, 1.0)  # |.| kink points of both objectives
_TAIL_PROBES = (-1e3, 1e3)
_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0
_MAX_REFINE_ITERATIONS = 200


@dataclass(frozen=True)
class GridSearchResult:
    max_value: float
    argmax_r: float
    grid_points: int
    refinement_iterations: int


@dataclass(frozen=True)
class BoundCheckResult:
    """Outcome of one global bound verification."""

    max_value: float
    argmax_r: float
    grid_points: int
    refinement_iterations: int
    claimed_bound: float
    satisfied: bool

    def to_json_dict(self) -> dict:
        return dataclasses.asdict(self)


def d_envelope(r: float) -> float:
    """sigma-free envelope of the max-norm domination factor."""
    return (1.0 + abs(r)) / (1.0 + r * r)


def maximize_over_r(
    objective: Callable[[float], float],
    bracket: tuple[float, float] = DEFAULT_BRACKET,
    grid: int = DEFAULT_GRID,
    refine_tol: float = DEFAULT_REFINE_TOL,
) -> GridSearchResult:
    """Coarse grid scan plus golden-section refinement around the best cell.

    The kink points {-1, 0, 1} are always inserted into the grid exactly.
    Raises ValueError if the objective is non-finite anywhere on the grid,
    naming the offending r.
    """
    lo, hi = float(bracket[0]), float(bracket[1])
    if not lo < hi:
        raise ValueError(f"bracket must satisfy lo < hi, got ({lo!r}, {hi!r})")
    if grid < 3:
        raise ValueError(f"grid must be >= 3, got {grid}")

    points = set(np.linspace(lo, hi, int(grid)).tolist())
    points.update(k for k in _KINKS if lo <= k <= hi)
    rs = sorted(points)
    values = []
    for rr in rs:
        v = float(objective(rr))
        if not math.isfinite(v):
            raise ValueError(f"objective is not finite at r = {rr!r}")
        values.append(v)
    best = max(range(len(rs)), key=values.__getitem__)
    best_r, best_value = rs[best], values[best]

    a = rs[max(best - 1, 0)]
    b = rs[min(best + 1, len(rs) - 1)]
    iterations = 0
    if b > a:
        c = b - _GOLDEN * (b - a)
        d = a + _GOLDEN * (b - a)
        fc, fd = objective(c), objective(d)
        while (b - a) > refine_tol and iterations < _MAX_REFINE_ITERATIONS:
            if fc >= fd:
                b, d, fd = d, c, fc
                c = b - _GOLDEN * (b - a)
                fc = objective(c)
            else:
                a, c, fc = c, d, fd
                d = a + _GOLDEN * (b - a)
                fd = objective(d)
            iterations += 1
        mid = 0.5 * (a + b)
        fmid = float(objective(mid))
        if math.isfinite(fmid) and fmid > best_value:
            best_r, best_value = mid, fmid
    return GridSearchResult(best_value, best_r, len(rs), iterations)


def verify_d_bound(
    bracket: tuple[float, float] = DEFAULT_BRACKET,
    grid: int = DEFAULT_GRID,
    sigma_grid: Sequence[float] = D_SIGMA_GRID,
) -> BoundCheckResult:
    """Check the 1.21 bound on the max-norm domination factor.

    Maximizes the sigma-free envelope over r and, independently, the exact
    factor over a sigma grid.  The envelope is even in r, so the reported
    argmax is its nonnegative representative.
    """
    env = maximize_over_r(d_envelope, bracket, grid)
    best_value = env.max_value
    best_r = abs(env.argmax_r)
    iterations = env.refinement_iterations
    for s in sigma_grid:
        res = maximize_over_r(lambda rr: d_constant(NormParams(rr, s)), bracket, grid)
        if res.max_value > best_value:
            best_value, best_r, iterations = res.max_value, res.argmax_r, res.refinement_iterations
    for rr in _TAIL_PROBES:
        tail = d_envelope(rr)
        if tail > best_value:
            best_value, best_r = tail, rr
    return BoundCheckResult(
        max_value=best_value,
        argmax_r=best_r,
        grid_points=env.grid_points,
        refinement_iterations=iterations,
        claimed_bound=D_CLAIMED_BOUND,
        satisfied=best_value <= D_CLAIMED_BOUND * (1.0 + _BOUND_REL_TOL),
    )


def verify_c_bound(
    bracket: tuple[float, float] = DEFAULT_BRACKET,
    grid: int = DEFAULT_GRID,
    sigma_grid: Sequence[float] = C_SIGMA_GRID,
) -> BoundCheckResult:
    """Check that the multiplication defect never exceeds 2*sigma.

    Maximizes c_constant(r, sigma)/sigma over r for each sigma in the grid
    and reports the overall worst case against the claimed bound 2.
    """
    if not sigma_grid:
        raise ValueError("sigma_grid must be nonempty")
    best_value = -math.inf
    best_r = 0.0
    grid_points = 0
    iterations = 0
    for s in sigma_grid:
        objective = lambda rr, s=s: c_constant(NormParams(rr, s)) / s
        res = maximize_over_r(objective, bracket, grid)
        candidates = [(res.max_value, res.argmax_r)]
        candidates.extend((objective(rr), rr) for rr in _TAIL_PROBES)
        for value, rr in candidates:
            if value > best_value:
                best_value, best_r = value, rr
                grid_points, iterations = res.grid_points, res.refinement_iterations
    return BoundCheckResult(
        max_value=best_value,
        argmax_r=best_r,
        grid_points=grid_points,
        refinement_iterations=iterations,
        claimed_bound=C_CLAIMED_BOUND,
        satisfied=best_value <= C_CLAIMED_BOUND * (1.0 + _BOUND_REL_TOL),
    )


def bilinear_norm_sample(
    p: NormParams,
    samples: int,
    seed: int = DEFAULT_SEED,
    chunk: int = 1 << 18,
) -> float:
    """Max sampled ratio c2_norm(v1*v2) / (c2_norm(v1) * c2_norm(v2)).

    Vectors are drawn with uniform phases and magnitudes; dividing by the
    norms is equivalent to normalizing first.  The result is a certified
    lower bound on the true multiplicative constant, and never exceeds
    c_constant(p).  Deterministic for a fixed seed.
    """
    if samples < 1:
        raise ValueError(f"samples must be >= 1, got {samples}")
    rng = np.random.default_rng(seed)
    r, s = p.r, p.sigma
    best = 0.0
    remaining = samples
    while remaining > 0:
        count = min(remaining, chunk)
        remaining -= count
        mag = rng.uniform(0.0, 1.0, size=(4, count))
        phase = rng.uniform(0.0, 2.0 * math.pi, size=(4, count))
        z = mag * np.exp(1j * phase)
        x1, y1, x2, y2 = z
        n1 = np.maximum(np.abs(x1 + r * y1), s * np.abs(y1 - r * x1))
        n2 = np.maximum(np.abs(x2 + r * y2), s * np.abs(y2 - r * x2))
        xp, yp = x1 * x2, y1 * y2
        num = np.maximum(np.abs(xp + r * yp), s * np.abs(yp - r * xp))
        den = n1 * n2
        mask = den >= 1e-300
        if mask.any():
            best = max(best, float((num[mask] / den[mask]).max()))
    return best
