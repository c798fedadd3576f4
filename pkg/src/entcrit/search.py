"""Multi-start derivative-free maximization shared by the criterion searches."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np
from scipy import optimize
from scipy.stats import qmc


@dataclass(frozen=True)
class OptimizerOptions:
    restarts: int = 32
    seed: int = 0
    xatol: float = 1e-9
    fatol: float = 1e-12
    maxiter: Optional[int] = None


@dataclass(frozen=True)
class SearchResult:
    x: np.ndarray
    value: float
    starts: int
    iterations: int
    converged: bool
    residual: float


def _simplex_diameter(simplex: np.ndarray) -> float:
    diffs = simplex[:, None, :] - simplex[None, :, :]
    return float(np.max(np.linalg.norm(diffs, axis=-1)))


def multistart_maximize(
    fun: Callable[[np.ndarray], float],
    lower,
    upper,
    options: Optional[OptimizerOptions] = None,
    warm_starts: Sequence = (),
) -> SearchResult:
    """Nelder-Mead refinement from warm starts plus scrambled-Halton points.

    The highest refined value wins; ties keep the earliest start, so the
    outcome is independent of evaluation order and fixed by the seed.
    """
    opts = options or OptimizerOptions()
    lower = np.asarray(lower, dtype=float)
    upper = np.asarray(upper, dtype=float)
    dim = lower.size

    starts = [np.asarray(w, dtype=float).reshape(dim) for w in warm_starts]
    if opts.restarts > 0:
        sampler = qmc.Halton(d=dim, scramble=True, seed=opts.seed)
        unit = sampler.random(opts.restarts)
        starts.extend(lower + unit * (upper - lower))
    if not starts:
        raise ValueError("need at least one start point")

    nm_options = {"xatol": opts.xatol, "fatol": opts.fatol}
    if opts.maxiter is not None:
        nm_options["maxiter"] = opts.maxiter

    best = None
    best_value = -np.inf
    total_iterations = 0
    for x0 in starts:
        res = optimize.minimize(
            lambda x: -fun(x), x0, method="Nelder-Mead", options=nm_options
        )
        total_iterations += int(res.nit)
        value = -float(res.fun)
        # a later start must beat the incumbent by a clear margin, so warm
        # starts win numerical ties and results stay reproducible
        if best is None or value > best_value + 1e-9 * max(1.0, abs(best_value)):
            best = res
            best_value = value

    return SearchResult(
        x=np.asarray(best.x, dtype=float),
        value=best_value,
        starts=len(starts),
        iterations=total_iterations,
        converged=bool(best.success),
        residual=_simplex_diameter(best.final_simplex[0]),
    )
