"""Deterministic bounded scalar optimization.

Grid-seeded golden-section search.  Derivative-free on purpose: the
objectives this package minimizes contain g(W/delta) terms whose derivative
is unbounded near the interval edge, where gradient steps misbehave.

Determinism: identical inputs produce bit-identical results.  Plateau
tie-break: the smallest argument wins (documented, tested).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError

_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0
_INVPHI2 = (3.0 - math.sqrt(5.0)) / 2.0
DEFAULT_GRID_POINTS = 64
_OPEN_OFFSET = 1e-12


@dataclass(frozen=True)
class ScalarOptResult:
    arg: float
    value: float
    evaluations: int
    converged: bool


def _as_value(y) -> float:
    y = float(y)
    return math.inf if math.isnan(y) else y


def minimize_scalar(objective, lo: float, hi: float, *, lo_open: bool = False,
                    tol: float = 1e-9, grid_points: int = DEFAULT_GRID_POINTS,
                    seed_grid=None) -> ScalarOptResult:
    """Minimize a scalar objective on [lo, hi] (half-open at lo if lo_open).

    A coarse seed grid (log-spaced for half-open intervals, where the
    objective may diverge at the open endpoint; linear otherwise) locates a
    candidate bracket, which golden-section search then shrinks to `tol`.
    The objective may return +inf (or nan, treated as +inf) anywhere.

    Returns the best evaluated point; on a plateau the smallest argument is
    reported.  If every evaluation is +inf the result is non-converged.
    """
    lo, hi = float(lo), float(hi)
    if lo > hi:
        raise DomainError("minimize_scalar requires lo <= hi")
    evaluations = 0

    def f(x: float) -> float:
        nonlocal evaluations
        evaluations += 1
        return _as_value(objective(x))

    if lo == hi:
        if lo_open:
            raise DomainError("empty open interval")
        v = f(lo)
        return ScalarOptResult(lo, v, evaluations, math.isfinite(v))

    lo_eff = lo + _OPEN_OFFSET if lo_open else lo
    lo_eff = min(lo_eff, hi)
    if seed_grid is not None:
        grid = np.unique(np.clip(np.asarray(seed_grid, dtype=float), lo_eff, hi))
    elif lo_open and lo_eff > 0 and hi > 0:
        grid = np.geomspace(lo_eff, hi, grid_points)
    else:
        grid = np.linspace(lo_eff, hi, grid_points)

    best_x, best_v = grid[0], math.inf
    vals = np.empty(len(grid))
    for i, x in enumerate(grid):
        vals[i] = v = f(float(x))
        if v < best_v:
            best_x, best_v = float(x), v
    if not math.isfinite(best_v):
        return ScalarOptResult(float(grid[0]), best_v, evaluations, False)

    i = int(np.argmin(vals))  # first minimum = smallest argument on ties
    a = float(grid[max(i - 1, 0)])
    b = float(grid[min(i + 1, len(grid) - 1)])

    def consider(x: float, v: float):
        nonlocal best_x, best_v
        if v < best_v or (v == best_v and x < best_x):
            best_x, best_v = x, v

    h = b - a
    if h > tol:
        n = int(math.ceil(math.log(tol / h) / math.log(_INVPHI)))
        c = a + _INVPHI2 * h
        d = a + _INVPHI * h
        fc = f(c)
        fd = f(d)
        consider(c, fc)
        consider(d, fd)
        for _ in range(max(n - 1, 0)):
            if fc <= fd:  # ties keep the left interval -> smaller arguments
                b, d, fd = d, c, fc
                h *= _INVPHI
                c = a + _INVPHI2 * h
                fc = f(c)
                consider(c, fc)
            else:
                a, c, fc = c, d, fd
                h *= _INVPHI
                d = a + _INVPHI * h
                fd = f(d)
                consider(d, fd)
    return ScalarOptResult(best_x, best_v, evaluations, True)


def maximize_scalar(objective, lo: float, hi: float, *, lo_open: bool = False,
                    tol: float = 1e-9, grid_points: int = DEFAULT_GRID_POINTS,
                    seed_grid=None) -> ScalarOptResult:
    """Maximize `objective`; same contract as :func:`minimize_scalar` with
    the orientation flipped (nan and -inf count as worst)."""
    res = minimize_scalar(lambda x: -_as_value(objective(x)), lo, hi,
                          lo_open=lo_open, tol=tol, grid_points=grid_points,
                          seed_grid=seed_grid)
    return ScalarOptResult(res.arg, -res.value, res.evaluations, res.converged)
