"""Shared witness-search machinery.

Every optimum this package reports is a certified lower bound: the search
returns a feasible vector together with the ratio it achieves, and callers
re-evaluate that ratio to certify the bound.  The same candidate pool and
coordinate-ascent refinement back the dual-norm, equivalence-constant,
projection-norm and operator-norm estimates.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .config import DEFAULT_RESTARTS

# multiplicative step sizes for the ascent, coarse to fine
_DELTAS = (1.0, 0.25, 0.0625, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6, 1e-7, 1e-8)


@dataclass
class SearchResult:
    best: np.ndarray
    ratio: float
    evaluations: int
    exhausted: bool


def dyadic_sizes(n: int) -> list[int]:
    """1, 2, 4, ... capped at n, with n itself appended."""
    ks = [1]
    while ks[-1] * 2 <= n:
        ks.append(ks[-1] * 2)
    if ks[-1] != n:
        ks.append(n)
    return ks


def coefficient_candidates(
    n: int,
    seed: int = 0,
    n_random: int = DEFAULT_RESTARTS,
    signed: bool = True,
) -> list[np.ndarray]:
    """Deterministic candidate pool of length-n coefficient vectors.

    Contains coordinate vectors, flat +/- sign patterns, decreasing
    staircases, geometric decays and seeded random vectors.  Candidates are
    generated per support size with child seeds, so the pool for a smaller
    n is a prefix-padded subset of the pool for a larger n.
    """
    ks = dyadic_sizes(n)
    pool: list[np.ndarray] = []

    def padded(v: np.ndarray) -> np.ndarray:
        out = np.zeros(n)
        out[: v.size] = v
        return out

    for k in ks:
        e = np.zeros(n)
        e[k - 1] = 1.0
        pool.append(e)
        pool.append(padded(np.ones(k)))
        if signed and k > 1:
            alt = np.ones(k)
            alt[1::2] = -1.0
            pool.append(padded(alt))
        if k > 1:
            pool.append(padded(np.arange(k, 0, -1, dtype=float)))
    for r in (0.5, 0.9):
        pool.append(r ** np.arange(n, dtype=float))

    per_k = max(1, n_random // len(ks))
    for k in ks:
        rng = np.random.default_rng(np.random.SeedSequence([seed, k, 0xC0FFEE]))
        for _ in range(per_k):
            v = rng.standard_normal(k)
            if not signed:
                v = np.abs(v)
            pool.append(padded(v))
    return pool


def _ratio(value_fn, norm_fn, x) -> float:
    nv = norm_fn(x)
    if not np.isfinite(nv) or nv <= 0.0:
        return -np.inf
    return value_fn(x) / nv


def coordinate_ascent(
    value_fn: Callable[[np.ndarray], float],
    norm_fn: Callable[[np.ndarray], float],
    x0: np.ndarray,
    budget: int,
    nonnegative: bool = False,
) -> tuple[np.ndarray, float, int]:
    """Greedy single-coordinate local search on value(x)/norm(x).

    Multiplicative rescaling of one coordinate at a time (the ratio is
    scale-invariant, so no global renormalization is needed), with a
    shrinking step schedule.  Returns (best x, best ratio, evals used).
    """
    x = np.array(x0, dtype=float)
    best = _ratio(value_fn, norm_fn, x)
    evals = 1
    n = x.size
    silent = 0
    for delta in _DELTAS:
        improved_at_level = False
        for _ in range(4):  # a few sweeps per step size
            improved = False
            for i in range(n):
                if evals >= budget:
                    return x, best, evals
                xi = x[i]
                scale = np.max(np.abs(x)) or 1.0
                if xi == 0.0:
                    trials = [delta * scale, -delta * scale] if not nonnegative else [delta * scale]
                else:
                    trials = [xi * (1.0 + delta), xi / (1.0 + delta)]
                    if delta >= 0.25:
                        trials.append(0.0)
                for t in trials:
                    if evals >= budget:
                        return x, best, evals
                    x[i] = t
                    r = _ratio(value_fn, norm_fn, x)
                    evals += 1
                    if r > best:
                        best = r
                        xi = t
                        improved = True
                    else:
                        x[i] = xi
            if improved:
                improved_at_level = True
            else:
                break
        silent = 0 if improved_at_level else silent + 1
        if silent >= 2:
            break  # locally flat at two consecutive step sizes
    return x, best, evals


def maximize_ratio(
    value_fn: Callable[[np.ndarray], float],
    norm_fn: Callable[[np.ndarray], float],
    candidates: Sequence[np.ndarray],
    budget: int,
    n_ascend: int = 3,
    nonnegative: bool = False,
) -> SearchResult:
    """Maximize value(x)/norm(x) over a candidate pool plus local ascent.

    The returned ratio is always achieved by the returned vector, so it is
    a sound lower bound on the true supremum regardless of search quality.
    """
    evals = 0
    scored: list[tuple[float, int]] = []
    best_x: np.ndarray | None = None
    best_r = -np.inf
    for idx, c in enumerate(candidates):
        if evals >= budget:
            break
        r = _ratio(value_fn, norm_fn, c)
        evals += 1
        if np.isfinite(r):
            scored.append((r, idx))
        if r > best_r:
            best_r, best_x = r, np.array(c, dtype=float)
    exhausted = evals >= budget
    scored.sort(key=lambda t: -t[0])
    for r0, idx in scored[:n_ascend]:
        if evals >= budget:
            exhausted = True
            break
        x, r, used = coordinate_ascent(
            value_fn, norm_fn, candidates[idx], budget - evals, nonnegative=nonnegative
        )
        evals += used
        if r > best_r:
            best_r, best_x = r, x
    if best_x is None:
        best_x = np.array(candidates[0], dtype=float)
        best_r = _ratio(value_fn, norm_fn, best_x)
        evals += 1
    return SearchResult(best=best_x, ratio=float(best_r), evaluations=evals, exhausted=exhausted)
