"""Dual-norm evaluation and the dual growth function.

``dual_norm`` evaluates ||y||* = sup { <x, y> : ||x|| <= 1 }.  Families with
a closed form (lp <-> lq, c0 <-> l1, Lorentz d(w,1) via the maximal-ratio
formula, summing via total variation) return the exact value with gap 0.
Everything else falls back to a witness-certified search, so the reported
value is a lower bound on the true dual norm.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import search as _search
from .config import DEFAULT_DUAL_BUDGET
from .errors import InputError, UnsupportedError
from .spaces import SpaceSpec, as_coeffs, norm, ones

__all__ = [
    "DualEvaluation",
    "dual_norm",
    "dual_norm_search",
    "dual_fundamental_function",
    "duality_bracket",
    "norm_subgradient",
]


@dataclass
class DualEvaluation:
    """Result of a dual-norm evaluation.

    value is certified by the witness: <witness, y> == value and
    norm(witness) <= 1 up to tolerance.  gap is the analytic upper bound
    minus the witness value when an analytic path exists (then 0.0),
    otherwise None and the value is a lower bound only.
    """

    value: float
    witness: np.ndarray
    gap: float | None
    analytic: bool


def _signs(y: np.ndarray) -> np.ndarray:
    s = np.sign(y)
    s[s == 0] = 1.0
    return s


def _analytic_dual(spec: SpaceSpec, y: np.ndarray):
    """(value, witness) for families with a closed-form dual, else None."""
    fam = spec.family
    if fam == "lp":
        if np.all(y == 0):
            return 0.0, np.zeros_like(y)
        if spec.p == 1.0:
            k = int(np.argmax(np.abs(y)))
            w = np.zeros_like(y)
            w[k] = np.sign(y[k]) or 1.0
            return float(np.abs(y[k])), w
        q = spec.p / (spec.p - 1.0)
        a = np.abs(y)
        m = a.max()
        value = float(m * ((a / m) ** q).sum() ** (1.0 / q))
        x = _signs(y) * a ** (q - 1.0)
        x /= norm(spec, x)
        return value, x
    if fam == "c0":
        return float(np.abs(y).sum()), np.sign(y)
    if fam == "lorentz" and spec.p == 1.0:
        n = y.size
        w = spec.weights.prefix(n)
        order = np.argsort(-np.abs(y), kind="stable")
        cums = np.cumsum(np.abs(y)[order])
        W = np.cumsum(w)
        ratios = cums / W
        k = int(np.argmax(ratios))
        witness = np.zeros(n)
        witness[order[: k + 1]] = _signs(y)[order[: k + 1]] / W[k]
        return float(ratios[k]), witness
    if fam == "summing":
        d = np.diff(y, prepend=0.0)
        value = float(np.abs(d).sum())
        s = np.sign(d)
        witness = s - np.append(s[1:], 0.0)
        return value, witness
    return None


def norm_subgradient(norm_fn, y: np.ndarray, h: float = 1e-6) -> np.ndarray:
    """Central-difference subgradient of a norm at y.

    By homogeneity <g, y> approximates norm(y), and g has dual norm close
    to 1, which makes it a strong start for dual-side searches.
    """
    y = np.asarray(y, dtype=float)
    step = h * max(1.0, float(np.max(np.abs(y))))
    g = np.empty_like(y)
    for i in range(y.size):
        e = np.zeros_like(y)
        e[i] = step
        g[i] = (norm_fn(y + e) - norm_fn(y - e)) / (2.0 * step)
    return g


def dual_norm_search(
    norm_fn,
    y,
    budget: int = DEFAULT_DUAL_BUDGET,
    seed: int = 0,
    extra_starts: tuple = (),
) -> tuple[float, np.ndarray, int]:
    """Witness-certified lower bound on sup { <x, y> : norm_fn(x) <= 1 }.

    Exploits 1-unconditionality: the search runs over magnitudes in the
    nonnegative orthant with signs matched to y at the end.  Only valid for
    sign-invariant norm_fn.
    """
    y = as_coeffs(y)
    r = np.abs(y)
    signs = _signs(y)
    cands = _search.coefficient_candidates(y.size, seed=seed, signed=False)
    # profiles of |y| itself often sit near the maximizer
    if np.any(r > 0):
        base = r / r.max()
        for t in (0.25, 0.5, 1.0, 2.0, 3.0):
            cands.append(np.where(base > 0, base**t, 0.0))
        # flats on the top-k coordinates of |y|
        order = np.argsort(-r, kind="stable")
        for k in _search.dyadic_sizes(y.size):
            f = np.zeros(y.size)
            f[order[:k]] = 1.0
            cands.append(f)
    for x0 in extra_starts:
        cands.append(np.abs(np.asarray(x0, dtype=float)))

    res = _search.maximize_ratio(
        value_fn=lambda x: float(x @ r),
        norm_fn=norm_fn,
        candidates=cands,
        budget=budget,
        nonnegative=True,
    )
    x = np.abs(res.best)
    nv = norm_fn(x)
    witness = signs * x / nv
    value = float(witness @ y)
    return value, witness, res.evaluations


def dual_norm(
    spec: SpaceSpec,
    y,
    budget: int = DEFAULT_DUAL_BUDGET,
    seed: int = 0,
    method: str = "auto",
) -> DualEvaluation:
    """Dual norm of y with a certifying witness.

    method "auto" prefers the analytic path, "search" forces the numeric
    one (useful for cross-checks), "analytic" errors when no formula exists.
    """
    y = as_coeffs(y)
    if method not in ("auto", "analytic", "search"):
        raise InputError(f"unknown dual_norm method {method!r}")
    if method != "search":
        analytic = _analytic_dual(spec, y)
        if analytic is not None:
            value, witness = analytic
            return DualEvaluation(value=value, witness=witness, gap=0.0, analytic=True)
        if method == "analytic":
            raise UnsupportedError(f"no analytic dual for family {spec.family!r}")
    if budget <= 0:
        raise UnsupportedError(
            f"family {spec.family!r} has no analytic dual and the search budget is 0"
        )
    if not spec.unconditional:
        # only reachable when forcing method="search" on the summing family
        raise UnsupportedError("numeric dual search requires an unconditional family")
    value, witness, _ = dual_norm_search(
        lambda x: norm(spec, x), y, budget=budget, seed=seed
    )
    return DualEvaluation(value=value, witness=witness, gap=None, analytic=False)


def dual_fundamental_function(
    spec: SpaceSpec, n: int, budget: int = DEFAULT_DUAL_BUDGET, seed: int = 0
) -> float:
    """Dual norm of the sum of the first n dual basis vectors."""
    n = int(n)
    if n < 1:
        raise InputError("dual_fundamental_function needs n >= 1")
    return dual_norm(spec, ones(n), budget=budget, seed=seed).value


def duality_bracket(
    spec: SpaceSpec, n: int, budget: int = DEFAULT_DUAL_BUDGET, seed: int = 0
) -> float:
    """lambda(n) * mu(n) / n; lies in [1, 2] for unconditional fixtures."""
    if not spec.unconditional:
        raise InputError("the duality bracket is asserted for unconditional families only")
    from .spaces import fundamental_function

    lam = fundamental_function(spec, n)
    mu = dual_fundamental_function(spec, n, budget=budget, seed=seed)
    return lam * mu / float(n)
