"""Natural projections onto generated block bases and related estimates.

The natural projection applies one norming functional beta per block:

    P x = sum_i <beta, x restricted to block i> * U_i

It is idempotent, fixes the generated blocks, and its norm is estimated by
the same witness-search machinery as the equivalence constants (never by
power iteration, which is specific to Euclidean norms).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import search as _search
from .blocks import GeneratedBlockSpec, expand
from .config import DEFAULT_BUDGET, DEFAULT_DUAL_BUDGET, N_MAX, TAU_SEARCH
from .duality import dual_norm, norm_subgradient
from .errors import InputError, UnsupportedError
from .spaces import SpaceSpec, as_coeffs, norm, norm_batch


@dataclass
class NormingFunctional:
    """beta with <beta, alpha> = 1.  certified means the dual norm of beta
    is known (analytically) to be <= 1 + TAU_SEARCH; otherwise dual_bound
    is only a witness-backed lower estimate and the flag is False."""

    beta: np.ndarray
    dual_bound: float
    certified: bool


@dataclass
class ProjectionReport:
    norm_lower: float
    witness: np.ndarray
    idempotency_residual: float
    exhausted: bool = False


@dataclass
class DiagonalCompression:
    diag_norm_lower: float
    T_norm_lower: float
    diag_witness: np.ndarray
    T_witness: np.ndarray


def _signs(v: np.ndarray) -> np.ndarray:
    s = np.sign(v)
    s[s == 0] = 1.0
    return s


def norming_functional(
    spec: SpaceSpec,
    alpha,
    budget: int = DEFAULT_DUAL_BUDGET,
    seed: int = 0,
) -> NormingFunctional:
    """Biorthogonal functional for a unit vector alpha.

    Closed forms: lp uses the conjugate vector sign(alpha)|alpha|^(p-1),
    c0 a coordinate functional at the peak, Lorentz d(w,1) the rank-matched
    weight profile, summing a tail indicator at the norming index.  For the
    remaining families beta is a finite-difference subgradient of the norm
    at alpha; its dual norm cannot be certified from above, so the result
    is flagged instead of silently accepted."""
    alpha = as_coeffs(alpha)
    na = norm(spec, alpha)
    if na == 0.0:
        raise InputError("alpha must be nonzero")
    if abs(na - 1.0) > TAU_SEARCH:
        raise InputError("alpha must be a unit vector")
    fam = spec.family
    if fam == "lp":
        if spec.p == 1.0:
            beta = np.where(alpha != 0, _signs(alpha), 0.0)
        else:
            beta = _signs(alpha) * np.abs(alpha) ** (spec.p - 1.0)
    elif fam == "c0":
        k = int(np.argmax(np.abs(alpha)))
        beta = np.zeros_like(alpha)
        beta[k] = _signs(alpha)[k]
    elif fam == "lorentz" and spec.p == 1.0:
        order = np.argsort(-np.abs(alpha), kind="stable")
        k = int(np.count_nonzero(alpha))
        w = spec.weights.prefix(alpha.size)
        beta = np.zeros_like(alpha)
        beta[order[:k]] = _signs(alpha)[order[:k]] * w[:k]
    elif fam == "summing":
        tails = np.cumsum(alpha[::-1])[::-1]
        i = int(np.argmax(np.abs(tails)))
        beta = np.zeros_like(alpha)
        beta[i:] = np.sign(tails[i]) or 1.0
    else:
        beta = norm_subgradient(lambda v: norm(spec, v), alpha)
    pairing = float(beta @ alpha)
    if pairing == 0.0:
        raise InputError("failed to construct a norming functional")
    beta = beta / pairing

    ev = None
    try:
        ev = dual_norm(spec, beta, budget=0, method="analytic")
    except UnsupportedError:
        pass
    if ev is not None:
        return NormingFunctional(
            beta=beta, dual_bound=ev.value, certified=ev.value <= 1.0 + TAU_SEARCH
        )
    lower = dual_norm(spec, beta, budget=budget, seed=seed, method="search").value
    return NormingFunctional(beta=beta, dual_bound=lower, certified=False)


def block_projection(bspec: GeneratedBlockSpec, beta, x) -> np.ndarray:
    """Apply the natural projection: pair beta against each block of x and
    rebuild through the generated blocks.  x is zero-padded to a whole
    number of blocks."""
    beta = as_coeffs(beta)
    if beta.size != bspec.m:
        raise InputError("beta length must equal the block width")
    x = as_coeffs(x)
    nblocks = -(-x.size // bspec.m)
    padded = np.zeros(nblocks * bspec.m)
    padded[: x.size] = x
    coeffs = padded.reshape(nblocks, bspec.m) @ beta
    return np.kron(coeffs, bspec.alpha)


def projection_norm(
    spec: SpaceSpec,
    bspec: GeneratedBlockSpec,
    beta,
    N: int,
    budget: int = DEFAULT_BUDGET,
    seed: int = 0,
) -> ProjectionReport:
    """Witness-certified lower bound on the norm of the natural projection,
    over ambient vectors of length N * m."""
    beta = as_coeffs(beta)
    N = int(N)
    if N < 1:
        raise InputError("need N >= 1")
    L = N * bspec.m
    if L > N_MAX:
        raise InputError(f"ambient length {L} exceeds N_MAX={N_MAX}")
    cands = _search.coefficient_candidates(L, seed=seed)
    cands.append(expand(bspec, np.eye(1, N, 0).ravel()))  # P fixes its range
    proj = lambda x: block_projection(bspec, beta, x)
    res = _search.maximize_ratio(
        value_fn=lambda x: norm(spec, proj(x)),
        norm_fn=lambda x: norm(spec, x),
        candidates=cands,
        budget=budget,
    )
    wit = res.best
    px = proj(wit)
    norm_lower = norm(spec, px) / norm(spec, wit)
    residual = norm(spec, proj(px) - px)
    return ProjectionReport(
        norm_lower=float(norm_lower),
        witness=wit,
        idempotency_residual=float(residual),
        exhausted=res.exhausted,
    )


def summing_projection(a, boundaries) -> np.ndarray:
    """Projection onto a subsequence of the summing basis, in summing-basis
    coordinates.  Group (n_{i-1}, n_i] of coefficients is summed and placed
    at position n_i; boundaries must be strictly increasing and cover the
    support.  The result never has larger summing norm than the input, with
    equality attained e.g. at a = e_1."""
    a = as_coeffs(a)
    b = np.asarray(boundaries, dtype=int)
    if b.ndim != 1 or b.size == 0:
        raise InputError("need at least one boundary")
    if np.any(np.diff(b) <= 0):
        raise InputError("boundaries must be strictly increasing")
    if b[0] < 1 or b[-1] > a.size:
        raise InputError("boundaries out of range")
    support = np.flatnonzero(a)
    if support.size and support[-1] + 1 > b[-1]:
        raise InputError("boundaries must cover the support")
    out = np.zeros_like(a)
    lo = 0
    for hi in b:
        out[hi - 1] = a[lo:hi].sum()
        lo = hi
    return out


from functools import lru_cache


@lru_cache(maxsize=32)
def _sign_patterns(n: int) -> np.ndarray:
    """All 2^n sign vectors of length n, one per row."""
    return np.array(np.meshgrid(*([[-1.0, 1.0]] * n), indexing="ij")).reshape(n, -1).T


def diagonal_compression(
    spec: SpaceSpec,
    T,
    budget: int = DEFAULT_BUDGET,
    seed: int = 0,
) -> DiagonalCompression:
    """Certified lower bounds on ||diag(T)|| and ||T|| on an unconditional
    coefficient space, by batched witness search over a shared pool.

    When the shared pool leaves the T bound below the diagonal bound, every
    sign pattern of the diagonal witness is fed to the T search.  diag(T)
    is the sign average of D_eps T D_eps and the norm is exactly
    sign-invariant, so the enumerated maximum dominates the diagonal bound:
    diag_norm_lower <= T_norm_lower then holds up to roundoff by
    construction (enumeration capped at 2^16 patterns, 2^10 for the
    Tsirelson recursion)."""
    if not spec.unconditional:
        raise InputError("diagonal compression needs an unconditional family")
    T = np.asarray(T, dtype=float)
    if T.ndim != 2 or T.shape[0] != T.shape[1]:
        raise InputError("T must be a square matrix")
    n = T.shape[0]
    d = np.diag(T)
    X = np.stack(_search.coefficient_candidates(n, seed=seed, n_random=8))[:budget]
    base = norm_batch(spec, X)
    live = base > 0
    X, base = X[live], base[live]

    diag_vals = norm_batch(spec, X * d[None, :]) / base
    k = int(np.argmax(diag_vals))
    diag_val, diag_wit = float(diag_vals[k]), X[k]

    T_vals = norm_batch(spec, X @ T.T) / base
    k = int(np.argmax(T_vals))
    T_val, T_wit = float(T_vals[k]), X[k]

    flip_cap = 10 if spec.family == "tsirelson" else 16
    if n <= flip_cap and T_val < diag_val:
        flipped = _sign_patterns(n) * np.abs(diag_wit)[None, :]
        vals = norm_batch(spec, flipped @ T.T) / norm(spec, diag_wit)
        k = int(np.argmax(vals))
        if vals[k] > T_val:
            T_val, T_wit = float(vals[k]), flipped[k]
    return DiagonalCompression(
        diag_norm_lower=diag_val,
        T_norm_lower=T_val,
        diag_witness=diag_wit,
        T_witness=T_wit,
    )
