"""Certified lower bounds on the equivalence constant between a basis and a
generated block basis, plus the uniform sweep over generators.

The equivalence constant restricted to coefficient vectors of length <= N is

    K(N) = sup_a max( ||sum a_i U_i|| / ||sum a_i x_i||,  its reciprocal ).

Every estimate is a witness-certified lower bound: the two extremal
coefficient vectors are returned and re-evaluated, so the reported K_lower
is sound no matter how good the search was.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import search as _search
from .blocks import GeneratedBlockSpec, block_norm, make_generator
from .config import DEFAULT_BUDGET, N_MAX, TAU_NORM
from .errors import InputError
from .spaces import SpaceSpec, as_coeffs, norm


@dataclass
class EquivalenceEstimate:
    K_lower: float
    witness_up: np.ndarray
    witness_down: np.ndarray
    samples: int
    seed: int
    exhausted: bool = False


@dataclass
class SweepResult:
    K_sup: float
    worst_generator: GeneratedBlockSpec
    estimates: list[EquivalenceEstimate]


def ratio(spec: SpaceSpec, bspec: GeneratedBlockSpec, a) -> float:
    """Block norm over base norm; scale-invariant in a."""
    a = as_coeffs(a)
    base = norm(spec, a)
    if base == 0.0:
        raise InputError("coefficient vector must be nonzero")
    return block_norm(spec, bspec, a) / base


def estimate_K(
    spec: SpaceSpec,
    bspec: GeneratedBlockSpec,
    N: int,
    budget: int = DEFAULT_BUDGET,
    seed: int = 0,
) -> EquivalenceEstimate:
    """Lower bound on the equivalence constant for coefficient vectors of
    length <= N, certified by the two returned witnesses."""
    N = int(N)
    if N < 1:
        raise InputError("need N >= 1")
    if N * bspec.m > N_MAX:
        raise InputError(f"N * m = {N * bspec.m} exceeds N_MAX={N_MAX}")
    cands = _search.coefficient_candidates(N, seed=seed)
    base_fn = lambda a: norm(spec, a)
    blk_fn = lambda a: block_norm(spec, bspec, a)

    up = _search.maximize_ratio(blk_fn, base_fn, cands, budget=budget // 2)
    down = _search.maximize_ratio(
        base_fn, blk_fn, cands, budget=max(1, budget - up.evaluations)
    )
    r_up = ratio(spec, bspec, up.best)
    r_down = ratio(spec, bspec, down.best)
    return EquivalenceEstimate(
        K_lower=float(max(r_up, 1.0 / r_down)),
        witness_up=up.best,
        witness_down=down.best,
        samples=up.evaluations + down.evaluations,
        seed=seed,
        exhausted=up.exhausted or down.exhausted,
    )


def uniform_sweep(
    spec: SpaceSpec,
    generators: list[GeneratedBlockSpec],
    N: int,
    budget: int = DEFAULT_BUDGET,
    seed: int = 0,
    threads: int = 1,
) -> SweepResult:
    """Max of estimate_K over a family of unit generators.

    Generator estimates are independent (child seed per generator) and may
    be evaluated in parallel; the aggregation is an associative max, so the
    result is deterministic for a fixed (generators, seed)."""
    if not generators:
        raise InputError("generator family must be non-empty")
    for g in generators:
        if not g.normalized or abs(norm(spec, g.alpha) - 1.0) > 1e-6:
            raise InputError("uniform_sweep requires unit generators")
    seeds = [int(s.generate_state(1)[0] >> 1) for s in np.random.SeedSequence(seed).spawn(len(generators))]

    def run(idx: int) -> EquivalenceEstimate:
        return estimate_K(spec, generators[idx], N, budget=budget, seed=seeds[idx])

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            estimates = list(pool.map(run, range(len(generators))))
    else:
        estimates = [run(i) for i in range(len(generators))]
    best = int(np.argmax([e.K_lower for e in estimates]))
    return SweepResult(
        K_sup=estimates[best].K_lower,
        worst_generator=generators[best],
        estimates=estimates,
    )


def default_generators(
    spec: SpaceSpec,
    m_values,
    seed: int = 0,
    n_random: int = 2,
) -> list[GeneratedBlockSpec]:
    """Default unit-generator pool per block width: the first coordinate
    vector, the flat vector, geometric decays and seeded random vectors."""
    gens: list[GeneratedBlockSpec] = []
    for m in m_values:
        m = int(m)
        if m < 1:
            raise InputError("block widths must be >= 1")
        raw = [np.eye(1, m, 0).ravel(), np.ones(m)]
        for r in (0.5, 0.9):
            raw.append(r ** np.arange(m, dtype=float))
        rng = np.random.default_rng(np.random.SeedSequence([seed, m, 0xA1FA]))
        for _ in range(n_random):
            raw.append(rng.standard_normal(m))
        seen: set[bytes] = set()
        for alpha in raw:
            if not np.any(alpha):
                continue
            g = make_generator(spec, alpha, unit=True)
            key = g.alpha.tobytes()
            if key not in seen:
                seen.add(key)
                gens.append(g)
    return gens
