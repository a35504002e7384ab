"""Classification pipeline: growth tables, submultiplicativity ratios,
power-law exponent fitting, the two-sided lp sandwich check, and the final
verdict.

The verdict is a numeric diagnostic, never a theorem-level conclusion: it
reports behavior "consistent with" c0 or lp, a "witnessed violation of
uniformity", or an honest INCONCLUSIVE.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import search as _search
from .blocks import GeneratedBlockSpec
from .config import DEFAULT_BUDGET, DEFAULT_DUAL_BUDGET, N_MAX, TAU_NORM
from .duality import dual_fundamental_function
from .equivalence import default_generators, uniform_sweep
from .errors import InputError
from .spaces import SpaceSpec, fundamental_function, norm

C0_LIKE = "C0_LIKE"
LP_LIKE = "LP_LIKE"
NOT_UNIFORM = "NOT_UNIFORM"
INCONCLUSIVE = "INCONCLUSIVE"


@dataclass
class GrowthRow:
    n: int
    lam: float
    mu: float | None
    bracket: float | None


@dataclass
class GrowthTable:
    rows: list[GrowthRow]
    ratios: dict[tuple[int, int], float]

    def lam(self, n: int) -> float:
        for row in self.rows:
            if row.n == n:
                return row.lam
        raise KeyError(n)


def growth_table(
    spec: SpaceSpec,
    n_values,
    budget: int = DEFAULT_DUAL_BUDGET,
    seed: int = 0,
    include_mu: bool = True,
    n_max: int = N_MAX,
) -> GrowthTable:
    """Tabulate lambda(n), mu(n) and the duality bracket on a sorted grid,
    with the submultiplicativity ratios lambda(mn) / (lambda(m) lambda(n))
    for all grid pairs whose product stays within n_max."""
    ns = [int(n) for n in n_values]
    if not ns or any(n < 1 for n in ns):
        raise InputError("n_values must be positive integers")
    if sorted(ns) != ns or len(set(ns)) != len(ns):
        raise InputError("n_values must be sorted and distinct")
    if ns[-1] > n_max:
        raise InputError(f"max n exceeds n_max={n_max}")

    lam_cache: dict[int, float] = {}

    def lam(n: int) -> float:
        if n not in lam_cache:
            lam_cache[n] = fundamental_function(spec, n)
        return lam_cache[n]

    rows = []
    for n in ns:
        mu = bracket = None
        if include_mu:
            mu = dual_fundamental_function(spec, n, budget=budget, seed=seed)
            bracket = lam(n) * mu / n
        rows.append(GrowthRow(n=n, lam=lam(n), mu=mu, bracket=bracket))

    ratios: dict[tuple[int, int], float] = {}
    for i, m in enumerate(ns):
        for n in ns[i:]:
            if m * n <= n_max:
                ratios[(m, n)] = lam(m * n) / (lam(m) * lam(n))
    return GrowthTable(rows=rows, ratios=ratios)


@dataclass
class FitResult:
    p_hat: float | None
    max_deviation: float
    is_c0_like: bool


def fit_p(table: GrowthTable) -> FitResult:
    """Exponent recovery from the growth table.

    Fits log lambda(n) = s * log n through the origin by least squares and
    reports p_hat = 1/s with the worst log-scale residual.  When fewer than
    three rows show growth (lambda stuck at 1) the table is flagged as
    c0-like and no exponent is returned."""
    xs, ys = [], []
    for row in table.rows:
        if row.n > 1 and row.lam > 1.0 + TAU_NORM:
            xs.append(math.log(row.n))
            ys.append(math.log(row.lam))
    if len(xs) < 3:
        return FitResult(p_hat=None, max_deviation=0.0, is_c0_like=True)
    x = np.asarray(xs)
    y = np.asarray(ys)
    slope = float(x @ y / (x @ x))
    dev = float(np.max(np.abs(y - slope * x)))
    return FitResult(p_hat=1.0 / slope, max_deviation=dev, is_c0_like=False)


@dataclass
class SandwichResult:
    upper_ok: bool
    lower_ok: bool
    worst_witness: np.ndarray | None
    worst_violation: float


def sandwich_check(
    spec: SpaceSpec,
    p: float,
    K: float,
    sample_budget: int = 400,
    seed: int = 0,
    n_probe: int = 256,
) -> SandwichResult:
    """Test the two-sided lp comparison on the candidate pool:

        (1/(2K)) * ||a||_p  <=  ||sum a_i x_i||  <=  2K * ||a||_p

    Returns the worst violator, if any."""
    if p < 1 or K < 1:
        raise InputError("need p >= 1 and K >= 1")
    cands = _search.coefficient_candidates(n_probe, seed=seed)
    cands = cands[:sample_budget]
    lp = SpaceSpec.lp(p)
    upper_ok = lower_ok = True
    worst = None
    worst_v = 0.0
    for a in cands:
        if not np.any(a):
            continue
        s = norm(spec, a)
        ref = norm(lp, a)
        up_v = s - 2.0 * K * ref
        lo_v = ref / (2.0 * K) - s
        if up_v > TAU_NORM:
            upper_ok = False
        if lo_v > TAU_NORM:
            lower_ok = False
        v = max(up_v, lo_v) / max(ref, 1e-300)
        if v > worst_v:
            worst_v, worst = v, a
    return SandwichResult(
        upper_ok=upper_ok, lower_ok=lower_ok, worst_witness=worst, worst_violation=worst_v
    )


@dataclass
class ClassifyConfig:
    n_max: int = N_MAX
    lambda_bound: float = 4.0
    k_threshold: float = 1.5
    dev_threshold: float = 0.05
    sweep_N: int = 64
    m_values: tuple[int, ...] = (1, 2, 4, 8, 16, 32, 64)
    sweep_budget: int = DEFAULT_BUDGET
    dual_budget: int = DEFAULT_DUAL_BUDGET
    sandwich_budget: int = 300
    seed: int = 0
    threads: int = 1

    def to_dict(self) -> dict:
        return {
            "n_max": self.n_max,
            "lambda_bound": self.lambda_bound,
            "k_threshold": self.k_threshold,
            "dev_threshold": self.dev_threshold,
            "sweep_N": self.sweep_N,
            "m_values": list(self.m_values),
            "sweep_budget": self.sweep_budget,
            "dual_budget": self.dual_budget,
            "sandwich_budget": self.sandwich_budget,
            "seed": self.seed,
            "threads": self.threads,
        }


@dataclass
class Verdict:
    label: str
    p_hat: float | None
    K_evidence: float
    witnesses: dict
    config_echo: dict

    def to_dict(self) -> dict:
        return {
            "class": self.label,
            "p_hat": self.p_hat,
            "K_evidence": self.K_evidence,
            "witnesses": self.witnesses,
            "config": self.config_echo,
        }


def _dyadic_grid(n_max: int) -> list[int]:
    grid = []
    n = 2
    while n <= n_max:
        grid.append(n)
        n *= 2
    return grid


def classify(spec: SpaceSpec, config: ClassifyConfig | None = None) -> Verdict:
    """Run the full pipeline and return a verdict with evidence.

    Branches, in order: C0_LIKE when growth over the whole grid stays under
    lambda_bound; LP_LIKE when the power-law fit is tight, the family is
    unconditional, the uniform sweep stays under k_threshold and the lp
    sandwich holds with the swept constant; NOT_UNIFORM when any generator
    witnesses K above threshold; INCONCLUSIVE otherwise."""
    cfg = config or ClassifyConfig()
    grid = _dyadic_grid(cfg.n_max)
    table = growth_table(spec, grid, include_mu=False, n_max=cfg.n_max)
    evidence: dict = {
        "family": spec.to_dict(),
        "growth": [[row.n, row.lam] for row in table.rows],
    }
    lam_top = table.rows[-1].lam
    if lam_top <= cfg.lambda_bound:
        evidence["lambda_max"] = lam_top
        return Verdict(
            label=C0_LIKE,
            p_hat=None,
            K_evidence=1.0,
            witnesses=evidence,
            config_echo=cfg.to_dict(),
        )

    fit = fit_p(table)
    evidence["fit"] = {
        "p_hat": fit.p_hat,
        "max_deviation": fit.max_deviation,
        "c0_flag": fit.is_c0_like,
    }
    m_values = [m for m in cfg.m_values if m * cfg.sweep_N <= cfg.n_max]
    gens = default_generators(spec, m_values, seed=cfg.seed)
    sweep = uniform_sweep(
        spec, gens, cfg.sweep_N, budget=cfg.sweep_budget, seed=cfg.seed, threads=cfg.threads
    )
    worst = sweep.worst_generator
    best_est = max(sweep.estimates, key=lambda e: e.K_lower)
    evidence["sweep"] = {
        "K_sup": sweep.K_sup,
        "worst_generator": worst.alpha.tolist(),
        "witness_up": best_est.witness_up.tolist(),
        "witness_down": best_est.witness_down.tolist(),
        "samples": sum(e.samples for e in sweep.estimates),
    }

    if (
        not fit.is_c0_like
        and fit.max_deviation <= cfg.dev_threshold
        and spec.unconditional
        and sweep.K_sup <= cfg.k_threshold
    ):
        sandwich = sandwich_check(
            spec,
            fit.p_hat,
            max(sweep.K_sup, 1.0),
            sample_budget=cfg.sandwich_budget,
            seed=cfg.seed,
            n_probe=min(256, cfg.n_max),
        )
        evidence["sandwich"] = {
            "upper_ok": sandwich.upper_ok,
            "lower_ok": sandwich.lower_ok,
        }
        if sandwich.upper_ok and sandwich.lower_ok:
            return Verdict(
                label=LP_LIKE,
                p_hat=fit.p_hat,
                K_evidence=sweep.K_sup,
                witnesses=evidence,
                config_echo=cfg.to_dict(),
            )
    if sweep.K_sup > cfg.k_threshold:
        return Verdict(
            label=NOT_UNIFORM,
            p_hat=fit.p_hat,
            K_evidence=sweep.K_sup,
            witnesses=evidence,
            config_echo=cfg.to_dict(),
        )
    return Verdict(
        label=INCONCLUSIVE,
        p_hat=fit.p_hat,
        K_evidence=sweep.K_sup,
        witnesses=evidence,
        config_echo=cfg.to_dict(),
    )
