"""Acceptance gate: every criterion at its stated tolerance.

Run with ``pytest tests/test_acceptance.py -v -s`` to see one pass/fail
line per criterion.
"""

import itertools
import json
import time

import numpy as np
import pytest

import basislab as bl
from oracles import (
    harmonic,
    lorentz_norm_oracle,
    lp_norm_oracle,
    summing_norm_oracle,
    tsirelson_norm_oracle,
)

LP_EXPONENTS = (1.0, 1.5, 2.0, 3.0)
LP_SPECS = [bl.SpaceSpec.lp(p) for p in LP_EXPONENTS]
C0 = bl.SpaceSpec.c0()
LOR = bl.SpaceSpec.lorentz()
TSI = bl.SpaceSpec.tsirelson()
SUM = bl.SpaceSpec.summing()
SPREADING = LP_SPECS + [C0, LOR]
UNCONDITIONAL = LP_SPECS + [C0, LOR, TSI]


def report(num, text):
    print(f"ACCEPTANCE {num}: PASS - {text}")


def test_01_norm_oracle_correctness():
    t0 = time.perf_counter()
    vals = [-1.0, -0.5, 0.0, 0.5, 1.0]
    combos = np.array([c for c in itertools.product(vals, repeat=4) if any(c)])
    cases = [(bl.SpaceSpec.lp(p), lambda v, p=p: lp_norm_oracle(v, p)) for p in LP_EXPONENTS]
    cases += [
        (C0, lambda v: max(abs(x) for x in v)),
        (LOR, lambda v: lorentz_norm_oracle(v, 1.0, lambda i: 1.0 / i)),
        (SUM, summing_norm_oracle),
        (TSI, tsirelson_norm_oracle),
    ]
    worst = 0.0
    for spec, oracle in cases:
        got = bl.norm_batch(spec, combos)
        want = np.array([oracle(tuple(row)) for row in combos])
        err = float(np.max(np.abs(got - want)))
        worst = max(worst, err)
        assert err <= 1e-12, (spec.family, err)
    elapsed = time.perf_counter() - t0
    assert elapsed < 10.0
    report(1, f"{len(cases)} families x {len(combos)} vectors, max err {worst:.2e}, {elapsed:.1f}s")


def test_02_duality_bracket():
    t0 = time.perf_counter()
    lo, hi = 1.0 - 1e-9, 2.0 + 1e-4
    checked = 0
    for spec in LP_SPECS + [C0, LOR]:
        for n in (2, 4, 8, 16, 32, 64, 128, 256):
            b = bl.duality_bracket(spec, n)
            assert lo <= b <= hi, (spec.family, n, b)
            checked += 1
    elapsed = time.perf_counter() - t0
    assert elapsed < 60.0
    report(2, f"{checked} brackets in [1-1e-9, 2+1e-4], {elapsed:.1f}s")


def test_03_p_recovery():
    t0 = time.perf_counter()
    grid = [2**k for k in range(1, 13)]
    for p in LP_EXPONENTS:
        table = bl.growth_table(bl.SpaceSpec.lp(p), grid, include_mu=False)
        fit = bl.fit_p(table)
        assert fit.p_hat == pytest.approx(p, abs=1e-6)
        assert fit.max_deviation < 1e-9
    elapsed = time.perf_counter() - t0
    assert elapsed < 5.0
    report(3, f"p_hat within 1e-6 for p in {LP_EXPONENTS}, {elapsed:.1f}s")


def test_04_lp_c0_uniformity():
    count = 0
    for spec in LP_SPECS + [C0]:
        gens = bl.default_generators(spec, (1, 2, 4, 8, 16, 32, 64), seed=10)
        for g in gens:
            est = bl.estimate_K(spec, g, 64, seed=10)
            assert abs(est.K_lower - 1.0) <= 1e-9, (spec.family, g.m, est.K_lower)
            count += 1
    report(4, f"estimate_K = 1 +/- 1e-9 for all {count} default-pool generators")


def test_05_lorentz_non_uniformity():
    ms = (2, 4, 8, 16, 32, 64)
    gens = [bl.make_generator(LOR, np.ones(m)) for m in ms]
    sweep = bl.uniform_sweep(LOR, gens, 64, seed=10)
    ks = [e.K_lower for e in sweep.estimates]
    assert sweep.K_sup >= 2.0
    assert all(b >= a - 1e-9 for a, b in zip(ks, ks[1:]))
    for m, k in zip(ms, ks):
        anchor = harmonic(m) * harmonic(64) / harmonic(64 * m)
        assert abs(k - anchor) <= 0.05 * anchor, (m, k, anchor)
    report(5, f"K_sup = {sweep.K_sup:.3f} >= 2.0, monotone, within 5% of harmonic anchors")


def test_06_block_sandwich():
    rng = np.random.default_rng(20)
    for spec in SPREADING:
        violations = 0
        for _ in range(10_000):
            m = int(rng.integers(1, 7))
            k = int(rng.integers(1, 9))
            alpha = rng.standard_normal(m)
            a = rng.standard_normal(k)
            if not np.any(alpha):
                alpha[0] = 1.0
            if not np.any(a):
                a[0] = 1.0
            bspec = bl.GeneratedBlockSpec(alpha=alpha)
            base = bl.norm(spec, a)
            bn = bl.block_norm(spec, bspec, a)
            lo = np.max(np.abs(alpha)) * base
            hi = np.sum(np.abs(alpha)) * base
            if not (lo <= bn + 1e-9 and bn <= hi + 1e-9):
                violations += 1
        assert violations == 0, spec.family
    report(6, f"10^4 random (alpha, a) per fixture x {len(SPREADING)} fixtures, zero violations")


def test_07_summing_projection():
    rng = np.random.default_rng(21)
    worst_resid = 0.0
    for _ in range(10_000):
        n = int(rng.integers(2, 12))
        x = rng.standard_normal(n)
        nb = int(rng.integers(1, n + 1))
        bounds = np.sort(rng.choice(np.arange(1, n), size=nb - 1, replace=False)).tolist() + [n]
        px = bl.summing_projection(x, bounds)
        assert bl.norm(SUM, px) <= bl.norm(SUM, x) + 1e-12
        ppx = bl.summing_projection(px, bounds)
        worst_resid = max(worst_resid, bl.norm(SUM, ppx - px))
    assert worst_resid <= 1e-12
    e1 = np.zeros(6); e1[0] = 1.0
    pe1 = bl.summing_projection(e1, [2, 4, 6])
    assert bl.norm(SUM, pe1) == bl.norm(SUM, e1) == 1.0
    report(7, f"10^4 contractions, equality at e_1, idempotency residual {worst_resid:.1e}")


def test_08_diagonal_compression():
    rng = np.random.default_rng(22)
    total = 0
    for spec in UNCONDITIONAL:
        dim_hi = 10 if spec.family == "tsirelson" else 16
        for _ in range(1000):
            n = int(rng.integers(2, dim_hi + 1))
            T = rng.standard_normal((n, n))
            res = bl.diagonal_compression(spec, T, budget=400, seed=int(rng.integers(2**31)))
            assert res.diag_norm_lower <= res.T_norm_lower + 1e-9, spec.family
            total += 1
    report(8, f"{total} random matrices across {len(UNCONDITIONAL)} unconditional fixtures")


def test_09_verdict_end_to_end():
    t0 = time.perf_counter()
    cfg = bl.ClassifyConfig(seed=30)
    expected = {
        "c0": (C0, "C0_LIKE", None),
        "lp1.5": (bl.SpaceSpec.lp(1.5), "LP_LIKE", 1.5),
        "lp3": (bl.SpaceSpec.lp(3), "LP_LIKE", 3.0),
        "lorentz": (LOR, "NOT_UNIFORM", None),
    }
    for name, (spec, label, p) in expected.items():
        v1 = bl.classify(spec, cfg)
        v2 = bl.classify(spec, cfg)
        assert v1.label == label, (name, v1.label)
        if p is not None:
            assert v1.p_hat == pytest.approx(p, abs=1e-3)
        if label == "NOT_UNIFORM":
            assert v1.K_evidence >= 2.0
        assert json.dumps(v1.to_dict(), sort_keys=True) == json.dumps(v2.to_dict(), sort_keys=True)
    elapsed = time.perf_counter() - t0
    assert elapsed < 300.0
    report(9, f"4 verdicts correct and byte-deterministic across reruns, {elapsed:.0f}s")


def test_10_tsirelson_spreading_witness():
    flat = bl.norm(TSI, [1.0, 1.0, 1.0])
    moved = bl.norm(TSI, bl.place_at([1.0, 1.0, 1.0], [6, 7, 8], 8))
    assert flat == 1.0
    assert moved == 1.5
    assert tsirelson_norm_oracle((1.0, 1.0, 1.0)) == 1.0
    assert tsirelson_norm_oracle((0, 0, 0, 0, 0, 1.0, 1.0, 1.0)) == 1.5
    report(10, "norm((1,1,1)) = 1 at positions 1-3 and 1.5 at positions 6-8, exactly")
