"""Norm oracles: worked examples, norm axioms, symmetry structure and the
Tsirelson recursion."""

import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import basislab as bl
from basislab import tsirelson as tsi
from oracles import (
    harmonic,
    lorentz_norm_oracle,
    lp_norm_oracle,
    summing_norm_oracle,
    tsirelson_norm_oracle,
)

TAU = bl.TAU_NORM

LP2 = bl.SpaceSpec.lp(2)
LP1 = bl.SpaceSpec.lp(1)
C0 = bl.SpaceSpec.c0()
LOR = bl.SpaceSpec.lorentz()
TSI = bl.SpaceSpec.tsirelson()
SUM = bl.SpaceSpec.summing()

ALL_SPECS = [LP1, bl.SpaceSpec.lp(1.5), LP2, bl.SpaceSpec.lp(3), C0, LOR, TSI, SUM]


class TestWorkedExamples:
    def test_lp2_euclidean(self):
        assert bl.norm(LP2, [3, 4]) == pytest.approx(5.0, abs=TAU)

    def test_summing_cancellation(self):
        # tail sums of (1, -1) are 0 and -1
        assert bl.norm(SUM, [1, -1]) == pytest.approx(1.0, abs=TAU)

    def test_lorentz_harmonic_flat(self):
        assert bl.norm(LOR, [1, 1, 1]) == pytest.approx(11 / 6, abs=TAU)

    def test_tsirelson_flat_eight(self):
        assert bl.norm(TSI, np.ones(8)) == pytest.approx(2.0, abs=1e-15)

    def test_normalize_lp2(self):
        assert np.allclose(bl.normalize(LP2, [3, 4]), [0.6, 0.8], atol=TAU)

    def test_normalize_c0(self):
        assert np.allclose(bl.normalize(C0, [2, 1]), [1.0, 0.5], atol=TAU)

    def test_normalize_lorentz(self):
        assert np.allclose(bl.normalize(LOR, [1, 1]), [2 / 3, 2 / 3], atol=TAU)

    def test_fundamental_lp3(self):
        assert bl.fundamental_function(bl.SpaceSpec.lp(3), 8) == pytest.approx(2.0, abs=TAU)

    def test_fundamental_summing(self):
        assert bl.fundamental_function(SUM, 5) == pytest.approx(5.0, abs=TAU)

    def test_fundamental_lorentz(self):
        assert bl.fundamental_function(LOR, 4) == pytest.approx(25 / 12, abs=TAU)

    def test_fundamental_matches_norm_of_ones(self):
        for spec in ALL_SPECS:
            for n in (1, 3, 7):
                assert bl.fundamental_function(spec, n) == bl.norm(spec, np.ones(n))


class TestValidation:
    def test_bad_exponent(self):
        with pytest.raises(bl.ConfigError):
            bl.SpaceSpec.lp(0.5)

    def test_bad_weights(self):
        with pytest.raises(bl.ConfigError):
            bl.WeightRule(rule="list", values=(1.0, 1.5))
        with pytest.raises(bl.ConfigError):
            bl.WeightRule(rule="list", values=(0.5, 0.4))

    def test_bad_theta(self):
        with pytest.raises(bl.ConfigError):
            bl.SpaceSpec.tsirelson(theta=1.0)

    def test_non_finite_input(self):
        with pytest.raises(bl.InputError):
            bl.norm(LP2, [1.0, np.inf])

    def test_normalize_zero(self):
        with pytest.raises(bl.InputError):
            bl.normalize(LP2, [0.0, 0.0])

    def test_fundamental_zero(self):
        with pytest.raises(bl.InputError):
            bl.fundamental_function(LP2, 0)

    def test_json_roundtrip(self):
        for spec in ALL_SPECS:
            assert bl.SpaceSpec.from_json(spec.to_json()) == spec

    def test_json_example(self):
        spec = bl.SpaceSpec.from_json('{"family":"lorentz","p":1,"weights":{"rule":"harmonic"}}')
        assert spec == LOR


@st.composite
def vec(draw, max_len=10):
    n = draw(st.integers(1, max_len))
    return np.array(draw(st.lists(
        st.floats(-10, 10, allow_nan=False, allow_infinity=False, width=32),
        min_size=n, max_size=n,
    )))


class TestNormAxioms:
    @settings(max_examples=60, deadline=None)
    @given(v=vec(), c=st.floats(-5, 5, allow_nan=False, allow_infinity=False))
    def test_homogeneity(self, v, c):
        for spec in ALL_SPECS:
            nv = bl.norm(spec, v)
            assert abs(bl.norm(spec, c * v) - abs(c) * nv) <= TAU * max(nv, 1.0)

    @settings(max_examples=60, deadline=None)
    @given(u=vec(max_len=8), v=vec(max_len=8))
    def test_triangle(self, u, v):
        n = max(u.size, v.size)
        up = np.zeros(n); up[: u.size] = u
        vp = np.zeros(n); vp[: v.size] = v
        for spec in ALL_SPECS:
            assert bl.norm(spec, up + vp) <= bl.norm(spec, up) + bl.norm(spec, vp) + TAU

    @settings(max_examples=60, deadline=None)
    @given(v=vec())
    def test_zero_iff(self, v):
        for spec in ALL_SPECS:
            assert (bl.norm(spec, v) == 0.0) == (not np.any(v))

    def test_homogeneity_bulk(self):
        # dense deterministic sweep on top of the hypothesis cases
        rng = np.random.default_rng(11)
        V = rng.standard_normal((10_000, 6))
        c = rng.uniform(-3, 3, size=10_000)
        for spec in ALL_SPECS:
            nv = bl.norm_batch(spec, V)
            ncv = bl.norm_batch(spec, c[:, None] * V)
            assert np.all(np.abs(ncv - np.abs(c) * nv) <= TAU * np.maximum(nv, 1.0))

    def test_triangle_bulk(self):
        rng = np.random.default_rng(12)
        U = rng.standard_normal((10_000, 6))
        V = rng.standard_normal((10_000, 6))
        for spec in ALL_SPECS:
            assert np.all(
                bl.norm_batch(spec, U + V) <= bl.norm_batch(spec, U) + bl.norm_batch(spec, V) + TAU
            )


class TestSymmetryStructure:
    @settings(max_examples=50, deadline=None)
    @given(v=vec(max_len=8), data=st.data())
    def test_unconditionality_exact(self, v, data):
        signs = np.array(data.draw(st.lists(st.sampled_from([-1.0, 1.0]),
                                            min_size=v.size, max_size=v.size)))
        for spec in ALL_SPECS:
            if spec.unconditional:
                assert bl.norm(spec, signs * v) == bl.norm(spec, v)

    @settings(max_examples=50, deadline=None)
    @given(v=vec(max_len=8), data=st.data())
    def test_symmetry_exact(self, v, data):
        perm = np.array(data.draw(st.permutations(range(v.size))))
        for spec in ALL_SPECS:
            if spec.symmetric:
                assert bl.norm(spec, v[perm]) == bl.norm(spec, v)

    def test_summing_is_conditional(self):
        # witness: sign flip changes the summing norm
        assert bl.norm(SUM, [1, 1]) != bl.norm(SUM, [1, -1])

    def test_spreading_invariance(self):
        rng = np.random.default_rng(5)
        for spec in (LP2, LP1, C0, LOR):
            for _ in range(200):
                k = rng.integers(1, 6)
                v = rng.standard_normal(k)
                length = int(rng.integers(k, 3 * k + 4))
                pos = np.sort(rng.choice(np.arange(1, length + 1), size=k, replace=False))
                spread = bl.place_at(v, pos, length)
                assert bl.norm(spec, spread) == pytest.approx(
                    bl.norm(spec, np.pad(v, (0, length - k))), abs=TAU
                )

    def test_tsirelson_spreading_fails_with_witness(self):
        flat = bl.norm(TSI, [1, 1, 1])
        moved = bl.norm(TSI, bl.place_at([1, 1, 1], [6, 7, 8], 8))
        assert flat == 1.0
        assert moved == 1.5


class TestTsirelsonRecursion:
    def test_matches_bruteforce_enumeration(self):
        vals = [-1.0, -0.5, 0.0, 0.5, 1.0]
        for combo in itertools.product(vals, repeat=4):
            if not any(combo):
                continue
            got = bl.norm(TSI, np.array(combo))
            want = tsirelson_norm_oracle(combo)
            assert got == pytest.approx(want, abs=1e-12), combo

    def test_bruteforce_eight(self):
        assert tsirelson_norm_oracle(np.ones(8)) == pytest.approx(2.0, abs=1e-15)
        assert bl.norm(TSI, np.ones(6)) == pytest.approx(
            tsirelson_norm_oracle(np.ones(6)), abs=1e-15
        )

    def test_jacobi_iteration_converges_within_support_size(self):
        rng = np.random.default_rng(17)
        for _ in range(25):
            n = int(rng.integers(1, 9))
            v = np.round(rng.standard_normal(n), 3)
            iterates = tsi.fixed_point_iterates(v)
            # reaches a fixed table in at most N sweeps
            assert len(iterates) <= n + 1
            assert iterates[-1] == pytest.approx(bl.norm(TSI, v), abs=TAU)

    def test_theta_configurable(self):
        weak = bl.SpaceSpec.tsirelson(theta=0.25)
        assert bl.norm(weak, np.ones(8)) == pytest.approx(
            tsirelson_norm_oracle(np.ones(8), theta=0.25), abs=1e-12
        )

    def test_trailing_zeros_ignored_leading_matter(self):
        v = np.array([1.0, 1.0, 1.0])
        assert bl.norm(TSI, np.pad(v, (0, 5))) == bl.norm(TSI, v)
        assert bl.norm(TSI, np.pad(v, (5, 0))) > bl.norm(TSI, v)


class TestOracleAgreement:
    def test_support_four_grid(self):
        vals = [-1.0, -0.5, 0.0, 0.5, 1.0]
        combos = np.array([c for c in itertools.product(vals, repeat=4) if any(c)])
        w = LOR.weights
        cases = [
            (LP1, lambda v: lp_norm_oracle(v, 1.0)),
            (bl.SpaceSpec.lp(1.5), lambda v: lp_norm_oracle(v, 1.5)),
            (LP2, lambda v: lp_norm_oracle(v, 2.0)),
            (bl.SpaceSpec.lp(3), lambda v: lp_norm_oracle(v, 3.0)),
            (C0, lambda v: max(abs(x) for x in v)),
            (LOR, lambda v: lorentz_norm_oracle(v, 1.0, lambda i: 1.0 / i)),
            (SUM, summing_norm_oracle),
            (TSI, tsirelson_norm_oracle),
        ]
        for spec, oracle in cases:
            got = bl.norm_batch(spec, combos)
            want = np.array([oracle(tuple(row)) for row in combos])
            assert np.max(np.abs(got - want)) <= 1e-12, spec.family
