from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from fracparity.errors import (
    DegeneratePath,
    DeltaTooLarge,
    InvalidHurst,
    InvalidStableParams,
    OutOfStableRange,
    TooShort,
)
from fracparity.fractal import (
    HurstConfig,
    StableParams,
    alpha_from_hurst,
    build_path,
    estimate_hurst,
    minimal_cover_variation,
    scale_ladder,
    stable_cdf,
    stable_cdf_with_error,
)


class TestBuildPath:
    def test_cumulative_sum(self):
        r = [1.0, -1.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0]
        assert build_path(r).tolist() == [0.0, 1.0, 0.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0]

    def test_zero_returns_give_constant_path(self):
        assert np.all(build_path(np.zeros(10)) == 0.0)

    def test_too_short(self):
        with pytest.raises(TooShort):
            build_path([1.0, -1.0, 1.0])


class TestMinimalCoverVariation:
    def test_zigzag(self):
        assert minimal_cover_variation([0, 1, 0, 1, 0], 2) == 2.0

    def test_constant_path(self):
        assert minimal_cover_variation(np.full(20, 3.3), 2) == 0.0
        assert minimal_cover_variation(np.full(20, 3.3), 5) == 0.0

    def test_linear_path_independent_of_delta(self):
        c = 0.75
        path = c * np.arange(25.0)  # 24 intervals
        for delta in (2, 3, 4, 6, 8, 12):
            assert minimal_cover_variation(path, delta) == pytest.approx(c * 24, rel=1e-12)

    def test_trailing_remainder_discarded(self):
        # 7 intervals at delta=2 -> 3 windows covering 6 intervals
        path = np.array([0, 1, 0, 1, 0, 1, 0, 5.0])
        assert minimal_cover_variation(path, 2) == 1 + 1 + 1

    def test_delta_too_large(self):
        with pytest.raises(DeltaTooLarge):
            minimal_cover_variation(np.arange(7.0), 4)

    def test_delta_below_two(self):
        with pytest.raises(ValueError):
            minimal_cover_variation(np.arange(10.0), 1)


class TestScaleLadder:
    def test_keeps_top_rungs(self):
        assert scale_ladder(1023) == [16, 32, 64, 128]
        assert scale_ladder(125) == [2, 4, 8, 16]
        assert scale_ladder(62) == [2, 4, 8]

    def test_uncapped(self):
        cfg = HurstConfig(max_rungs=None)
        assert scale_ladder(1023, cfg) == [2, 4, 8, 16, 32, 64, 128]


class TestEstimateHurst:
    def test_linear_ramp_is_exactly_one(self):
        # remainder-free interval count keeps the fit exactly flat
        est = estimate_hurst(np.arange(1025.0))
        assert est.h == 1.0
        assert est.r_squared == 1.0

    def test_scaled_ramp(self):
        est = estimate_hurst(np.arange(129.0) * 0.37 + 5.0)
        assert est.h == 1.0

    def test_random_walk_median(self):
        # cumulative sums of unit Gaussians, length 1024, 100 seeds
        estimates = [
            estimate_hurst(np.cumsum(np.random.default_rng(seed).standard_normal(1024))).h
            for seed in range(100)
        ]
        assert 0.45 <= float(np.median(estimates)) <= 0.55

    def test_fbm_oracle_recovery(self):
        estimates = [
            estimate_hurst(oracles.fbm_path(1024, 0.7, np.random.default_rng(seed))).h
            for seed in range(100)
        ]
        assert 0.60 <= float(np.median(estimates)) <= 0.80

    def test_self_affine_slope_matches_one_minus_h(self):
        # fitted slope on exact fBm reproduces H - 1 within the same band
        slopes = [
            -estimate_hurst(oracles.fbm_path(1024, 0.7, np.random.default_rng(seed))).mu_index
            for seed in range(50)
        ]
        assert float(np.median(slopes)) == pytest.approx(0.7 - 1.0, abs=0.1)

    def test_degenerate_path(self):
        with pytest.raises(DegeneratePath):
            estimate_hurst(np.full(100, 2.0))

    def test_too_short(self):
        with pytest.raises(TooShort):
            estimate_hurst(np.arange(20.0))

    def test_clamping(self):
        cfg = HurstConfig(h_min=0.5, h_max=0.5)
        path = np.cumsum(np.random.default_rng(3).standard_normal(256))
        assert estimate_hurst(path, cfg).h == 0.5

    def test_reports_ladder(self):
        path = np.cumsum(np.random.default_rng(4).standard_normal(256))
        est = estimate_hurst(path)
        assert len(est.scales) == len(est.variations) >= 3
        assert 0.0 <= est.r_squared <= 1.0

    @given(
        a=st.floats(min_value=0.1, max_value=50).flatmap(
            lambda x: st.sampled_from([x, -x])
        ),
        b=st.floats(min_value=-100, max_value=100),
        seed=st.integers(min_value=0, max_value=2**31),
    )
    @settings(max_examples=25, deadline=None)
    def test_affine_invariance(self, a, b, seed):
        path = np.cumsum(np.random.default_rng(seed).standard_normal(128))
        base = estimate_hurst(path)
        moved = estimate_hurst(a * path + b)
        assert moved.h == pytest.approx(base.h, abs=1e-9)
        assert moved.mu_index == pytest.approx(base.mu_index, abs=1e-9)


class TestAlphaFromHurst:
    def test_half_gives_two(self):
        assert alpha_from_hurst(0.5) == 2.0

    def test_one_gives_one(self):
        assert alpha_from_hurst(1.0) == 1.0

    def test_below_half_rejected(self):
        with pytest.raises(OutOfStableRange):
            alpha_from_hurst(0.4)

    def test_non_positive_rejected(self):
        with pytest.raises(InvalidHurst):
            alpha_from_hurst(0.0)

    @given(alpha=st.floats(min_value=1.0, max_value=2.0))
    def test_roundtrip_on_stable_range(self, alpha):
        assert alpha_from_hurst(1.0 / alpha) == pytest.approx(alpha, rel=1e-12)


class TestStableParams:
    @pytest.mark.parametrize(
        "kwargs",
        [
            dict(alpha=0.0),
            dict(alpha=2.5),
            dict(alpha=1.5, beta=1.5),
            dict(alpha=1.5, sigma=0.0),
            dict(alpha=1.5, sigma=-1.0),
            dict(alpha=1.5, mu_loc=math.inf),
        ],
    )
    def test_invalid(self, kwargs):
        with pytest.raises(InvalidStableParams):
            StableParams(**kwargs)


class TestStableCdf:
    def test_symmetric_center_is_half(self):
        assert stable_cdf(3.5, StableParams(alpha=2.0, beta=0.0, sigma=2.0, mu_loc=3.5)) == 0.5

    def test_gaussian_anchor(self):
        # alpha = 2 is a Normal with variance 2 sigma^2
        got = stable_cdf(1.0, StableParams(alpha=2.0))
        assert got == pytest.approx(oracles.gaussian_cdf(1.0, std=math.sqrt(2.0)), abs=1e-10)
        assert got == pytest.approx(0.760250, abs=5e-7)

    def test_cauchy_anchor(self):
        got = stable_cdf(1.0, StableParams(alpha=1.0))
        assert got == pytest.approx(0.75, abs=1e-10)

    def test_location_scale_standardization(self):
        p = StableParams(alpha=1.0, beta=0.0, sigma=2.0, mu_loc=-1.0)
        assert stable_cdf(-1.0 + 2.0, p) == pytest.approx(oracles.cauchy_cdf(1.0), abs=1e-10)

    def test_error_estimate_reported(self):
        value, err = stable_cdf_with_error(0.7, StableParams(alpha=1.7, beta=0.4))
        assert 0.0 < value < 1.0
        assert 0.0 <= err < 1e-6

    def test_tail_limits(self):
        p = StableParams(alpha=1.5, beta=0.2)
        assert stable_cdf(-40.0, p) < 0.01
        assert stable_cdf(40.0, p) > 0.99

    @given(
        alpha=st.floats(min_value=0.5, max_value=2.0),
        r=st.floats(min_value=-8.0, max_value=8.0),
    )
    @settings(max_examples=30, deadline=None)
    def test_symmetry_at_zero_beta(self, alpha, r):
        p = StableParams(alpha=alpha, beta=0.0)
        assert stable_cdf(r, p) + stable_cdf(-r, p) == pytest.approx(1.0, abs=1e-8)

    @given(
        alpha=st.floats(min_value=0.5, max_value=2.0),
        beta=st.floats(min_value=-1.0, max_value=1.0),
    )
    @settings(max_examples=15, deadline=None)
    def test_monotone_in_r(self, alpha, beta):
        p = StableParams(alpha=alpha, beta=beta)
        grid = np.linspace(-6.0, 6.0, 25)
        values = [stable_cdf(r, p) for r in grid]
        assert all(b - a >= -1e-7 for a, b in zip(values, values[1:]))
