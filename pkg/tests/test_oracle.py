import json

import numpy as np
import pytest

from divbounds import (
    DomainError,
    PINNED_TV_CONVENTION,
    TvConvention,
    fuzz_sandwich,
    min_kl_at_tv,
    resolve_tv_convention,
    vajda_lower_bound,
)
from divbounds.oracle import OracleGridSpec, SandwichViolation
from divbounds.pinsker import SandwichReport


class TestOracleGridSpec:
    def test_defaults_tolerance_to_step(self):
        spec = OracleGridSpec(step=0.01, constraint_delta=0.5)
        assert spec.constraint_tol == 0.01

    @pytest.mark.parametrize(
        "kwargs",
        [
            {"support_size": 4},
            {"step": 0.0},
            {"step": 0.7},
            {"step": 0.01, "constraint_tol": 0.001},
            {"constraint_delta": 2.5},
        ],
    )
    def test_validation(self, kwargs):
        with pytest.raises(DomainError):
            OracleGridSpec(**kwargs)


class TestMinKlAtTv:
    def test_zero_delta_is_zero(self):
        spec = OracleGridSpec(step=0.01, constraint_delta=0.0)
        assert min_kl_at_tv(spec) == 0.0

    def test_requires_constraint(self):
        with pytest.raises(DomainError):
            min_kl_at_tv(OracleGridSpec(step=0.01))

    def test_binary_brackets_lower_bound_coarse(self):
        # exact from below, near-attained from above; coarse grid keeps
        # this module test fast, the acceptance suite runs step 1e-3
        for delta in (0.2, 0.9, 1.3):
            spec = OracleGridSpec(step=0.01, constraint_delta=delta)
            gap = min_kl_at_tv(spec) - vajda_lower_bound(delta)
            assert -1e-9 <= gap <= 5e-2

    def test_binary_never_below_curve_on_attainable_grid(self):
        for delta in np.arange(0.1, 1.95, 0.1).round(3):
            spec = OracleGridSpec(step=0.05, constraint_delta=float(delta))
            assert min_kl_at_tv(spec) >= vajda_lower_bound(float(delta)) - 1e-9

    def test_ternary_spot_check(self):
        spec = OracleGridSpec(support_size=3, step=0.01, constraint_delta=0.5)
        gap = min_kl_at_tv(spec) - vajda_lower_bound(0.5)
        assert -1e-9 <= gap <= 5e-2

    def test_saturated_delta_returns_inf(self):
        # only disjoint pairs reach variational TV 2; their KL is infinite
        spec = OracleGridSpec(step=0.5, constraint_delta=2.0)
        assert min_kl_at_tv(spec) == np.inf


class TestFuzzSandwich:
    def test_trial_count_validated(self):
        with pytest.raises(DomainError):
            fuzz_sandwich(0, max_support=4, seed=1)
        with pytest.raises(DomainError):
            fuzz_sandwich(10, max_support=1, seed=1)

    def test_no_violations_small_run(self):
        report = fuzz_sandwich(2000, max_support=6, seed=123)
        assert report.ok
        assert report.n_violations == 0
        assert report.n_trials == 2000

    def test_reproducible(self):
        a = fuzz_sandwich(500, max_support=5, seed=77)
        b = fuzz_sandwich(500, max_support=5, seed=77)
        assert a.violations == b.violations
        assert a.to_json_lines() == b.to_json_lines()

    @pytest.mark.parametrize("seed", range(1, 11))
    def test_clean_across_seed_sweep(self, seed):
        assert fuzz_sandwich(1000, max_support=6, seed=seed).ok

    def test_violation_serialization_shape(self):
        from divbounds.serialize import dumps

        report = SandwichReport(
            poly_lb=0.2, vajda_lb=0.3, divergence=0.1, upper=0.4, all_hold=False
        )
        violation = SandwichViolation(p=(0.5, 0.5), q=(0.9, 0.1), report=report)
        payload = json.loads(dumps(violation.as_dict()))
        assert payload["p"] == [0.5, 0.5]
        assert payload["q"] == [0.9, 0.1]
        assert payload["all_hold"] is False
        assert payload["divergence"] == 0.1


class TestResolveTvConvention:
    def test_returns_sup(self):
        assert resolve_tv_convention() is TvConvention.SUP

    def test_deterministic(self):
        assert resolve_tv_convention() is resolve_tv_convention()

    def test_matches_pinned_constant(self):
        assert resolve_tv_convention() is PINNED_TV_CONVENTION

    def test_coarser_grid_agrees(self):
        assert resolve_tv_convention(step=0.01) is TvConvention.SUP
