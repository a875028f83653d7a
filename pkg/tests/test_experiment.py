import math

import numpy as np
import pytest

from greensfn import ExperimentConfig, run_experiment
from greensfn.experiment import draw_dichotomous_matrix, random_rectangle_matrix


class TestConfig:
    @pytest.mark.parametrize(
        "kwargs",
        [{"n": 0, "trials": 1}, {"n": 2, "trials": 0}, {"n": 2, "trials": 1, "t_grid": (0.0,)}],
    )
    def test_validation(self, kwargs):
        with pytest.raises(ValueError):
            ExperimentConfig(**kwargs)


class TestEnsemble:
    def test_rectangle_support(self):
        m = random_rectangle_matrix(50, np.random.default_rng(0))
        assert np.max(np.abs(m.real)) <= 1.0
        assert np.max(np.abs(m.imag)) <= 1.0
        assert np.min(np.abs(m.real)) >= 0.0

    def test_draw_deterministic(self):
        a1, _, r1 = draw_dichotomous_matrix(5, np.random.default_rng(3))
        a2, _, r2 = draw_dichotomous_matrix(5, np.random.default_rng(3))
        assert np.array_equal(a1, a2)
        assert r1 == r2


class TestRun:
    def test_rows_and_summary(self):
        cfg = ExperimentConfig(n=6, trials=3, seed=11, with_condition_bounds=False)
        result = run_experiment(cfg)
        assert len(result.rows) == 3
        assert [r.trial for r in result.rows] == [0, 1, 2]
        assert [r.seed for r in result.rows] == [11, 12, 13]
        for r in result.rows:
            assert r.max_residual <= 1e-8
            assert math.isfinite(r.oracle_deviation)
            assert math.isnan(r.bound_pos)
        summary = result.summary()
        assert set(summary) >= {
            "residual_q50",
            "residual_q90",
            "residual_max",
            "median_oracle_deviation",
            "total_resamples",
        }
        assert "median_bound" not in summary

    def test_reproducible(self):
        cfg = ExperimentConfig(n=4, trials=2, seed=5, with_condition_bounds=False)
        r1 = run_experiment(cfg)
        r2 = run_experiment(cfg)
        assert r1.rows == r2.rows

    def test_bounds_when_enabled(self):
        cfg = ExperimentConfig(n=3, trials=1, seed=2)
        result = run_experiment(cfg)
        assert result.rows[0].bound_pos > 0.0
        assert result.rows[0].bound_neg > 0.0
        assert "median_bound" in result.summary()
