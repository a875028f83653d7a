import numpy as np
import pytest

from greensfn import QuadratureError, QuadratureSpec
from greensfn.quadrature import integrate_panels, integrate_scalar_panels


class TestSpec:
    def test_defaults_valid(self):
        q = QuadratureSpec()
        assert q.horizon is None
        assert q.truncation(0.5) == pytest.approx(80.0)

    def test_explicit_horizon_wins(self):
        q = QuadratureSpec(horizon=7.0)
        assert q.truncation(0.01) == 7.0

    @pytest.mark.parametrize(
        "kwargs",
        [
            {"horizon": -1.0},
            {"rel_tol": 0.0},
            {"rel_tol": 2.0},
            {"max_panels": 4},
        ],
    )
    def test_validation(self, kwargs):
        with pytest.raises(ValueError):
            QuadratureSpec(**kwargs)

    def test_zero_gap_rejected(self):
        with pytest.raises(ValueError):
            QuadratureSpec().truncation(0.0)


class TestPanels:
    def test_jump_integrand(self):
        # integrand with a jump at 0 handled exactly by the panel split
        q = QuadratureSpec()
        got = integrate_scalar_panels(
            lambda s: 1.0 if s > 0 else 2.0, -1.0, 1.0, (0.0,), q
        )
        assert got == pytest.approx(3.0, abs=1e-12)

    def test_matrix_valued(self):
        q = QuadratureSpec()
        out = integrate_panels(
            lambda s: np.array([[np.exp(-s), 0.0], [0.0, 1.0]]), 0.0, 1.0, (), q
        )
        assert out[0, 0] == pytest.approx(1.0 - np.exp(-1.0), abs=1e-12)
        assert out[1, 1] == pytest.approx(1.0)

    def test_breaks_outside_interval_ignored(self):
        q = QuadratureSpec()
        got = integrate_scalar_panels(lambda s: s, 0.0, 1.0, (-5.0, 7.0), q)
        assert got == pytest.approx(0.5)

    def test_reversed_interval_rejected(self):
        with pytest.raises(ValueError):
            integrate_scalar_panels(lambda s: s, 1.0, 0.0, (), QuadratureSpec())

    def test_budget_exhaustion(self):
        q = QuadratureSpec(rel_tol=1e-12, max_panels=16)
        with pytest.raises(QuadratureError, match="panels"):
            integrate_scalar_panels(
                lambda s: np.sin(3000.0 * s * s), 0.0, 30.0, (), q
            )
