import cmath

import numpy as np
import pytest

from greensfn import (
    ForcingFunction,
    GreensEvaluator,
    QuadratureSpec,
    bounded_solution,
    constant_forcing,
    load_forcing_table,
    residual_check,
    trig_forcing,
)

from conftest import dichotomous

Q = QuadratureSpec()


class TestClosedForms:
    def test_scalar_constant_forcing(self):
        # x' = -x + 1 has the bounded solution x = 1
        a = np.array([[-1.0]], dtype=complex)
        ev = GreensEvaluator(a)
        f = constant_forcing([1.0])
        for t in (0.0, 1.0, -3.5):
            x = bounded_solution(a, f, t, Q, ev)
            assert abs(x[0] - 1.0) <= 1e-10

    def test_scalar_oscillating_forcing(self):
        a = np.array([[-1.0]], dtype=complex)
        f = ForcingFunction(sample=lambda t: np.array([cmath.exp(1j * t)]), dimension=1)
        x0 = bounded_solution(a, f, 0.0, Q)
        assert abs(x0[0] - 1.0 / (1.0 + 1.0j)) <= 1e-10

    def test_saddle_constant_forcing(self, diag_pm1):
        # componentwise: x1' = -x1 + 1 -> 1; x2' = x2 + 1 bounded -> -1
        a, ev = diag_pm1
        f = constant_forcing([1.0, 1.0])
        for t in (0.0, 0.3, -2.0):
            x = bounded_solution(a, f, t, Q, ev)
            assert np.max(np.abs(x - np.array([1.0, -1.0]))) <= 1e-10

    def test_accepts_precomputed_products(self, diag_pm1):
        a, ev = diag_pm1
        x = bounded_solution(a, constant_forcing([1.0, 1.0]), 0.0, Q, ev.products)
        assert np.max(np.abs(x - np.array([1.0, -1.0]))) <= 1e-10


class TestResidual:
    def test_scalar(self):
        a = np.array([[-1.0]], dtype=complex)
        r = residual_check(a, constant_forcing([1.0]), Q, grid=(-1.0, 0.0, 1.0), h=1e-3)
        assert r <= 1e-6

    def test_saddle(self, diag_pm1):
        a, ev = diag_pm1
        r = residual_check(a, constant_forcing([1.0, 1.0]), Q, ev, grid=(-1.0, 0.0, 1.0), h=1e-3)
        assert r <= 1e-5

    def test_random_trigonometric(self):
        a, ev = dichotomous(6, 21)
        r = residual_check(a, trig_forcing(6), Q, ev, grid=(-1.0, 0.0, 1.0), h=1e-3)
        assert r <= 1e-4

    def test_grid_spacing_guard(self, diag_pm1):
        a, ev = diag_pm1
        with pytest.raises(ValueError, match="2h"):
            residual_check(a, constant_forcing([1.0, 1.0]), Q, ev, grid=(0.0, 1e-4), h=1e-3)


class TestStructure:
    def test_linearity(self):
        a, ev = dichotomous(4, 22)
        f1 = trig_forcing(4)
        f2 = constant_forcing(np.array([1.0, -0.5, 0.25j, 0.0]))
        alpha = 0.6 - 0.3j
        combined = ForcingFunction(
            sample=lambda t: alpha * f1(t) + f2(t), dimension=4
        )
        t = 0.4
        lhs = bounded_solution(a, combined, t, Q, ev)
        rhs = alpha * bounded_solution(a, f1, t, Q, ev) + bounded_solution(a, f2, t, Q, ev)
        assert np.linalg.norm(lhs - rhs) <= 1e-8

    def test_time_invariance(self):
        a, ev = dichotomous(3, 23)
        f = trig_forcing(3)
        tau = 0.9
        shifted = ForcingFunction(sample=lambda t: f(t - tau), dimension=3)
        for t in (0.2, -1.1):
            x = bounded_solution(a, f, t, Q, ev)
            x_shifted = bounded_solution(a, shifted, t + tau, Q, ev)
            assert np.linalg.norm(x - x_shifted) <= 1e-6

    def test_boundedness_no_growth(self):
        a, ev = dichotomous(4, 24)
        f = trig_forcing(4)
        ts = np.linspace(-10.0, 10.0, 9)
        norms = np.array([np.linalg.norm(bounded_solution(a, f, float(t), Q, ev)) for t in ts])
        slope = np.polyfit(ts, norms, 1)[0]
        assert abs(slope) <= 0.05 * max(1.0, norms.mean())

    def test_dimension_mismatch(self, diag_pm1):
        a, ev = diag_pm1
        with pytest.raises(ValueError, match="dimension"):
            bounded_solution(a, constant_forcing([1.0]), 0.0, Q, ev)


class TestForcingTable:
    def _write(self, path, rows):
        path.write_text("\n".join(",".join(f"{v:.17g}" for v in row) for row in rows) + "\n")

    def test_interpolation_and_window(self, tmp_path):
        path = tmp_path / "f.csv"
        # f(t) = (t, i t) tabulated on [0, 2]
        self._write(path, [[0.0, 0.0, 0.0], [1.0, 1.0, 1.0], [2.0, 2.0, 2.0]])
        f = load_forcing_table(path)
        assert f.dimension == 1
        assert f.table_window == (0.0, 2.0)
        assert f(0.5)[0] == pytest.approx(0.5 + 0.5j)
        # constant continuation outside the table
        assert f(5.0)[0] == pytest.approx(2.0 + 2.0j)
        assert f(-3.0)[0] == pytest.approx(0.0)

    def test_bound_hint_covers_samples(self, tmp_path):
        path = tmp_path / "f.csv"
        self._write(path, [[0.0, 3.0, 0.0], [1.0, -4.0, 0.0]])
        f = load_forcing_table(path)
        assert f.bound_hint == pytest.approx(4.0)

    def test_requires_increasing_times(self, tmp_path):
        path = tmp_path / "f.csv"
        self._write(path, [[0.0, 1.0, 0.0], [0.0, 2.0, 0.0]])
        with pytest.raises(ValueError, match="increasing"):
            load_forcing_table(path)

    def test_requires_complete_pairs(self, tmp_path):
        path = tmp_path / "f.csv"
        path.write_text("0.0,1.0\n1.0,2.0\n")
        with pytest.raises(ValueError, match="columns"):
            load_forcing_table(path)

    def test_missing_file(self, tmp_path):
        with pytest.raises(ValueError, match="cannot read"):
            load_forcing_table(tmp_path / "absent.csv")

    def test_shape_guard_on_sampler(self):
        f = ForcingFunction(sample=lambda t: np.zeros(3), dimension=2)
        with pytest.raises(ValueError, match="shape"):
            f(0.0)
