import cmath

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from greensfn import (
    DichotomyError,
    PoleError,
    SpectrumSplit,
    snap_eigenvalue_clusters,
    split_spectrum,
    tilde_exp_minus,
    tilde_exp_plus,
    tilde_pi_minus,
    tilde_pi_plus,
)

TOL = 1e-8


class TestSplit:
    def test_simple(self):
        s = split_spectrum([-1.0, 1.0], TOL)
        assert s.mus == (1.0,)
        assert s.nus == (-1.0,)
        assert s.gap == pytest.approx(1.0)

    def test_sort_orders(self):
        s = split_spectrum([-2.0, 3.0, -0.5, 1.0], TOL)
        assert s.mus == (3.0, 1.0)  # descending real part
        assert s.nus == (-2.0, -0.5)  # ascending real part
        assert s.gap == pytest.approx(0.5)

    def test_tie_broken_by_imaginary(self):
        s = split_spectrum([1.0 + 2.0j, 1.0 - 1.0j, -3.0], TOL)
        assert s.mus == (1.0 - 1.0j, 1.0 + 2.0j)

    def test_imaginary_axis_rejected(self):
        with pytest.raises(DichotomyError) as err:
            split_spectrum([1.0j], TOL)
        assert err.value.offending == (1.0j,)

    def test_near_axis_rejected(self):
        with pytest.raises(DichotomyError):
            split_spectrum([1e-12, -1.0], TOL)

    def test_idempotent(self):
        s = split_spectrum([-2.0, 3.0, -0.5 + 1.0j, 1.0], TOL)
        again = split_spectrum(s.mus + s.nus, TOL)
        assert again == s

    def test_gap_independent_computation(self):
        vals = [-2.0, 3.0, -0.5, 1.0, 0.25 + 4.0j]
        s = split_spectrum(vals, TOL)
        # the closest-to-axis members are the last mu and the last nu
        assert s.gap == pytest.approx(min(s.mus[-1].real, -s.nus[-1].real))


class TestClusterSnap:
    def test_snaps_to_mean(self):
        vals = np.array([1.0, 1.0 + 1e-12, 5.0], dtype=complex)
        out = snap_eigenvalue_clusters(vals, 1e-10)
        assert out[0] == out[1]
        assert out[2] == 5.0

    def test_leaves_separated_values(self):
        vals = np.array([1.0, 1.1], dtype=complex)
        out = snap_eigenvalue_clusters(vals, 1e-10)
        assert out[0] != out[1]

    def test_transitive_chain(self):
        vals = np.array([0.0, 1e-11, 2e-11], dtype=complex)
        out = snap_eigenvalue_clusters(vals, 1.5e-11)
        assert out[0] == out[1] == out[2]


SPLIT_ONE = SpectrumSplit(mus=(1.0 + 0j,), nus=(-1.0 + 0j,), gap=1.0)
SPLIT_EMPTY_MU = SpectrumSplit(mus=(), nus=(-1.0 + 0j, -2.0 + 0j), gap=1.0)
SPLIT_TWO_NU = SpectrumSplit(mus=(2.0 + 0j,), nus=(-2.0 + 0j, -1.0 + 0j), gap=1.0)


class TestTildeValues:
    def test_exp_plus_no_poles(self):
        assert tilde_exp_plus(-1.0, 1.0, SPLIT_EMPTY_MU, 0) == pytest.approx(cmath.exp(-1))

    def test_exp_plus_single_pole(self):
        got = tilde_exp_plus(-1.0, 1.0, SPLIT_ONE, 0)
        assert got == pytest.approx(-cmath.exp(-1) / 2.0)

    def test_exp_minus_no_poles(self):
        split = SpectrumSplit(mus=(1.0 + 0j, 2.0 + 0j), nus=(), gap=1.0)
        assert tilde_exp_minus(1.0, -1.0, split, 0) == pytest.approx(cmath.exp(-1))

    def test_exp_minus_single_pole(self):
        assert tilde_exp_minus(1.0, -1.0, SPLIT_ONE, 0) == pytest.approx(cmath.exp(-1) / 2.0)

    def test_exp_minus_two_poles(self):
        got = tilde_exp_minus(2.0, -0.5, SPLIT_TWO_NU, 0)
        assert got == pytest.approx(cmath.exp(-1) / 12.0)  # e^-1 / ((2+2)(2+1))

    def test_pi_plus_empty(self):
        assert tilde_pi_plus(0.3 + 2j, SPLIT_EMPTY_MU, 0) == pytest.approx(1.0)
        assert tilde_pi_plus(0.3 + 2j, SPLIT_EMPTY_MU, 1) == pytest.approx(0.0)

    def test_pi_plus_values(self):
        assert tilde_pi_plus(-1.0, SPLIT_ONE, 0) == pytest.approx(-0.5)
        # d/dz (z-1)^-1 = -(z-1)^-2 -> -1/4 at z=-1
        assert tilde_pi_plus(-1.0, SPLIT_ONE, 1) == pytest.approx(-0.25)

    def test_pi_minus_values(self):
        assert tilde_pi_minus(1.0, SPLIT_ONE, 0) == pytest.approx(0.5)
        assert tilde_pi_minus(1.0, SPLIT_TWO_NU, 0) == pytest.approx(1.0 / 6.0)

    def test_pole_hit(self):
        with pytest.raises(PoleError):
            tilde_pi_plus(1.0, SPLIT_ONE, 0)
        with pytest.raises(PoleError):
            tilde_exp_plus(1.0 + 0j, 2.0, SPLIT_ONE, 1)

    def test_wrong_time_sign(self):
        with pytest.raises(ValueError):
            tilde_exp_plus(-1.0, -1.0, SPLIT_ONE, 0)
        with pytest.raises(ValueError):
            tilde_exp_minus(1.0, 1.0, SPLIT_ONE, 0)


def _fd(fun, z, h=1e-5):
    return (fun(z + h) - fun(z - h)) / (2.0 * h)


@given(
    st.floats(min_value=-3.0, max_value=-0.5),
    st.floats(min_value=-2.0, max_value=2.0),
)
@settings(max_examples=20, deadline=None)
def test_first_derivatives_match_finite_differences(re, im):
    z = complex(re, im)
    split = SpectrumSplit(mus=(1.0 + 0.5j, 2.0 + 0j), nus=(-1.5 + 0j,), gap=1.0)
    cases = [
        (lambda w: tilde_exp_plus(w, 0.8, split, 0), lambda w: tilde_exp_plus(w, 0.8, split, 1)),
        (lambda w: tilde_pi_plus(w, split, 0), lambda w: tilde_pi_plus(w, split, 1)),
    ]
    for fun, dfun in cases:
        exact = dfun(z)
        approx = _fd(fun, z)
        assert abs(exact - approx) <= 1e-7 * max(1.0, abs(exact))


def test_minus_side_derivatives_match_finite_differences():
    split = SpectrumSplit(mus=(0.7 + 0j,), nus=(-1.0 + 0.3j, -2.5 + 0j), gap=0.7)
    for z in (1.2 + 0.4j, 2.0 - 1.0j):
        exact = tilde_exp_minus(z, -0.6, split, 1)
        approx = _fd(lambda w: tilde_exp_minus(w, -0.6, split, 0), z)
        assert abs(exact - approx) <= 1e-7 * max(1.0, abs(exact))
        exact = tilde_pi_minus(z, split, 1)
        approx = _fd(lambda w: tilde_pi_minus(w, split, 0), z)
        assert abs(exact - approx) <= 1e-7 * max(1.0, abs(exact))


def test_higher_order_derivative_consistency():
    # order-2 derivative vs second difference of the analytic first derivative
    split = SpectrumSplit(mus=(1.0 + 0j,), nus=(), gap=1.0)
    z = -1.3 + 0.2j
    exact = tilde_exp_plus(z, 1.0, split, 2)
    approx = _fd(lambda w: tilde_exp_plus(w, 1.0, split, 1), z)
    assert abs(exact - approx) <= 1e-7 * max(1.0, abs(exact))
