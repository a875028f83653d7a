"""Sensitivity of the Green's function to perturbations of the coefficient.

The differential of A -> g_t(A) acts on a perturbation dA as the convolution
integral of G(s) dA G(t-s) over the line; its spectrum is the set of
two-point divided differences g_t[lam, mu] over ordered eigenvalue pairs,
for which closed forms exist branch by branch.  The bound

    ||dg_t(., A)|| <= integral of ||G(s)|| * ||G(t-s)|| ds

is what gets reported as the condition estimate; the exact operator norm in
the spectral-induced metric has no closed form, so alongside the bound we
report the spectral extent max |g_t[lam, mu]| (a lower reference) and, for
small sizes, the Frobenius-lift matrix whose induced 2-norm is computable.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass

import numpy as np

from .greens import GreensEvaluator, PrecomputedProducts, as_evaluator
from .matrices import as_matrix
from .quadrature import QuadratureSpec, integrate_panels, integrate_scalar_panels

# Size guard for the explicit N^2 x N^2 lift.
KRONECKER_SIZE_CAP = 8


@dataclass(frozen=True)
class CondEstimate:
    """Condition estimate at one time.

    ``bound`` is the convolution-of-norms upper bound, ``spectrum_extent``
    the largest |g_t[lam, mu]| over eigenvalue pairs (always <= bound up to
    quadrature tolerance), and ``truncation_error_est`` a fitted estimate of
    what the discarded integral tails contribute.
    """

    t: float
    bound: float
    spectrum_extent: float
    truncation_error_est: float


def _exp_plus_dd(lam: complex, mu: complex, t: float) -> complex:
    if lam.real < 0.0 and mu.real < 0.0:
        if lam == mu:
            return t * cmath.exp(lam * t)
        return (cmath.exp(lam * t) - cmath.exp(mu * t)) / (lam - mu)
    if lam.real < 0.0 < mu.real:
        return cmath.exp(lam * t) / (lam - mu)
    if mu.real < 0.0 < lam.real:
        return -cmath.exp(mu * t) / (lam - mu)
    return 0.0 + 0.0j


def _exp_minus_dd(lam: complex, mu: complex, t: float) -> complex:
    if lam.real > 0.0 and mu.real > 0.0:
        if lam == mu:
            return t * cmath.exp(lam * t)
        return (cmath.exp(lam * t) - cmath.exp(mu * t)) / (lam - mu)
    if lam.real < 0.0 < mu.real:
        return -cmath.exp(mu * t) / (lam - mu)
    if mu.real < 0.0 < lam.real:
        return cmath.exp(lam * t) / (lam - mu)
    return 0.0 + 0.0j


def gt_divided_diff(lam: complex, mu: complex, t: float) -> complex:
    """Two-point divided difference g_t[lam, mu], by the piecewise closed forms.

    Requires both arguments off the imaginary axis and t nonzero; the
    confluent branch t*e^(lam t) applies only to exactly equal arguments.
    """
    lam = complex(lam)
    mu = complex(mu)
    t = float(t)
    if t == 0.0:
        raise ValueError("g_t is not defined at t = 0")
    if lam.real == 0.0 or mu.real == 0.0:
        raise ValueError(f"arguments must avoid the imaginary axis: {lam}, {mu}")
    if t > 0.0:
        return _exp_plus_dd(lam, mu, t)
    return -_exp_minus_dd(lam, mu, t)


def differential_spectrum(
    a, t: float, ev: GreensEvaluator | PrecomputedProducts | None = None
) -> np.ndarray:
    """Spectrum of the differential: the multiset {g_t[lam, mu]} over N^2 pairs."""
    ev = as_evaluator(a, ev)
    vals = ev.split.values
    return np.array(
        [gt_divided_diff(lam, mu, t) for lam in vals for mu in vals], dtype=complex
    )


def apply_differential(
    a, da, t: float, q: QuadratureSpec,
    ev: GreensEvaluator | PrecomputedProducts | None = None,
) -> np.ndarray:
    """Directional derivative of g_t at A in direction dA, by quadrature.

    Integrates s -> G(s) dA G(t-s) over [-T, T] with panels split at the
    jump points s = 0 and s = t.
    """
    a = as_matrix(a)
    da = as_matrix(da)
    if da.shape != a.shape:
        raise ValueError(f"perturbation shape {da.shape} != matrix shape {a.shape}")
    t = float(t)
    if t == 0.0:
        raise ValueError("the differential is considered at nonzero t only")
    ev = as_evaluator(a, ev)
    horizon = q.truncation(ev.gap)

    def integrand(s: float) -> np.ndarray:
        return ev.green(s) @ da @ ev.green(t - s)

    return integrate_panels(integrand, -horizon, horizon, (0.0, t), q)


def kronecker_differential_oracle(
    a, t: float, q: QuadratureSpec,
    ev: GreensEvaluator | PrecomputedProducts | None = None,
) -> np.ndarray:
    """The differential as an explicit N^2 x N^2 matrix on column-stacked input.

    K vec(dA) = vec(dg_t(dA, A)) with vec in column-major (Fortran) order,
    via vec(M1 X M2) = (M2^T kron M1) vec(X) applied under the integral.
    Guarded to small sizes; meant as an independent cross-check of both
    apply_differential and the closed-form spectrum.
    """
    a = as_matrix(a)
    n = a.shape[0]
    if n > KRONECKER_SIZE_CAP:
        raise ValueError(f"Kronecker lift limited to N <= {KRONECKER_SIZE_CAP}, got {n}")
    t = float(t)
    if t == 0.0:
        raise ValueError("the differential is considered at nonzero t only")
    ev = as_evaluator(a, ev)
    horizon = q.truncation(ev.gap)

    def integrand(s: float) -> np.ndarray:
        return np.kron(ev.green(t - s).T, ev.green(s))

    return integrate_panels(integrand, -horizon, horizon, (0.0, t), q)


def frobenius_lift_norm(
    a, t: float, q: QuadratureSpec, ev: GreensEvaluator | PrecomputedProducts | None = None
) -> float:
    """Frobenius-induced operator norm of the differential, via the lift.

    This is the largest singular value of the explicit N^2 x N^2 matrix, so
    it inherits the lift's size guard.  It is NOT the spectral-induced
    operator norm (no closed form exists for that one); it is however also
    dominated by the convolution-of-norms bound, since the elementary
    integrand terms X -> G(s) X G(t-s) have equal norms in both metrics.
    """
    return float(np.linalg.norm(kronecker_differential_oracle(a, t, q, ev), 2))


def condition_bound(
    a, t: float, q: QuadratureSpec,
    ev: GreensEvaluator | PrecomputedProducts | None = None,
) -> CondEstimate:
    """Convolution-of-norms bound on the differential norm at one time."""
    t = float(t)
    if t == 0.0:
        raise ValueError("the condition bound is considered at nonzero t only")
    ev = as_evaluator(a, ev)
    horizon = q.truncation(ev.gap)
    bound = integrate_scalar_panels(
        lambda s: ev.green_norm(s) * ev.green_norm(t - s),
        -horizon,
        horizon,
        (0.0, t),
        q,
    )
    extent = float(np.max(np.abs(differential_spectrum(a, t, ev))))
    gap = ev.gap
    # fit ||G(s)|| ~ C e^(-gap |s|) at |s| = 1 and report the neglected tail scale
    c_fit = max(ev.green_norm(1.0), ev.green_norm(-1.0)) * float(np.exp(gap))
    trunc = c_fit * float(np.exp(-gap * horizon)) / gap
    return CondEstimate(
        t=t, bound=bound, spectrum_extent=extent, truncation_error_est=trunc
    )


def norm_profile(
    a, t_grid, ev: GreensEvaluator | PrecomputedProducts | None = None
) -> list[tuple[float, float]]:
    """Samples of t -> ||G(t)|| on a grid of nonzero times."""
    grid = [float(t) for t in t_grid]
    if any(t == 0.0 for t in grid):
        raise ValueError("the norm profile is defined for nonzero t only")
    ev = as_evaluator(a, ev)
    return [(t, ev.green_norm(t)) for t in grid]
