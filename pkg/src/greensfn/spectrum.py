"""Spectrum partition across the imaginary axis and the half-plane-reduced scalars.

The coefficient matrix must have no eigenvalues on the imaginary axis
(exponential dichotomy).  Eigenvalues with positive real part are the ``mus``,
those with negative real part the ``nus``, each sorted the way the Newton-form
construction wants them: mus by descending real part, nus by ascending real
part, so that the leading divided differences stay small.

The "tilde" functions are the half-plane exponentials and indicator functions
divided by the opposite half-plane's node product, which halves the degree of
the interpolation problem.  Their z-derivatives are computed analytically via
the Leibniz rule and the reciprocal-product recurrence.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from math import comb, factorial

import numpy as np

from .matrices import spectral_norm

# axis_tol defaults to AXIS_RTOL * max(1, ||A||): scale-relative so the
# dichotomy check stays meaningful across magnitudes.
AXIS_RTOL = 1e-8


class DichotomyError(ValueError):
    """Some eigenvalue lies on (or too close to) the imaginary axis."""

    def __init__(self, offending):
        self.offending = tuple(offending)
        listed = ", ".join(f"{z:.6g}" for z in self.offending)
        super().__init__(f"eigenvalue(s) on the imaginary axis: {listed}")


class PoleError(ValueError):
    """A reduced scalar function was evaluated at one of its poles."""


@dataclass(frozen=True)
class SpectrumSplit:
    """Eigenvalues partitioned by the sign of their real part.

    ``mus`` lie in the open right half-plane, sorted by descending real part;
    ``nus`` in the open left half-plane, sorted by ascending real part; ties
    are broken by ascending imaginary part.  ``gap`` is the smallest |Re|
    over all eigenvalues and governs the e^(-gap*|t|) decay of the Green's
    function.
    """

    mus: tuple[complex, ...]
    nus: tuple[complex, ...]
    gap: float

    @property
    def size(self) -> int:
        return len(self.mus) + len(self.nus)

    @property
    def values(self) -> tuple[complex, ...]:
        """All eigenvalues in stored order (mus then nus)."""
        return self.mus + self.nus


def default_axis_tol(a) -> float:
    return AXIS_RTOL * max(1.0, spectral_norm(a))


def snap_eigenvalue_clusters(values, radius: float) -> np.ndarray:
    """Replace clusters of nearly equal eigenvalues by their exact mean.

    Single-linkage clustering with the given radius; every member of a
    cluster is snapped to the cluster mean so downstream code sees bitwise
    equal repeated nodes.  Divided differences switch to the derivative rule
    only on exact equality, so this pass is what makes multiple eigenvalues
    visible to the confluent machinery.
    """
    vals = np.asarray(values, dtype=complex).copy()
    n = len(vals)
    if n == 0 or radius <= 0.0:
        return vals
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(n):
        for j in range(i + 1, n):
            if abs(vals[i] - vals[j]) <= radius:
                parent[find(i)] = find(j)
    clusters: dict[int, list[int]] = {}
    for i in range(n):
        clusters.setdefault(find(i), []).append(i)
    for members in clusters.values():
        if len(members) > 1:
            mean = vals[members].mean()
            vals[members] = mean
    return vals


def split_spectrum(eigs, axis_tol: float) -> SpectrumSplit:
    """Partition eigenvalues across the imaginary axis and sort each side.

    Raises
    ------
    DichotomyError
        If any eigenvalue has |Re| <= axis_tol.
    """
    if axis_tol <= 0.0:
        raise ValueError("axis_tol must be positive")
    vals = [complex(z) for z in np.asarray(eigs, dtype=complex).ravel()]
    offending = [z for z in vals if abs(z.real) <= axis_tol]
    if offending:
        raise DichotomyError(offending)
    mus = sorted((z for z in vals if z.real > 0.0), key=lambda z: (-z.real, z.imag))
    nus = sorted((z for z in vals if z.real < 0.0), key=lambda z: (z.real, z.imag))
    gap = min(abs(z.real) for z in vals)
    return SpectrumSplit(mus=tuple(mus), nus=tuple(nus), gap=gap)


# ---------------------------------------------------------------------------
# Reduced scalar functions and their analytic derivatives
# ---------------------------------------------------------------------------


def _product_taylor(z: complex, poles, order: int) -> np.ndarray:
    """Taylor coefficients at z of Omega(w) = prod(w - p), up to given order.

    coef[i] = Omega^(i)(z) / i!.  Built by convolving the degree-one factor
    expansions, truncated at order+1 terms, which avoids the ill-conditioned
    global coefficient expansion.
    """
    coef = np.zeros(order + 1, dtype=complex)
    coef[0] = 1.0
    for p in poles:
        shifted = np.zeros_like(coef)
        shifted[1:] = coef[:-1]
        coef = coef * (z - p) + shifted
    return coef


def _reciprocal_derivatives(z: complex, poles, order: int) -> np.ndarray:
    """d^j/dz^j of 1 / prod(z - p), for j = 0..order.

    Uses the recurrence obtained by differentiating 1 = Omega * (1/Omega)
    j times: 0 = sum_i C(j,i) Omega^(i) (1/Omega)^(j-i).
    """
    z = complex(z)
    poles = tuple(complex(p) for p in poles)
    for p in poles:
        if z == p:
            raise PoleError(f"evaluation point {z} coincides with pole {p}")
    taylor = _product_taylor(z, poles, order)
    omega0 = taylor[0]
    if omega0 == 0.0:
        raise PoleError(f"evaluation point {z} lies on a pole of the node product")
    out = np.zeros(order + 1, dtype=complex)
    out[0] = 1.0 / omega0
    for j in range(1, order + 1):
        acc = 0.0 + 0.0j
        for i in range(1, j + 1):
            acc += comb(j, i) * taylor[i] * factorial(i) * out[j - i]
        out[j] = -acc / omega0
    return out


def tilde_exp_plus(z: complex, t: float, split: SpectrumSplit, order: int = 0) -> complex:
    """order-th z-derivative of e^(z t) / prod_i (z - mu_i), for t > 0."""
    if t <= 0.0:
        raise ValueError("tilde_exp_plus is defined for t > 0")
    return _exp_over_product(z, t, split.mus, order)


def tilde_exp_minus(z: complex, t: float, split: SpectrumSplit, order: int = 0) -> complex:
    """order-th z-derivative of e^(z t) / prod_j (z - nu_j), for t < 0."""
    if t >= 0.0:
        raise ValueError("tilde_exp_minus is defined for t < 0")
    return _exp_over_product(z, t, split.nus, order)


def _exp_over_product(z: complex, t: float, poles, order: int) -> complex:
    if order < 0:
        raise ValueError("derivative order must be nonnegative")
    recip = _reciprocal_derivatives(z, poles, order)
    ezt = cmath.exp(complex(z) * t)
    # Leibniz on e^(zt) * w(z); d^i e^(zt) = t^i e^(zt)
    total = 0.0 + 0.0j
    for i in range(order + 1):
        total += comb(order, i) * (t**i) * recip[order - i]
    return ezt * total


def tilde_pi_plus(z: complex, split: SpectrumSplit, order: int = 0) -> complex:
    """order-th z-derivative of 1 / prod_i (z - mu_i)."""
    if order < 0:
        raise ValueError("derivative order must be nonnegative")
    return complex(_reciprocal_derivatives(z, split.mus, order)[order])


def tilde_pi_minus(z: complex, split: SpectrumSplit, order: int = 0) -> complex:
    """order-th z-derivative of 1 / prod_j (z - nu_j)."""
    if order < 0:
        raise ValueError("derivative order must be nonnegative")
    return complex(_reciprocal_derivatives(z, split.nus, order)[order])
