"""Newton-form engine for the Green's function and the spectral projectors.

For t > 0 the Green's function is p_t_plus(A) where p_t_plus interpolates the
left-half-plane exponential; because that function vanishes with all its
derivatives at the right-half-plane eigenvalues, the Newton polynomial
factors as prod_i (A - mu_i I) times a polynomial of half the degree built
from divided differences of the reduced exponential at the nu nodes.  The
half-degree factor is evaluated on A by a backward Horner recurrence, and
the node products do not depend on t, so they are formed once and reused
for every t.

For t < 0 the roles of the half-planes swap and the overall sign flips.
The projectors onto the invariant subspaces come out of the same machinery
with the exponential replaced by the half-plane indicator functions.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from functools import lru_cache
from math import comb

import numpy as np

from .divdiff import AnalyticFunction, divided_differences
from .matrices import as_matrix, eigenvalues, spectral_norm
from .spectrum import (
    DichotomyError,
    SpectrumSplit,
    _reciprocal_derivatives,
    default_axis_tol,
    snap_eigenvalue_clusters,
    split_spectrum,
    tilde_exp_minus,
    tilde_exp_plus,
    tilde_pi_minus,
    tilde_pi_plus,
)

# Eigenvalues closer than CLUSTER_SNAP_RTOL * ||A|| are treated as one
# multiple eigenvalue (snapped to the cluster mean).  Jordan structure is
# numerically unstable anyway, so multiplicities are taken as algebraic.
CLUSTER_SNAP_RTOL = 1e-10

# Eigendecomposition route declines above this eigenvector condition number.
ORACLE_CONDITION_CAP = 1e8

# Step for the d/dt G = A G probe in verify_greens.  With a second-order
# central difference the truncation term is |lambda|^3 h^2 / 6, which at
# 1e-5 sits around 1e-10 for spectra of radius ~3, comfortably below the
# certification thresholds.
VERIFY_FD_STEP = 1e-5


class OracleUnavailable(RuntimeError):
    """Eigenvector basis too ill-conditioned for the diagonalization route."""


@dataclass(frozen=True)
class NewtonForm:
    """Interpolation nodes and divided-difference coefficients for one half.

    ``half`` records which factorization the form feeds: "plus" forms carry
    the reduced forward exponential on the nu nodes, "minus" forms the
    reduced backward exponential on the mu nodes.
    """

    nodes: tuple[complex, ...]
    coeffs: tuple[complex, ...]
    half: str

    def __len__(self) -> int:
        return len(self.nodes)

    def evaluate_scalar(self, z: complex) -> complex:
        """Evaluate the Newton polynomial at a scalar point (Horner)."""
        if not self.nodes:
            return 0.0 + 0.0j
        acc = self.coeffs[-1]
        for c, node in zip(self.coeffs[-2::-1], self.nodes[-2::-1]):
            acc = acc * (z - node) + c
        return complex(acc)


@dataclass(eq=False)
class PrecomputedProducts:
    """The t-independent node products prod(A - mu_i I) and prod(A - nu_j I)."""

    prod_mu: np.ndarray
    prod_nu: np.ndarray
    split: SpectrumSplit


@dataclass(frozen=True)
class GreensReport:
    """Residuals of the defining identities, maximized over the sample set."""

    residual_projector_idempotent: float
    residual_partition: float
    residual_semigroup: float
    residual_annihilation: float
    residual_derivative: float

    def as_dict(self) -> dict[str, float]:
        return {
            "residual_projector_idempotent": self.residual_projector_idempotent,
            "residual_partition": self.residual_partition,
            "residual_semigroup": self.residual_semigroup,
            "residual_annihilation": self.residual_annihilation,
            "residual_derivative": self.residual_derivative,
        }

    def max_residual(self) -> float:
        return max(self.as_dict().values())


def spectrum_split_of(a, axis_tol: float | None = None) -> SpectrumSplit:
    """Eigenvalues -> cluster snap -> dichotomy split, the standard pipeline."""
    a = as_matrix(a)
    eig = eigenvalues(a)
    vals = snap_eigenvalue_clusters(eig.values, CLUSTER_SNAP_RTOL * spectral_norm(a))
    if axis_tol is None:
        axis_tol = default_axis_tol(a)
    return split_spectrum(vals, axis_tol)


def precompute_products(a, split: SpectrumSplit) -> PrecomputedProducts:
    """Form both node products left-to-right in the split's stored order."""
    a = as_matrix(a)
    n = a.shape[0]
    ident = np.eye(n, dtype=complex)
    prod_mu = ident
    for mu in split.mus:
        prod_mu = prod_mu @ (a - mu * ident)
    prod_nu = ident
    for nu in split.nus:
        prod_nu = prod_nu @ (a - nu * ident)
    return PrecomputedProducts(prod_mu=prod_mu, prod_nu=prod_nu, split=split)


@lru_cache(maxsize=256)
def _pole_denominators(nodes: tuple, poles: tuple) -> np.ndarray:
    """prod(node - pole) per node; t-independent, so cached per split."""
    arr = np.empty(len(nodes), dtype=complex)
    for j, z in enumerate(nodes):
        d = 1.0 + 0.0j
        for p in poles:
            d *= z - p
        arr[j] = d
    return arr


def _distinct_dd_coeffs(nodes: np.ndarray, values: np.ndarray) -> np.ndarray:
    """Leading divided-difference row for pairwise distinct nodes, vectorized."""
    n = len(nodes)
    lead = np.empty(n, dtype=complex)
    col = values
    lead[0] = col[0]
    for m in range(1, n):
        col = (col[1:] - col[:-1]) / (nodes[m:] - nodes[:-m])
        lead[m] = col[0]
    return lead


def newton_form(t: float, split: SpectrumSplit) -> NewtonForm:
    """Divided-difference coefficients of the reduced exponential for one t.

    t > 0: nodes are the nus, coefficients are divided differences of
    e^(z t) / prod(z - mu_i).  t < 0: nodes are the mus, coefficients are
    divided differences of e^(z t) / prod(z - nu_j).  Runs of equal nodes
    are handled through the analytic derivatives of the reduced exponential.
    An empty node set yields the empty form (the Green's function vanishes
    on that side).
    """
    t = float(t)
    if t == 0.0:
        raise ValueError("the Green's function is not defined at t = 0")
    if t > 0.0:
        nodes, poles, half = split.nus, split.mus, "plus"
    else:
        nodes, poles, half = split.mus, split.nus, "minus"
    if not nodes:
        return NewtonForm(nodes=(), coeffs=(), half=half)
    if len(set(nodes)) == len(nodes):
        # generic case: the pole products are t-independent, so only the
        # exponentials and the triangle are per-t work
        arr = np.array(nodes, dtype=complex)
        values = np.exp(arr * t) / _pole_denominators(nodes, poles)
        coeffs = _distinct_dd_coeffs(arr, values)
        return NewtonForm(nodes=nodes, coeffs=tuple(coeffs), half=half)
    if t > 0.0:
        f = AnalyticFunction(
            value=lambda z: tilde_exp_plus(z, t, split, 0),
            derivative=lambda z, j: tilde_exp_plus(z, t, split, j),
        )
    else:
        f = AnalyticFunction(
            value=lambda z: tilde_exp_minus(z, t, split, 0),
            derivative=lambda z, j: tilde_exp_minus(z, t, split, j),
        )
    table = divided_differences(f, nodes)
    return NewtonForm(nodes=table.nodes, coeffs=table.coeffs, half=half)


def _horner_on_matrix(a: np.ndarray, form: NewtonForm) -> np.ndarray:
    """Backward Horner accumulation of the Newton polynomial at the matrix."""
    n = a.shape[0]
    ident = np.eye(n, dtype=complex)
    acc = form.coeffs[-1] * ident
    for c, node in zip(form.coeffs[-2::-1], form.nodes[-2::-1]):
        acc = (a - node * ident) @ acc + c * ident
    return acc


def greens_function(a, t: float, pre: PrecomputedProducts) -> np.ndarray:
    """Green's matrix at one nonzero time via the Newton/Horner scheme."""
    a = as_matrix(a)
    t = float(t)
    if t == 0.0:
        raise ValueError(
            "the Green's function jumps at t = 0; use spectral_projectors "
            "for the one-sided limits"
        )
    n = a.shape[0]
    form = newton_form(t, pre.split)
    if len(form) == 0:
        return np.zeros((n, n), dtype=complex)
    q = _horner_on_matrix(a, form)
    if t > 0.0:
        return q @ pre.prod_mu
    return -(q @ pre.prod_nu)


def spectral_projectors(a, pre: PrecomputedProducts) -> tuple[np.ndarray, np.ndarray]:
    """Projectors P+ (onto the decaying subspace) and P- (P+ - P- = I).

    The plus indicator equals 1 on the left half-plane, so its reduced form
    1/prod(z - mu_i) is interpolated at the nus.  The minus indicator equals
    -1 on the right half-plane; that sign is folded into the reduced
    function -1/prod(z - nu_j) interpolated at the mus, which makes
    P+ - P- = I and P- = G(-0) come out with the conventional signs.
    """
    a = as_matrix(a)
    n = a.shape[0]
    split = pre.split
    if split.nus:
        f = AnalyticFunction(
            value=lambda z: tilde_pi_plus(z, split, 0),
            derivative=lambda z, j: tilde_pi_plus(z, split, j),
        )
        table = divided_differences(f, split.nus)
        form = NewtonForm(nodes=table.nodes, coeffs=table.coeffs, half="plus")
        p_plus = _horner_on_matrix(a, form) @ pre.prod_mu
    else:
        p_plus = np.zeros((n, n), dtype=complex)
    if split.mus:
        f = AnalyticFunction(
            value=lambda z: -tilde_pi_minus(z, split, 0),
            derivative=lambda z, j: -tilde_pi_minus(z, split, j),
        )
        table = divided_differences(f, split.mus)
        form = NewtonForm(nodes=table.nodes, coeffs=table.coeffs, half="minus")
        p_minus = _horner_on_matrix(a, form) @ pre.prod_nu
    else:
        p_minus = np.zeros((n, n), dtype=complex)
    return p_plus, p_minus


def greens_central_difference(
    a, t: float, fd_step: float, pre: PrecomputedProducts
) -> np.ndarray:
    """G(t+h) - G(t-h) through a single Newton form of the t-difference.

    Divided differences are linear in the interpolated function, so instead
    of subtracting two nearly equal Green's matrices (which would amplify
    their rounding error by 1/h), the difference of reduced exponentials
    2 sinh(z h) e^(z t) / prod(z - p) is interpolated directly.  Requires
    t + h and t - h on the same side of zero.
    """
    a = as_matrix(a)
    t = float(t)
    h = float(fd_step)
    if h <= 0.0 or abs(t) <= h:
        raise ValueError("need 0 < fd_step < |t| so both probes share a sign")
    split = pre.split
    if t > 0.0:
        nodes, poles, prod, sign = split.nus, split.mus, pre.prod_mu, 1.0
    else:
        nodes, poles, prod, sign = split.mus, split.nus, pre.prod_nu, -1.0
    n = a.shape[0]
    if not nodes:
        return np.zeros((n, n), dtype=complex)

    def deriv(z: complex, j: int) -> complex:
        recip = _reciprocal_derivatives(z, poles, j)
        total = 0.0 + 0.0j
        for i in range(j + 1):
            if i == 0:
                # stable form of e^(z(t+h)) - e^(z(t-h))
                factor = 2.0 * np.sinh(complex(z) * h) * cmath.exp(complex(z) * t)
            else:
                factor = (t + h) ** i * cmath.exp(complex(z) * (t + h)) - (
                    t - h
                ) ** i * cmath.exp(complex(z) * (t - h))
            total += comb(j, i) * factor * recip[j - i]
        return total

    f = AnalyticFunction(value=lambda z: deriv(z, 0), derivative=deriv)
    table = divided_differences(f, nodes)
    form = NewtonForm(nodes=table.nodes, coeffs=table.coeffs, half="diff")
    return sign * (_horner_on_matrix(a, form) @ prod)


def greens_scalar(lam: complex, t: float) -> complex:
    """The scalar kernel: e^(lam t) on the decaying side, 0 on the other."""
    lam = complex(lam)
    t = float(t)
    if t == 0.0 or lam.real == 0.0:
        raise ValueError("greens_scalar requires t != 0 and Re(lam) != 0")
    if t > 0.0:
        return cmath.exp(lam * t) if lam.real < 0.0 else 0.0 + 0.0j
    return -cmath.exp(lam * t) if lam.real > 0.0 else 0.0 + 0.0j


def greens_oracle(a, t: float) -> np.ndarray:
    """Independent route: apply the scalar kernel through eigendecomposition.

    Declines (OracleUnavailable) when the eigenvector matrix condition
    number exceeds ORACLE_CONDITION_CAP, since V diag(g) V^-1 is then
    untrustworthy.
    """
    a = as_matrix(a)
    t = float(t)
    if t == 0.0:
        raise ValueError("the Green's function is not defined at t = 0")
    eig = eigenvalues(a, want_vectors=True)
    cond = eig.condition_hint
    if cond is None or not np.isfinite(cond) or cond > ORACLE_CONDITION_CAP:
        raise OracleUnavailable(
            f"eigenvector condition {cond:.3e} exceeds cap {ORACLE_CONDITION_CAP:.0e}"
        )
    axis_tol = default_axis_tol(a)
    offenders = [z for z in eig.values if abs(z.real) <= axis_tol]
    if offenders:
        raise DichotomyError(offenders)
    g = np.array([greens_scalar(lam, t) for lam in eig.values], dtype=complex)
    v = eig.vectors
    w = v * g[np.newaxis, :]
    # (V diag(g)) V^-1 without forming the inverse
    return np.linalg.solve(v.T, w.T).T


def verify_greens(
    a,
    pre: PrecomputedProducts,
    t_samples,
    fd_step: float = VERIFY_FD_STEP,
) -> GreensReport:
    """Residuals of the defining identities over a sample of positive times.

    Checks, with ts the signed set {+s, -s : s in t_samples}:
    projector idempotency, P+ - P- = I, the semigroup identity for
    same-sign pairs, annihilation G(t1) G(t2) = 0 for opposite signs, and
    the ODE d/dt G = A G probed by a central difference of step ``fd_step``.

    Sign care: with the convention G(-0) = P - I, the minus-side limit is
    the negative of a projector and the backward flow composes with a sign,
    so the identities actually satisfied are (-P-)^2 = -P- and
    G(t1) G(t2) = -G(t1 + t2) for t1, t2 < 0.  The residuals below measure
    those; on the scalar level they hold exactly.
    """
    a = as_matrix(a)
    samples = sorted({float(s) for s in t_samples})
    if not samples:
        raise ValueError("need at least one sample time")
    if samples[0] <= 0.0:
        raise ValueError("sample times must be positive")
    if samples[0] <= 2.0 * fd_step:
        raise ValueError("sample times must exceed twice the derivative step")

    cache: dict[float, np.ndarray] = {}

    def g(t: float) -> np.ndarray:
        if t not in cache:
            cache[t] = greens_function(a, t, pre)
        return cache[t]

    p_plus, p_minus = spectral_projectors(a, pre)
    ident = np.eye(a.shape[0], dtype=complex)
    res_idem = max(
        spectral_norm(p_plus @ p_plus - p_plus),
        spectral_norm(p_minus @ p_minus + p_minus),
    )
    res_partition = spectral_norm(p_plus - p_minus - ident)

    pos = samples
    neg = [-s for s in samples]
    res_semigroup = 0.0
    for sign, signed in ((1.0, pos), (-1.0, neg)):
        for t1 in signed:
            for t2 in signed:
                res = spectral_norm(g(t1) @ g(t2) - sign * g(t1 + t2))
                res_semigroup = max(res_semigroup, res)
    res_annihilation = 0.0
    for t1 in pos:
        for t2 in neg:
            res_annihilation = max(
                res_annihilation,
                spectral_norm(g(t1) @ g(t2)),
                spectral_norm(g(t2) @ g(t1)),
            )
    res_derivative = 0.0
    for t in pos + neg:
        fd = greens_central_difference(a, t, fd_step, pre) / (2.0 * fd_step)
        res_derivative = max(res_derivative, spectral_norm(fd - a @ g(t)))

    return GreensReport(
        residual_projector_idempotent=res_idem,
        residual_partition=res_partition,
        residual_semigroup=res_semigroup,
        residual_annihilation=res_annihilation,
        residual_derivative=res_derivative,
    )


class GreensEvaluator:
    """One coefficient matrix, its split and products, and a per-t cache.

    The node products do not depend on t, so they are computed once here;
    repeated evaluations at the same t (typical inside quadratures that
    probe many perturbation directions) hit the cache.  Instances are
    immutable apart from the caches and safe to share across threads for
    reading after warm-up.
    """

    def __init__(self, a, axis_tol: float | None = None):
        self.a = as_matrix(a)
        self.split = spectrum_split_of(self.a, axis_tol)
        self.products = precompute_products(self.a, self.split)
        self._green: dict[float, np.ndarray] = {}
        self._norm: dict[float, float] = {}
        self._projectors: tuple[np.ndarray, np.ndarray] | None = None

    @classmethod
    def from_products(cls, a, pre: PrecomputedProducts) -> "GreensEvaluator":
        ev = cls.__new__(cls)
        ev.a = as_matrix(a)
        ev.split = pre.split
        ev.products = pre
        ev._green = {}
        ev._norm = {}
        ev._projectors = None
        return ev

    @property
    def gap(self) -> float:
        return self.split.gap

    def green(self, t: float) -> np.ndarray:
        t = float(t)
        got = self._green.get(t)
        if got is None:
            got = greens_function(self.a, t, self.products)
            self._green[t] = got
        return got

    def green_norm(self, t: float) -> float:
        t = float(t)
        got = self._norm.get(t)
        if got is None:
            got = spectral_norm(self.green(t))
            self._norm[t] = got
        return got

    def projectors(self) -> tuple[np.ndarray, np.ndarray]:
        if self._projectors is None:
            self._projectors = spectral_projectors(self.a, self.products)
        return self._projectors

    def verify(self, t_samples, fd_step: float = VERIFY_FD_STEP) -> GreensReport:
        return verify_greens(self.a, self.products, t_samples, fd_step=fd_step)


def as_evaluator(a, helper=None) -> GreensEvaluator:
    """Coerce None / PrecomputedProducts / GreensEvaluator to an evaluator."""
    if helper is None:
        return GreensEvaluator(a)
    if isinstance(helper, GreensEvaluator):
        return helper
    if isinstance(helper, PrecomputedProducts):
        return GreensEvaluator.from_products(a, helper)
    raise TypeError(f"expected GreensEvaluator or PrecomputedProducts, got {type(helper)!r}")
