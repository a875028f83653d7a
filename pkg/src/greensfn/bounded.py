"""Bounded solutions of x'(t) = A x(t) + f(t) by convolution quadrature.

When the spectrum avoids the imaginary axis, the unique bounded solution for
bounded continuous forcing is x(t) = integral of G(t-s) f(s) ds over the
line.  The integral is truncated to [t-T, t+T] (the kernel decays like
e^(-gap*|t-s|)) and split at s = t where the kernel jumps.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path
from typing import Callable

import numpy as np

from .greens import GreensEvaluator, PrecomputedProducts, as_evaluator
from .matrices import as_matrix
from .quadrature import QuadratureSpec, integrate_panels


@dataclass(frozen=True)
class ForcingFunction:
    """A bounded forcing term, sampled through a reentrant callable.

    ``sample(t)`` returns the complex N-vector f(t).  ``bound_hint`` is an
    optional sup-norm bound.  ``table_window`` is set for table-backed
    forcings and records the t-range actually covered by data; outside it
    the forcing is extended by constant continuation, and consumers should
    treat results there as extrapolation.
    """

    sample: Callable[[float], np.ndarray]
    dimension: int
    bound_hint: float | None = None
    table_window: tuple[float, float] | None = None

    def __call__(self, t: float) -> np.ndarray:
        out = np.asarray(self.sample(float(t)), dtype=complex)
        if out.shape != (self.dimension,):
            raise ValueError(
                f"forcing returned shape {out.shape}, expected ({self.dimension},)"
            )
        return out


def constant_forcing(vector) -> ForcingFunction:
    """f(t) identically equal to the given vector."""
    vec = np.asarray(vector, dtype=complex).ravel()
    return ForcingFunction(
        sample=lambda t: vec,
        dimension=len(vec),
        bound_hint=float(np.linalg.norm(vec)),
    )


def trig_forcing(dimension: int) -> ForcingFunction:
    """Components cos(k t), sin(k t), cos(2k t), ... with k = 1 + i//2."""

    def sample(t: float) -> np.ndarray:
        out = np.empty(dimension, dtype=complex)
        for i in range(dimension):
            freq = 1.0 + i // 2
            out[i] = np.cos(freq * t) if i % 2 == 0 else np.sin(freq * t)
        return out

    return ForcingFunction(
        sample=sample, dimension=dimension, bound_hint=float(np.sqrt(dimension))
    )


def load_forcing_table(path) -> ForcingFunction:
    """Read a forcing table: CSV columns t, re(f1), im(f1), ..., strictly increasing t.

    Between table points the forcing is linearly interpolated; beyond the
    table it is continued with the boundary values, and the covered window
    is recorded on the returned ForcingFunction.
    """
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ValueError(f"cannot read forcing file {path}: {exc}") from exc
    rows = []
    for record in csv.reader(text.splitlines()):
        cells = [c.strip() for c in record if c.strip() != ""]
        if not cells:
            continue
        rows.append([float(c) for c in cells])
    if not rows:
        raise ValueError("forcing table contains no data rows")
    widths = {len(r) for r in rows}
    if len(widths) != 1:
        raise ValueError("forcing table rows have inconsistent widths")
    width = widths.pop()
    if width < 3 or (width - 1) % 2 != 0:
        raise ValueError("forcing table needs columns t, re(f1), im(f1), ...")
    data = np.array(rows, dtype=float)
    ts = data[:, 0]
    if np.any(np.diff(ts) <= 0.0):
        raise ValueError("forcing table times must be strictly increasing")
    dim = (width - 1) // 2
    values = data[:, 1::2] + 1j * data[:, 2::2]

    def sample(t: float) -> np.ndarray:
        # np.interp clamps outside the table: constant continuation
        out = np.empty(dim, dtype=complex)
        for i in range(dim):
            out[i] = np.interp(t, ts, values[:, i].real) + 1j * np.interp(
                t, ts, values[:, i].imag
            )
        return out

    bound = float(np.max(np.linalg.norm(values, axis=1)))
    return ForcingFunction(
        sample=sample,
        dimension=dim,
        bound_hint=bound,
        table_window=(float(ts[0]), float(ts[-1])),
    )


def bounded_solution(
    a, f: ForcingFunction, t: float, q: QuadratureSpec,
    ev: GreensEvaluator | PrecomputedProducts | None = None,
) -> np.ndarray:
    """The bounded solution at one time, x(t) = integral of G(t-s) f(s) ds."""
    a = as_matrix(a)
    ev = as_evaluator(a, ev)
    if f.dimension != a.shape[0]:
        raise ValueError(f"forcing dimension {f.dimension} != system size {a.shape[0]}")
    t = float(t)
    horizon = q.truncation(ev.gap)

    def integrand(s: float) -> np.ndarray:
        return ev.green(t - s) @ f(s)

    return integrate_panels(integrand, t - horizon, t + horizon, (t,), q)


def residual_check(
    a,
    f: ForcingFunction,
    q: QuadratureSpec,
    ev: GreensEvaluator | PrecomputedProducts | None = None,
    grid=(-1.0, 0.0, 1.0),
    h: float = 1e-3,
) -> float:
    """Largest ODE residual ||x'(t) - A x(t) - f(t)|| over a grid of times.

    The derivative is probed by a central difference of step h, so the
    reported value carries an O(h^2) floor on top of the quadrature noise.
    """
    a = as_matrix(a)
    ev = as_evaluator(a, ev)
    if h <= 0.0:
        raise ValueError("derivative step must be positive")
    grid = sorted(float(t) for t in grid)
    if len(grid) >= 2 and min(np.diff(grid)) < 2.0 * h:
        raise ValueError("grid spacing must be at least 2h")

    def x(t: float) -> np.ndarray:
        return bounded_solution(a, f, t, q, ev)

    worst = 0.0
    for t in grid:
        deriv = (x(t + h) - x(t - h)) / (2.0 * h)
        res = deriv - a @ x(t) - f(t)
        worst = max(worst, float(np.linalg.norm(res)))
    return worst
