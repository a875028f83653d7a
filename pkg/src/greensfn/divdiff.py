"""Divided differences of analytic scalar functions, with confluent nodes.

The main entry point is :func:`divided_differences`, the triangular recurrence
with the derivative rule on runs of exactly equal nodes.  Two independent
cross-checks are provided: the partial-fraction sum valid for distinct nodes
(:func:`dd_distinct_oracle`) and the contour-integral representation
(:func:`dd_contour_oracle`).
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from math import factorial
from typing import Callable

import numpy as np


@dataclass(frozen=True)
class AnalyticFunction:
    """A scalar analytic function together with its higher-order derivatives.

    ``value(z)`` evaluates the function, ``derivative(z, j)`` its j-th
    derivative; ``derivative(z, 0)`` must equal ``value(z)``.  Derivatives are
    expected to be analytic (not finite-difference) so that confluent
    divided differences do not inherit truncation noise.
    """

    value: Callable[[complex], complex]
    derivative: Callable[[complex, int], complex]


def analytic_exp() -> AnalyticFunction:
    """exp(z), its own derivative to every order."""
    return AnalyticFunction(value=cmath.exp, derivative=lambda z, j: cmath.exp(z))


@dataclass(frozen=True)
class DividedDifferenceTable:
    """Leading row f[n1], f[n1,n2], ..., f[n1,...,nN] of the triangle."""

    nodes: tuple[complex, ...]
    coeffs: tuple[complex, ...]

    @property
    def min_node_separation(self) -> float:
        """Smallest distance between distinct nodes (inf when all coincide).

        Diagnostic only: close-but-unequal nodes make the plain recurrence
        lose accuracy, and no regularization is attempted here.
        """
        best = float("inf")
        for i in range(len(self.nodes)):
            for j in range(i + 1, len(self.nodes)):
                d = abs(self.nodes[i] - self.nodes[j])
                if d > 0.0:
                    best = min(best, d)
        return best


def _check_adjacent_duplicates(nodes: tuple[complex, ...]) -> None:
    seen_closed: set[complex] = set()
    i = 0
    while i < len(nodes):
        z = nodes[i]
        if z in seen_closed:
            raise ValueError(
                f"repeated node {z} is not adjacent to its duplicates; "
                "group equal nodes together"
            )
        while i < len(nodes) and nodes[i] == z:
            i += 1
        seen_closed.add(z)


def divided_differences(f: AnalyticFunction, nodes) -> DividedDifferenceTable:
    """Divided differences of ``f`` at ``nodes`` by the triangular recurrence.

    Runs of exactly equal nodes take the confluent value
    ``f.derivative(z, m) / m!``; everything else uses the plain quotient.
    Nodes equal to each other must be adjacent in the sequence.

    Returns the leading row only (the coefficients of the Newton form);
    interior entries are recomputed on demand by callers that need them.
    """
    nodes = tuple(complex(z) for z in nodes)
    if not nodes:
        raise ValueError("need at least one interpolation node")
    _check_adjacent_duplicates(nodes)
    col = [complex(f.value(z)) for z in nodes]
    leading = [col[0]]
    n = len(nodes)
    for m in range(1, n):
        nxt = []
        for i in range(n - m):
            if nodes[i + m] == nodes[i]:
                # adjacency was validated, so the whole span is one node
                nxt.append(complex(f.derivative(nodes[i], m)) / factorial(m))
            else:
                nxt.append((col[i + 1] - col[i]) / (nodes[i + m] - nodes[i]))
        col = nxt
        leading.append(col[0])
    return DividedDifferenceTable(nodes=nodes, coeffs=tuple(leading))


def dd_distinct_oracle(f: AnalyticFunction, nodes) -> complex:
    """Top-order divided difference by the partial-fraction sum.

    Valid only for pairwise distinct nodes:
    sum_j f(n_j) / prod_{k != j} (n_j - n_k).
    """
    nodes = tuple(complex(z) for z in nodes)
    if len(set(nodes)) != len(nodes):
        raise ValueError("partial-fraction sum requires pairwise distinct nodes")
    total = 0.0 + 0.0j
    for j, zj in enumerate(nodes):
        denom = 1.0 + 0.0j
        for k, zk in enumerate(nodes):
            if k != j:
                denom *= zj - zk
        total += complex(f.value(zj)) / denom
    return total


def dd_contour_oracle(
    f: AnalyticFunction,
    nodes,
    center: complex,
    radius: float,
    panels: int = 256,
) -> complex:
    """Top-order divided difference by trapezoidal contour quadrature.

    Approximates (1/2*pi*i) * integral of f(z) / prod(z - n_k) dz over the
    circle of the given center and radius, which must enclose every node.
    The trapezoid rule on a circle converges geometrically for analytic
    integrands, so a few hundred panels reach full precision.
    """
    nodes = tuple(complex(z) for z in nodes)
    center = complex(center)
    radius = float(radius)
    if radius <= 0.0:
        raise ValueError("contour radius must be positive")
    if panels < 64:
        raise ValueError("need at least 64 trapezoid panels")
    for z in nodes:
        dist = abs(z - center)
        if abs(dist - radius) < 1e-8 * radius:
            raise ValueError(f"node {z} lies within 1e-8*radius of the contour")
        if dist >= radius:
            raise ValueError(f"node {z} is not enclosed by the contour")
    theta = 2.0 * np.pi * np.arange(panels) / panels
    zs = center + radius * np.exp(1j * theta)
    total = 0.0 + 0.0j
    for z in zs:
        omega = 1.0 + 0.0j
        for node in nodes:
            omega *= z - node
        total += complex(f.value(z)) * (z - center) / omega
    return total / panels
