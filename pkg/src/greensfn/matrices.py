"""Dense complex matrix utilities: arithmetic, norms, eigendecomposition, file I/O.

Matrices are plain ``numpy.ndarray`` objects of dtype complex128, validated to
be finite and two-dimensional.  The on-disk format (shared across the whole
package) is either JSON ``{"rows": N, "cols": N, "entries": [[re, im], ...]}``
with entries in row-major order, or CSV with alternating re,im columns.
"""

from __future__ import annotations

import csv
import json
import warnings
from dataclasses import dataclass
from pathlib import Path

import numpy as np
import scipy.linalg

# Relative pivot threshold below which LU factorization is declared singular.
PIVOT_RTOL = 1e-13


class SingularMatrixError(ValueError):
    """Matrix is singular to working precision."""


class EigenvalueConvergenceError(RuntimeError):
    """The QR eigenvalue iteration failed to converge."""


def as_matrix(a) -> np.ndarray:
    """Coerce ``a`` to a finite 2-d complex array and validate its shape."""
    m = np.asarray(a, dtype=complex)
    if m.ndim != 2:
        raise ValueError(f"expected a 2-d array, got ndim={m.ndim}")
    if m.shape[0] < 1 or m.shape[1] < 1:
        raise ValueError(f"matrix dimensions must be positive, got {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix entries must be finite (no NaN or infinity)")
    return m


def _require_square(m: np.ndarray) -> np.ndarray:
    if m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    return m


def matmul(a, b) -> np.ndarray:
    """Matrix product with an explicit inner-dimension check."""
    a = as_matrix(a)
    b = as_matrix(b)
    if a.shape[1] != b.shape[0]:
        raise ValueError(
            f"dimension mismatch: ({a.shape[0]}x{a.shape[1]}) @ ({b.shape[0]}x{b.shape[1]})"
        )
    return a @ b


def spectral_norm(m) -> float:
    """Largest singular value of ``m``."""
    return float(np.linalg.norm(as_matrix(m), 2))


def inverse(m) -> np.ndarray:
    """Invert a square matrix by partial-pivoted LU.

    Raises
    ------
    SingularMatrixError
        If any pivot magnitude falls below ``PIVOT_RTOL * spectral_norm(m)``.
    """
    m = _require_square(as_matrix(m))
    with warnings.catch_warnings():
        # exact singularity is reported through SingularMatrixError below
        warnings.simplefilter("ignore", scipy.linalg.LinAlgWarning)
        lu, piv = scipy.linalg.lu_factor(m, check_finite=False)
    pivots = np.abs(np.diag(lu))
    tol = PIVOT_RTOL * spectral_norm(m)
    if pivots.min() <= tol:
        raise SingularMatrixError(
            f"matrix singular to working precision: pivot {pivots.min():.3e} <= {tol:.3e}"
        )
    ident = np.eye(m.shape[0], dtype=complex)
    return scipy.linalg.lu_solve((lu, piv), ident, check_finite=False)


@dataclass
class EigenData:
    """Eigenvalues of a square matrix, counted with algebraic multiplicity.

    ``vectors`` holds right eigenvectors as columns when requested;
    ``condition_hint`` is the 2-norm condition number of the eigenvector
    matrix (a diagonalizability diagnostic), None when vectors were not
    computed.
    """

    values: np.ndarray
    vectors: np.ndarray | None = None
    condition_hint: float | None = None


def eigenvalues(m, want_vectors: bool = False) -> EigenData:
    """All eigenvalues of ``m`` (with multiplicity), optionally with eigenvectors."""
    m = _require_square(as_matrix(m))
    try:
        if want_vectors:
            vals, vecs = np.linalg.eig(m)
        else:
            vals = np.linalg.eigvals(m)
            vecs = None
    except np.linalg.LinAlgError as exc:
        raise EigenvalueConvergenceError(f"eigenvalue iteration failed: {exc}") from exc
    cond = None
    if vecs is not None:
        with np.errstate(divide="ignore", over="ignore"):
            cond = float(np.linalg.cond(vecs, 2))
    return EigenData(values=vals, vectors=vecs, condition_hint=cond)


def greedy_match_distance(a, b) -> float:
    """Greedy nearest-match distance between two complex multisets.

    Values of ``a`` are visited in a deterministic order; each is matched to
    the nearest not-yet-used value of ``b``.  Returns the largest matched
    distance.  Eigenvalue orderings coming out of QR iterations are not
    deterministic, so multiset comparisons go through this helper.
    """
    a = sorted(np.asarray(a, dtype=complex), key=lambda z: (z.real, z.imag))
    pool = list(np.asarray(b, dtype=complex))
    if len(a) != len(pool):
        raise ValueError(f"multiset sizes differ: {len(a)} vs {len(pool)}")
    worst = 0.0
    for x in a:
        j = min(range(len(pool)), key=lambda i: abs(x - pool[i]))
        worst = max(worst, abs(x - pool.pop(j)))
    return worst


# ---------------------------------------------------------------------------
# File formats
# ---------------------------------------------------------------------------


def matrix_to_json_dict(m) -> dict:
    m = as_matrix(m)
    entries = [[float(z.real), float(z.imag)] for z in m.ravel()]
    return {"rows": int(m.shape[0]), "cols": int(m.shape[1]), "entries": entries}


def matrix_from_json_dict(obj) -> np.ndarray:
    try:
        rows = int(obj["rows"])
        cols = int(obj["cols"])
        entries = obj["entries"]
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed matrix JSON: {exc}") from exc
    if rows < 1 or cols < 1:
        raise ValueError(f"matrix dimensions must be positive, got {rows}x{cols}")
    if len(entries) != rows * cols:
        raise ValueError(f"expected {rows * cols} entries, got {len(entries)}")
    flat = np.empty(rows * cols, dtype=complex)
    for i, pair in enumerate(entries):
        re, im = pair
        flat[i] = complex(float(re), float(im))
    return as_matrix(flat.reshape(rows, cols))


def _matrix_from_csv_text(text: str) -> np.ndarray:
    rows = []
    for record in csv.reader(text.splitlines()):
        cells = [c.strip() for c in record if c.strip() != ""]
        if not cells:
            continue
        if len(cells) % 2 != 0:
            raise ValueError("matrix CSV rows need an even count of re,im cells")
        vals = [float(c) for c in cells]
        rows.append([complex(re, im) for re, im in zip(vals[0::2], vals[1::2])])
    if not rows:
        raise ValueError("matrix CSV contains no data rows")
    if len({len(r) for r in rows}) != 1:
        raise ValueError("matrix CSV rows have inconsistent widths")
    return as_matrix(np.array(rows, dtype=complex))


def load_matrix(path) -> np.ndarray:
    """Read a matrix file, accepting both the JSON and the CSV layout."""
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ValueError(f"cannot read matrix file {path}: {exc}") from exc
    stripped = text.lstrip()
    if path.suffix.lower() == ".json" or stripped.startswith("{"):
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ValueError(f"invalid JSON in {path}: {exc}") from exc
        return matrix_from_json_dict(obj)
    return _matrix_from_csv_text(text)


def save_matrix(path, m, fmt: str = "json") -> None:
    """Write a matrix file; JSON by default, CSV on request."""
    m = as_matrix(m)
    path = Path(path)
    if fmt == "json":
        path.write_text(json.dumps(matrix_to_json_dict(m)) + "\n")
    elif fmt == "csv":
        lines = []
        for row in m:
            cells = []
            for z in row:
                cells.append(f"{z.real:.17g}")
                cells.append(f"{z.imag:.17g}")
            lines.append(",".join(cells))
        path.write_text("\n".join(lines) + "\n")
    else:
        raise ValueError(f"unknown matrix format {fmt!r}")
