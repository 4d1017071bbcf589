"""Self-contained brute-force eigensolver used to cross-check every closed form.

Implicit-shift QL iteration with Wilkinson shifts for real symmetric
tridiagonal matrices, with accumulated eigenvector rotations.  Deliberately
depends on no external linear-algebra routine so that agreement with the
analytic construction is a genuine two-sided check.
"""

import math
from dataclasses import dataclass

import numpy as np

from .chain import EigenSystem, TridiagonalMatrix

__all__ = [
    "ConvergenceError",
    "OracleEigenSystem",
    "EigenMatch",
    "tridiag_eigen",
    "max_abs_residual",
    "match_eigensystems",
]


class ConvergenceError(RuntimeError):
    """QL iteration failed to deflate within the sweep budget."""


@dataclass(frozen=True)
class OracleEigenSystem:
    """Ascending eigenvalues and the matching orthonormal eigenvector columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    @property
    def dimension(self) -> int:
        return len(self.eigenvalues)


def _ql_implicit(d, e, max_sweeps):
    """In-place implicit QL with Wilkinson shifts; returns (d, V).

    d: diagonal (length n), e: off-diagonal (length n-1).  Follows the classic
    tqli scheme; the convergence test |e[i]| + dd == dd exploits rounding so
    the deflation criterion is scale-invariant.
    """
    n = len(d)
    v = np.eye(n)
    if n == 1:
        return d, v
    e = np.append(e, 0.0)
    for l in range(n):
        sweeps = 0
        while True:
            for mm in range(l, n - 1):
                dd = abs(d[mm]) + abs(d[mm + 1])
                if abs(e[mm]) + dd == dd:
                    break
            else:
                mm = n - 1
            if mm == l:
                break
            sweeps += 1
            if sweeps > max_sweeps:
                raise ConvergenceError(f"no deflation for eigenvalue {l} after {max_sweeps} sweeps")
            g = (d[l + 1] - d[l]) / (2.0 * e[l])
            r = math.hypot(g, 1.0)
            g = d[mm] - d[l] + e[l] / (g + math.copysign(r, g))
            s = c = 1.0
            p = 0.0
            i = mm - 1
            broke = False
            while i >= l:
                f = s * e[i]
                b = c * e[i]
                r = math.hypot(f, g)
                e[i + 1] = r
                if r == 0.0:
                    d[i + 1] -= p
                    e[mm] = 0.0
                    broke = True
                    break
                s = f / r
                c = g / r
                g = d[i + 1] - p
                r = (d[i] - g) * s + 2.0 * c * b
                p = s * r
                d[i + 1] = g + p
                g = c * r - b
                col = v[:, i + 1].copy()
                v[:, i + 1] = s * v[:, i] + c * col
                v[:, i] = c * v[:, i] - s * col
                i -= 1
            if broke and i >= l:
                continue
            d[l] -= p
            e[l] = g
            e[mm] = 0.0
    return d, v


def tridiag_eigen(matrix: TridiagonalMatrix, max_sweeps: int = 50) -> OracleEigenSystem:
    """Full spectrum and eigenvectors of a symmetric tridiagonal matrix.

    Eigenvalues are returned ascending with eigenvectors as matching columns.
    The computation is deterministic: identical input gives bit-identical
    output.  Raises ConvergenceError if any eigenvalue fails to deflate
    within max_sweeps sweeps (never observed for real inputs).
    """
    n = matrix.dimension
    if n < 1:
        raise ValueError("matrix dimension must be at least 1")
    d = np.zeros(n)
    e = np.array(matrix.off_diagonal.values, dtype=float)
    d, v = _ql_implicit(d, e, max_sweeps)
    order = np.argsort(d, kind="stable")
    return OracleEigenSystem(d[order], v[:, order])


def max_abs_residual(a, b) -> float:
    """Max-norm of A - B for equal-shaped arrays."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch: {a.shape} vs {b.shape}")
    return float(np.max(np.abs(a - b)))


@dataclass(frozen=True)
class EigenMatch:
    """Per-index comparison of an analytic eigensystem with the oracle."""

    eigenvalue_rel_diffs: np.ndarray
    overlap_deviations: np.ndarray

    @property
    def max_eigenvalue_rel_diff(self) -> float:
        return float(np.max(self.eigenvalue_rel_diffs))

    @property
    def max_overlap_deviation(self) -> float:
        return float(np.max(self.overlap_deviations))


def match_eigensystems(analytic: EigenSystem, oracle: OracleEigenSystem) -> EigenMatch:
    """Relative eigenvalue differences and sign-free eigenvector overlaps.

    Both spectra must be simple and sorted ascending, so columns pair up by
    index; overlap deviation is 1 - |<u_j, v_j>| per column.
    """
    if analytic.dimension != oracle.dimension:
        raise ValueError(f"dimension mismatch: {analytic.dimension} vs {oracle.dimension}")
    lam_a = analytic.eigenvalues
    lam_o = oracle.eigenvalues
    rel = np.abs(lam_a - lam_o) / np.maximum(np.abs(lam_o), 1e-300)
    overlaps = np.abs(np.einsum("ij,ij->j", analytic.U, oracle.eigenvectors))
    return EigenMatch(rel, np.abs(1.0 - overlaps))
