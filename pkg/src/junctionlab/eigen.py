"""Dense Hermitian eigendecomposition with verified residuals.

Backed by LAPACK through numpy.linalg.eigh (a vetted dense solver of the
Householder-tridiagonalization family). Output is made deterministic:
eigenvector phases are fixed so the largest-magnitude component of each
column is real and positive, and near-degenerate clusters are
re-orthonormalized in index order. An independent Jacobi rotation solver
lives in the test suite as the cross-check oracle.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bdg import BdgMatrix
from .errors import EigenConvergenceError, NonHermitianError

HERMITICITY_RTOL = 1e-13
DEGENERACY_RTOL = 1e-12


@dataclass(frozen=True)
class EigenSolution:
    values: np.ndarray      # ascending
    vectors: np.ndarray     # orthonormal columns, vectors[:, k] <-> values[k]
    max_residual: float     # max_k ||H v_k - E_k v_k||_2

    @property
    def n(self) -> int:
        return len(self.values)


def _as_array(h) -> np.ndarray:
    if isinstance(h, BdgMatrix):
        return h.matrix
    return np.asarray(h, dtype=complex)


def _fix_phases(vectors: np.ndarray) -> None:
    for k in range(vectors.shape[1]):
        col = vectors[:, k]
        idx = int(np.argmax(np.abs(col)))
        pivot = col[idx]
        mag = abs(pivot)
        if mag > 0:
            vectors[:, k] = col * (np.conj(pivot) / mag)


def _reorthogonalize_clusters(values: np.ndarray, vectors: np.ndarray,
                              scale: float) -> None:
    tol = DEGENERACY_RTOL * max(scale, 1.0)
    n = len(values)
    start = 0
    while start < n:
        end = start + 1
        while end < n and values[end] - values[end - 1] < tol:
            end += 1
        if end - start > 1:
            block = vectors[:, start:end]
            # modified Gram-Schmidt in index order keeps the basis deterministic
            for j in range(block.shape[1]):
                v = block[:, j]
                for i in range(j):
                    v = v - block[:, i] * np.vdot(block[:, i], v)
                nrm = np.linalg.norm(v)
                if nrm > 0:
                    block[:, j] = v / nrm
            vectors[:, start:end] = block
        start = end


def eig_hermitian(h) -> EigenSolution:
    """Full decomposition of a Hermitian matrix with residual bookkeeping.

    Rejects input whose hermiticity defect exceeds the assembly tolerance;
    converts backend convergence failures into EigenConvergenceError.
    """
    mat = _as_array(h)
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {mat.shape}")
    scale = float(np.max(np.abs(mat))) if mat.size else 0.0
    defect = float(np.max(np.abs(mat - mat.conj().T))) if mat.size else 0.0
    if defect > HERMITICITY_RTOL * max(scale, 1.0):
        raise NonHermitianError(
            f"hermiticity defect {defect:.3e} exceeds tolerance for scale {scale:.3e}")

    try:
        values, vectors = np.linalg.eigh(mat)
    except np.linalg.LinAlgError as exc:
        raise EigenConvergenceError(str(exc), dim=mat.shape[0]) from exc

    vectors = np.ascontiguousarray(vectors)
    _fix_phases(vectors)
    _reorthogonalize_clusters(values, vectors, scale)

    residual_mat = mat @ vectors - vectors * values[np.newaxis, :]
    max_residual = float(np.max(np.linalg.norm(residual_mat, axis=0))) if mat.size else 0.0
    return EigenSolution(values=values, vectors=vectors, max_residual=max_residual)
