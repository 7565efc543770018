"""Particle-hole antisymmetry diagnostics.

The check applies P = T_x K blockwise (T_x = direct sum of tau_x over
sites, K = complex conjugation) and measures the Frobenius norm of
P H P^{-1} + H. Phase-hopping TSC devices pass with zero defect for every
phase; onsite s-wave pairing is the one symmetric term, so mixed devices
show a defect equal to twice the s-wave pairing content.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bdg import BdgMatrix, TAU_X
from .eigen import EigenSolution

BLOCK_TOL = 1e-12


@dataclass(frozen=True)
class SymmetryReport:
    defect: float
    symmetric_terms: tuple      # (site_a, site_b) pairs with nonzero blocks
    spectrum_defect: float | None = None

    def as_dict(self) -> dict:
        return {
            "defect_ev": self.defect,
            "symmetric_blocks": [list(p) for p in self.symmetric_terms],
            "spectrum_defect_ev": self.spectrum_defect,
        }


def _as_array(h):
    if isinstance(h, BdgMatrix):
        return h.matrix
    return np.asarray(h, dtype=complex)


def ph_defect(h, sol: EigenSolution | None = None) -> SymmetryReport:
    """Frobenius norm of T_x conj(H) T_x + H, with offending site-pair blocks."""
    mat = _as_array(h)
    n = mat.shape[0] // 2
    tx = np.kron(np.eye(n), TAU_X)
    d = tx @ mat.conj() @ tx + mat
    defect = float(np.linalg.norm(d))

    scale = max(float(np.max(np.abs(mat))), 1.0)
    offenders = []
    for i in range(n):
        for j in range(i, n):
            blk = d[2 * i:2 * i + 2, 2 * j:2 * j + 2]
            if np.max(np.abs(blk)) > BLOCK_TOL * scale:
                offenders.append((i, j))
    spectrum = spectrum_symmetry_defect(sol) if sol is not None else None
    return SymmetryReport(defect=defect, symmetric_terms=tuple(offenders),
                          spectrum_defect=spectrum)


def spectrum_symmetry_defect(sol: EigenSolution) -> float:
    """max_k |E_k + E_{2N+1-k}| for the sorted spectrum: zero when the
    spectrum is symmetric about zero. Diagnostic only; arbitrary input
    need not satisfy it."""
    values = sol.values
    return float(np.max(np.abs(values + values[::-1])))
