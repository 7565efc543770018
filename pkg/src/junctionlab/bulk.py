"""Analytic bulk bands and gap edges for each region model.

The momentum-space 2x2 block is derived from the real-space assembly rules
(Fourier transform of the block-tridiagonal stencil extracted from a probe
chain), so the bulk and finite-system conventions can never diverge.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import bdg
from .device import RegionModel, Site, make_spec

IN_GAP_MARGIN = 1e-6


def _stencil(region: RegionModel):
    """Onsite block and oriented (n+1 <- n) bond block of an infinite chain,
    read off an assembled 3-site probe chain."""
    probe = make_spec([region], [Site(0, i, 0) for i in range(3)],
                      [(0, 1), (1, 2)], [])
    h = bdg.assemble(probe).matrix
    onsite = h[2:4, 2:4].copy()
    hop = h[2:4, 0:2].copy()       # block mapping site 0 to site 1
    return onsite, hop


def bloch_block(region: RegionModel, k: float) -> np.ndarray:
    """2x2 Hermitian Bloch block of the region's infinite chain at momentum k
    (radians per lattice constant)."""
    onsite, hop = _stencil(region)
    ka = k * region.lattice_const
    return onsite + hop * np.exp(1j * ka) + hop.conj().T * np.exp(-1j * ka)


@dataclass(frozen=True)
class BulkBands:
    k_grid: np.ndarray
    e_minus: np.ndarray
    e_plus: np.ndarray
    gap_edge: float


def _band_energies(onsite, hop, k_grid, a):
    e_minus = np.empty(len(k_grid))
    e_plus = np.empty(len(k_grid))
    for i, k in enumerate(k_grid):
        blk = onsite + hop * np.exp(1j * k * a) + hop.conj().T * np.exp(-1j * k * a)
        w = np.linalg.eigvalsh(blk)
        e_minus[i], e_plus[i] = w[0], w[1]
    return e_minus, e_plus


def bulk_bands(region: RegionModel, n_k: int = 512) -> BulkBands:
    """Bands over a uniform k grid on [-pi, pi] and the bulk gap edge
    (minimum of |E(k)|, refined off-grid by parabolic interpolation)."""
    if n_k < 16:
        raise ValueError(f"n_k must be >= 16, got {n_k}")
    onsite, hop = _stencil(region)
    a = region.lattice_const
    k_grid = np.linspace(-np.pi / a, np.pi / a, n_k)
    e_minus, e_plus = _band_energies(onsite, hop, k_grid, a)

    absmin = np.minimum(np.abs(e_minus), np.abs(e_plus))
    i0 = int(np.argmin(absmin))
    gap = float(absmin[i0])

    # parabolic refinement around the grid minimum (periodic neighbours)
    n = len(k_grid)
    im, ip = (i0 - 1) % n, (i0 + 1) % n
    y0, ym, yp = absmin[i0], absmin[im], absmin[ip]
    denom = ym - 2 * y0 + yp
    if denom > 0:
        dk = k_grid[1] - k_grid[0]
        shift = 0.5 * (ym - yp) / denom
        if abs(shift) <= 1.0:
            k_ref = k_grid[i0] + shift * dk
            w = np.linalg.eigvalsh(bloch_block(region, k_ref))
            gap = min(gap, float(np.min(np.abs(w))))

    return BulkBands(k_grid=k_grid, e_minus=e_minus, e_plus=e_plus,
                     gap_edge=gap)


def gap_edge(region: RegionModel, n_k: int = 1024) -> float:
    return bulk_bands(region, n_k).gap_edge


def device_gap_edge(spec, n_k: int = 1024) -> float:
    """In-gap classification threshold for a composite device: the smallest
    bulk gap edge over its constituent region models. 2D host blocks use
    the 1D chain model of the same material (documented approximation)."""
    return min(gap_edge(r, n_k) for r in spec.regions)
