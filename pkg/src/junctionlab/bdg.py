"""Assembly of the dense Hermitian BdG matrix from a DeviceSpec.

Basis: two Nambu orbitals (particle, hole) per site; site i occupies rows
2i and 2i+1. Onsite blocks are -mu*tau_z plus, for s-wave regions, the
onsite pairing block. Bonds carry -t*tau_z plus the region's hopping
pairing on the oriented (from -> to) block; couplings carry -V*tau_z.
The Hermitian conjugate of every inter-site block is added explicitly, so
assembled matrices are exactly Hermitian.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .device import DeviceSpec, RegionKind, validate
from .errors import InvalidDeviceError

TAU_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
TAU_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
TAU_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)
ID2 = np.eye(2, dtype=complex)


def pairing_onsite_block(delta0: float, phi_n: float) -> np.ndarray:
    """Onsite s-wave pairing block: delta0 * [[0, e^{i phi}], [e^{-i phi}, 0]].

    Equals delta0 * (tau_x cos(phi) - tau_y sin(phi)); Hermitian for any phi.
    """
    e = np.exp(1j * phi_n)
    return delta0 * np.array([[0.0, e], [np.conj(e), 0.0]], dtype=complex)


def kitaev_hopping_block(delta0: float) -> np.ndarray:
    """Kitaev bond pairing -i*delta0*tau_y = delta0 * [[0,-1],[1,0]] as the
    (n+1 <- n) block; the assembler adds its Hermitian partner."""
    return delta0 * np.array([[0.0, -1.0], [1.0, 0.0]], dtype=complex)


def tsc_phase_hopping_block(delta0: float, phi_n: float) -> np.ndarray:
    """Phase-carrying TSC bond pairing: -pairing_onsite(phi) * tau_z as the
    (n+1 <- n) block. Antisymmetric under the particle-hole operation for
    every phi, unlike the onsite s-wave block."""
    return -pairing_onsite_block(delta0, phi_n) @ TAU_Z


def _bond_block(region) -> np.ndarray:
    blk = -region.t * TAU_Z
    if region.kind is RegionKind.KITAEV_TSC:
        blk = blk + kitaev_hopping_block(region.delta0)
    elif region.kind is RegionKind.TSC_PHASE_HOPPING:
        blk = blk + tsc_phase_hopping_block(region.delta0, region.phase)
    return blk


def _onsite_block(region) -> np.ndarray:
    blk = -region.mu * TAU_Z
    if region.kind is RegionKind.NORMAL_SC:
        blk = blk + pairing_onsite_block(region.delta0, region.phase)
    return blk


@dataclass(frozen=True)
class BdgMatrix:
    matrix: np.ndarray
    n_sites: int

    @property
    def dim(self) -> int:
        return 2 * self.n_sites

    @property
    def site_index_map(self) -> dict:
        return {i: 2 * i for i in range(self.n_sites)}

    def hermiticity_defect(self) -> float:
        h = self.matrix
        return float(np.max(np.abs(h - h.conj().T)))


def assemble(spec: DeviceSpec) -> BdgMatrix:
    """Build the 2N x 2N BdG matrix; rejects specs failing validation."""
    problems = validate(spec)
    if problems:
        raise InvalidDeviceError(
            "device failed validation: " + "; ".join(v.message for v in problems))

    n = spec.n_sites
    h = np.zeros((2 * n, 2 * n), dtype=complex)

    onsite_cache = [_onsite_block(r) for r in spec.regions]
    bond_cache = [_bond_block(r) for r in spec.regions]

    for i, site in enumerate(spec.sites):
        h[2 * i:2 * i + 2, 2 * i:2 * i + 2] += onsite_cache[site.region]

    for a, b in spec.bonds:
        blk = bond_cache[spec.sites[a].region]
        h[2 * b:2 * b + 2, 2 * a:2 * a + 2] += blk
        h[2 * a:2 * a + 2, 2 * b:2 * b + 2] += blk.conj().T

    for c in spec.couplings:
        blk = -c.strength * TAU_Z
        h[2 * c.site_b:2 * c.site_b + 2, 2 * c.site_a:2 * c.site_a + 2] += blk
        h[2 * c.site_a:2 * c.site_a + 2, 2 * c.site_b:2 * c.site_b + 2] += blk.conj().T

    return BdgMatrix(matrix=h, n_sites=n)


def pairing_sector(spec: DeviceSpec) -> np.ndarray:
    """Matrix holding only the assembled pairing blocks (onsite and bond),
    used to relate the particle-hole defect to the s-wave pairing content."""
    n = spec.n_sites
    p = np.zeros((2 * n, 2 * n), dtype=complex)
    for i, site in enumerate(spec.sites):
        r = spec.regions[site.region]
        if r.kind is RegionKind.NORMAL_SC:
            p[2 * i:2 * i + 2, 2 * i:2 * i + 2] += pairing_onsite_block(r.delta0, r.phase)
    for a, b in spec.bonds:
        r = spec.regions[spec.sites[a].region]
        if r.kind is RegionKind.KITAEV_TSC:
            blk = kitaev_hopping_block(r.delta0)
        elif r.kind is RegionKind.TSC_PHASE_HOPPING:
            blk = tsc_phase_hopping_block(r.delta0, r.phase)
        else:
            continue
        p[2 * b:2 * b + 2, 2 * a:2 * a + 2] += blk
        p[2 * a:2 * a + 2, 2 * b:2 * b + 2] += blk.conj().T
    return p


def sc_pairing_sector(spec: DeviceSpec) -> np.ndarray:
    """Only the onsite s-wave pairing blocks (the particle-hole symmetric
    part of the assembled matrix)."""
    n = spec.n_sites
    p = np.zeros((2 * n, 2 * n), dtype=complex)
    for i, site in enumerate(spec.sites):
        r = spec.regions[site.region]
        if r.kind is RegionKind.NORMAL_SC:
            p[2 * i:2 * i + 2, 2 * i:2 * i + 2] += pairing_onsite_block(r.delta0, r.phase)
    return p
