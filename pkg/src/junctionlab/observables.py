"""Local density diagnostics for eigenstates in the Nambu site basis.

Per site n with spinor (a_p, a_h):
    rho = |a_p|^2 + |a_h|^2        probability density
    tz  = |a_p|^2 - |a_h|^2        local charge density
    tx  = 2 Re(conj(a_p) a_h)      real local quasiparticle density
    ty  = 2 Im(conj(a_p) a_h)      complex local quasiparticle density
The sign of ty is fixed so that tx*cos(phi) - ty*sin(phi) reproduces the
expectation of the onsite pairing block at phase phi (unit-tested).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class LocalDensityField:
    rho: np.ndarray
    tx: np.ndarray
    ty: np.ndarray
    tz: np.ndarray

    @property
    def n_sites(self) -> int:
        return len(self.rho)


@dataclass(frozen=True)
class OrbitTrace:
    site: int
    phis: np.ndarray
    tx: np.ndarray
    ty: np.ndarray
    tz: np.ndarray

    @property
    def closure_defect(self) -> float:
        """Distance between the first and last (tx, ty, tz) points; nonzero
        when the tracked branch does not return to itself after a full
        phase cycle."""
        d = np.array([self.tx[-1] - self.tx[0],
                      self.ty[-1] - self.ty[0],
                      self.tz[-1] - self.tz[0]])
        return float(np.linalg.norm(d))


def local_densities(state: np.ndarray, n_sites: int | None = None) -> LocalDensityField:
    """Per-site densities of one eigenvector (unit norm expected)."""
    state = np.asarray(state)
    if state.ndim != 1 or state.size % 2:
        raise ValueError(f"state must be a flat vector of even length, got {state.shape}")
    if n_sites is not None and state.size != 2 * n_sites:
        raise ValueError(
            f"state has {state.size // 2} sites but the device has {n_sites}")
    a_p = state[0::2]
    a_h = state[1::2]
    cross = np.conj(a_p) * a_h
    return LocalDensityField(
        rho=np.abs(a_p) ** 2 + np.abs(a_h) ** 2,
        tx=2.0 * cross.real,
        ty=2.0 * cross.imag,
        tz=np.abs(a_p) ** 2 - np.abs(a_h) ** 2,
    )


def total_charge(field: LocalDensityField) -> float:
    """Sum of the per-site charge density; vanishes identically for mu = 0
    devices."""
    return float(np.sum(field.tz))


def orbit_trace(curve, site: int) -> OrbitTrace:
    """Per-phase (tx, ty, tz) trajectory of a tracked branch at one site."""
    phis, txs, tys, tzs = [], [], [], []
    for point in curve.points:
        field = local_densities(point.state)
        phis.append(point.phi)
        txs.append(field.tx[site])
        tys.append(field.ty[site])
        tzs.append(field.tz[site])
    return OrbitTrace(site=site, phis=np.array(phis), tx=np.array(txs),
                      ty=np.array(tys), tz=np.array(tzs))


def participation_ratio(field: LocalDensityField) -> float:
    """1 / sum(rho_n^2): number of sites the state effectively occupies."""
    return float(1.0 / np.sum(field.rho ** 2))


def window_weight(field: LocalDensityField, sites) -> float:
    """Total probability carried by the given site subset."""
    return float(np.sum(field.rho[list(sites)]))
